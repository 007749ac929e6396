#include "phenoct/forward.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace phenoct {

namespace {

// Zero-flux finite-volume Laplacian on the cells 0..nx-1: the flux across
// x_0 and x_{N_x} vanishes, so the cell sum telescopes exactly.
inline double laplacian_cell(const double* n, int j, int nx, double inv_h2) {
    const double left = (j > 0) ? n[j - 1] : n[0];
    const double right = (j < nx - 1) ? n[j + 1] : n[nx - 1];
    return (right - 2.0 * n[j] + left) * inv_h2;
}

inline bool row_finite(const double* n, int nx) {
    for (int j = 0; j <= nx; ++j) {
        if (!std::isfinite(n[j])) return false;
    }
    return true;
}

} // namespace

void step_population(const double* n_in, double* n_out, const PhenotypeGrid& grid,
                     const CoefficientField& r, const CoefficientField& d,
                     const CoefficientField& mu, double alpha, double beta,
                     double I_value, double u1, double u2, double dt) {
    const int nx = grid.num_cells;
    const double inv_h2 = 1.0 / (grid.cell_width * grid.cell_width);
    const double growth_scale = 1.0 / (1.0 + alpha * u2);
    for (int j = 0; j < nx; ++j) {
        const double g = r[j] * growth_scale;
        const double q = d[j] * I_value + u1 * mu[j];
        const double diffused = (beta > 0.0) ? beta * laplacian_cell(n_in, j, nx, inv_h2) : 0.0;
        n_out[j] = (n_in[j] * (1.0 + dt * g) + dt * diffused) / (1.0 + dt * q);
    }
    n_out[nx] = n_out[nx - 1]; // Neumann boundary value
}

void step(const std::vector<double>& n_H_in, const std::vector<double>& n_C_in,
          double u1, double u2, const ModelParameters& eff,
          const PhenotypeGrid& grid, double dt, std::vector<double>& n_H_out,
          std::vector<double>& n_C_out) {
    const int nx = grid.num_cells;
    if (!row_finite(n_H_in.data(), nx) || !row_finite(n_C_in.data(), nx)) {
        throw SolverError("step: non-finite input density");
    }
    n_H_out.resize(n_H_in.size());
    n_C_out.resize(n_C_in.size());
    const double rho_H = grid.rectangle_mass(n_H_in);
    const double rho_C = grid.rectangle_mass(n_C_in);
    const double I_H = eff.a_HH * rho_H + eff.a_HC * rho_C;
    const double I_C = eff.a_CC * rho_C + eff.a_CH * rho_H;
    step_population(n_H_in.data(), n_H_out.data(), grid, eff.r_H, eff.d_H, eff.mu_H,
                    eff.alpha_H, eff.beta_H, I_H, u1, u2, dt);
    step_population(n_C_in.data(), n_C_out.data(), grid, eff.r_C, eff.d_C, eff.mu_C,
                    eff.alpha_C, eff.beta_C, I_C, u1, u2, dt);
}

StateTrajectory rollout(const InitialData& init, const ControlSchedule& controls,
                        const ModelParameters& eff, const PhenotypeGrid& grid,
                        const TimeGrid& timegrid) {
    const int nt = timegrid.num_steps;
    const int nx = grid.num_cells;
    if (static_cast<int>(controls.u1.size()) != nt ||
        static_cast<int>(controls.u2.size()) != nt) {
        throw SolverError("rollout: control schedule length must equal N_t");
    }
    const CflReport cfl = check_cfl(eff, grid, timegrid);
    if (!cfl.pass) {
        throw CflError("rollout: CFL number " + std::to_string(cfl.number) +
                       " >= 0.5; refuse to run");
    }

    StateTrajectory traj;
    traj.nt = nt;
    traj.nx = nx;
    traj.n_H.resize(static_cast<size_t>(nt + 1) * (nx + 1));
    traj.n_C.resize(static_cast<size_t>(nt + 1) * (nx + 1));
    traj.rho_H.resize(static_cast<size_t>(nt + 1));
    traj.rho_C.resize(static_cast<size_t>(nt + 1));
    traj.I_H.resize(static_cast<size_t>(nt + 1));
    traj.I_C.resize(static_cast<size_t>(nt + 1));

    std::memcpy(traj.row_H(0), init.n_H0.data(), sizeof(double) * (nx + 1));
    std::memcpy(traj.row_C(0), init.n_C0.data(), sizeof(double) * (nx + 1));

    const double dt = timegrid.step;
    for (int i = 0; i <= nt; ++i) {
        const double* h = traj.row_H(i);
        const double* c = traj.row_C(i);
        if (!row_finite(h, nx) || !row_finite(c, nx)) {
            throw SolverError("rollout: non-finite state at step " + std::to_string(i));
        }
        const double rho_H = grid.rectangle_mass(h);
        const double rho_C = grid.rectangle_mass(c);
        traj.rho_H[i] = rho_H;
        traj.rho_C[i] = rho_C;
        traj.I_H[i] = eff.a_HH * rho_H + eff.a_HC * rho_C;
        traj.I_C[i] = eff.a_CC * rho_C + eff.a_CH * rho_H;
        if (i == nt) break;
        step_population(h, traj.row_H(i + 1), grid, eff.r_H, eff.d_H, eff.mu_H,
                        eff.alpha_H, eff.beta_H, traj.I_H[i], controls.u1[i],
                        controls.u2[i], dt);
        step_population(c, traj.row_C(i + 1), grid, eff.r_C, eff.d_C, eff.mu_C,
                        eff.alpha_C, eff.beta_C, traj.I_C[i], controls.u1[i],
                        controls.u2[i], dt);
    }
    return traj;
}

CancerTrajectory rollout_cancer(const std::vector<double>& n_C0,
                                const ControlSchedule& controls,
                                const ModelParameters& eff,
                                const PhenotypeGrid& grid,
                                const TimeGrid& timegrid) {
    const int nt = timegrid.num_steps;
    const int nx = grid.num_cells;
    if (static_cast<int>(controls.u1.size()) != nt ||
        static_cast<int>(controls.u2.size()) != nt) {
        throw SolverError("rollout_cancer: control schedule length must equal N_t");
    }
    const CflReport cfl = check_cfl(eff, grid, timegrid);
    if (!cfl.pass) {
        throw CflError("rollout_cancer: CFL number " + std::to_string(cfl.number) +
                       " >= 0.5; refuse to run");
    }

    CancerTrajectory traj;
    traj.nt = nt;
    traj.nx = nx;
    traj.n.resize(static_cast<size_t>(nt + 1) * (nx + 1));
    traj.rho.resize(static_cast<size_t>(nt + 1));
    std::memcpy(traj.row(0), n_C0.data(), sizeof(double) * (nx + 1));

    const double dt = timegrid.step;
    for (int i = 0; i <= nt; ++i) {
        const double* c = traj.row(i);
        if (!row_finite(c, nx)) {
            throw SolverError("rollout_cancer: non-finite state at step " +
                              std::to_string(i));
        }
        traj.rho[i] = grid.rectangle_mass(c);
        if (i == nt) break;
        step_population(c, traj.row(i + 1), grid, eff.r_C, eff.d_C, eff.mu_C,
                        eff.alpha_C, eff.beta_C, eff.a_CC * traj.rho[i],
                        controls.u1[i], controls.u2[i], dt);
    }
    return traj;
}

double objective(const StateTrajectory& traj, double lambda0,
                 const TimeGrid& timegrid) {
    double integral = 0.0;
    for (int i = 0; i < traj.nt; ++i) integral += traj.rho_C[i];
    integral *= timegrid.step;
    return lambda0 * integral + (1.0 - lambda0) * traj.rho_C[traj.nt];
}

ConstraintTrace constraint_trace(const StateTrajectory& traj,
                                 const ModelParameters& eff) {
    ConstraintTrace trace;
    trace.c_HC.resize(static_cast<size_t>(traj.nt + 1));
    trace.c_H.resize(static_cast<size_t>(traj.nt + 1));
    const double rho_H0 = traj.rho_H[0];
    for (int i = 0; i <= traj.nt; ++i) {
        const double total = traj.rho_H[i] + traj.rho_C[i];
        // Empty system: report the ratio constraint as neutral.
        trace.c_HC[i] = (total > 0.0) ? traj.rho_H[i] / total - eff.theta_HC : 0.0;
        trace.c_H[i] = traj.rho_H[i] - eff.theta_H * rho_H0;
    }
    return trace;
}

} // namespace phenoct

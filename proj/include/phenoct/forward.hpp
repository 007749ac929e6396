#pragma once

#include <stdexcept>
#include <vector>

#include "phenoct/grid.hpp"
#include "phenoct/model.hpp"

namespace phenoct {

/// Piecewise-constant dose schedule: u1[i], u2[i] apply on [t_i, t_{i+1}).
struct ControlSchedule {
    std::vector<double> u1, u2; // length N_t

    static ControlSchedule constant(int nt, double v1, double v2) {
        return {std::vector<double>(static_cast<size_t>(nt), v1),
                std::vector<double>(static_cast<size_t>(nt), v2)};
    }
    static ControlSchedule zero(int nt) { return constant(nt, 0.0, 0.0); }
};

/// Full two-population trajectory with the derived nonlocal quantities.
/// Densities are stored at all N_x+1 nodes; rho and I are the rectangle-rule
/// functionals of the stored rows.
struct StateTrajectory {
    int nt = 0, nx = 0;
    std::vector<double> n_H, n_C;     // (N_t+1) x (N_x+1), row-major
    std::vector<double> rho_H, rho_C; // length N_t+1
    std::vector<double> I_H, I_C;     // length N_t+1

    double* row_H(int i) { return n_H.data() + static_cast<size_t>(i) * (nx + 1); }
    double* row_C(int i) { return n_C.data() + static_cast<size_t>(i) * (nx + 1); }
    const double* row_H(int i) const {
        return n_H.data() + static_cast<size_t>(i) * (nx + 1);
    }
    const double* row_C(int i) const {
        return n_C.data() + static_cast<size_t>(i) * (nx + 1);
    }
};

/// Cancer-only restriction used by the simplified problem.
struct CancerTrajectory {
    int nt = 0, nx = 0;
    std::vector<double> n;   // (N_t+1) x (N_x+1), row-major
    std::vector<double> rho; // length N_t+1

    double* row(int i) { return n.data() + static_cast<size_t>(i) * (nx + 1); }
    const double* row(int i) const {
        return n.data() + static_cast<size_t>(i) * (nx + 1);
    }
};

/// Signed distances to the two path constraints at every time node;
/// feasibility means every entry >= -tol_feas.
struct ConstraintTrace {
    std::vector<double> c_HC; // rho_H/(rho_H+rho_C) - theta_HC^(l)
    std::vector<double> c_H;  // rho_H - theta_H^(l) * rho_H(0)
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CflError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One IMEX Euler update of a single population on the rectangle cells
/// j = 0..N_x-1 (node N_x is slaved to node N_x-1 afterwards):
///
///   n_out[j] = (n_in[j]*(1 + dt*g_j) + dt*beta*(L n_in)_j) / (1 + dt*q_j),
///   g_j = r_j/(1 + alpha*u2),  q_j = d_j*I + u1*mu_j,
///
/// with the production part explicit, the loss part as an implicit divisor,
/// and L the zero-flux finite-volume Laplacian on the cells. The update is
/// positivity-preserving whenever dt*beta/h^2 <= 1/2 and conserves the
/// rectangle mass exactly for pure diffusion.
void step_population(const double* n_in, double* n_out, const PhenotypeGrid& grid,
                     const CoefficientField& r, const CoefficientField& d,
                     const CoefficientField& mu, double alpha, double beta,
                     double I_value, double u1, double u2, double dt);

/// One coupled step of both populations; I_H and I_C are evaluated from the
/// input densities (explicit coupling).
void step(const std::vector<double>& n_H_in, const std::vector<double>& n_C_in,
          double u1, double u2, const ModelParameters& eff,
          const PhenotypeGrid& grid, double dt, std::vector<double>& n_H_out,
          std::vector<double>& n_C_out);

/// Marches the coupled system over the whole horizon. Throws CflError when
/// the stability check fails and SolverError (with the step index) when a
/// non-finite state appears. Deterministic for identical inputs.
StateTrajectory rollout(const InitialData& init, const ControlSchedule& controls,
                        const ModelParameters& eff, const PhenotypeGrid& grid,
                        const TimeGrid& timegrid);

/// Cancer-only rollout with I_C = a_CC * rho_C (the simplified dynamics).
CancerTrajectory rollout_cancer(const std::vector<double>& n_C0,
                                const ControlSchedule& controls,
                                const ModelParameters& eff,
                                const PhenotypeGrid& grid,
                                const TimeGrid& timegrid);

/// lambda0 * (left rectangle rule in time of rho_C) + (1-lambda0) * rho_C(T).
double objective(const StateTrajectory& traj, double lambda0,
                 const TimeGrid& timegrid);

ConstraintTrace constraint_trace(const StateTrajectory& traj,
                                 const ModelParameters& eff);

} // namespace phenoct

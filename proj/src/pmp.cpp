#include "phenoct/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace phenoct {

namespace {

int snap_to_node(double t, const TimeGrid& tg) {
    const int i = static_cast<int>(std::llround(t / tg.step));
    return std::clamp(i, 0, tg.num_steps);
}

// Rectangle-rule integral of w_j * n_j * p_j over the cells.
double weighted_product_mass(const double* w, const double* n, const double* p,
                             const PhenotypeGrid& grid) {
    double s = 0.0;
    for (int j = 0; j < grid.num_cells; ++j) s += w[j] * n[j] * p[j];
    return s * grid.cell_width;
}

} // namespace

ControlSchedule controls_from_switches(const SwitchingTimes& sw,
                                       const TimeGrid& timegrid, double u1max,
                                       double u2max) {
    const int nt = timegrid.num_steps;
    const int i1 = snap_to_node(sw.t1, timegrid);
    const int i2 = snap_to_node(sw.t2, timegrid);
    ControlSchedule u = ControlSchedule::zero(nt);
    for (int i = i1; i < nt; ++i) u.u1[i] = u1max;
    for (int i = i2; i < nt; ++i) u.u2[i] = u2max;
    return u;
}

Ocp0Solution solve_ocp0_rollout(const SwitchingTimes& sw,
                                const ModelParameters& eff0,
                                const InitialData& init,
                                const PhenotypeGrid& grid,
                                const TimeGrid& timegrid) {
    Ocp0Solution sol;
    sol.controls =
        controls_from_switches(sw, timegrid, eff0.u1_max, eff0.u2_max);
    sol.trajectory = rollout_cancer(init.n_C0, sol.controls, eff0, grid, timegrid);
    sol.cost = sol.trajectory.rho[timegrid.num_steps];
    return sol;
}

AdjointTrajectory solve_adjoint(const CancerTrajectory& traj,
                                const ControlSchedule& controls,
                                const ModelParameters& eff0,
                                const PhenotypeGrid& grid,
                                const TimeGrid& timegrid, double p0) {
    const int nt = timegrid.num_steps;
    const int nx = grid.num_cells;
    const double dt = timegrid.step;

    AdjointTrajectory adj;
    adj.nt = nt;
    adj.nx = nx;
    adj.p0 = p0;
    adj.p_tilde.assign(static_cast<size_t>(nt + 1) * (nx + 1), 0.0);
    for (int j = 0; j <= nx; ++j) adj.row(nt)[j] = p0;

    // p~_i = B_i * p~_{i+1} - dt*psi_{i+1} with B the forward growth/decay
    // factor of step i and psi the rectangle rule of d*n*p~ at level i+1.
    // Pairing the sweep with the forward factors makes n*p~ telescope exactly.
    for (int i = nt - 1; i >= 0; --i) {
        const double* p_next = adj.row(i + 1);
        double* p_now = adj.row(i);

        const double psi_next =
            weighted_product_mass(eff0.d_C.data(), traj.row(i + 1), p_next, grid);
        const double growth_scale = 1.0 / (1.0 + eff0.alpha_C * controls.u2[i]);
        const double I_now = eff0.a_CC * traj.rho[i];

        for (int j = 0; j < nx; ++j) {
            const double g = eff0.r_C[j] * growth_scale;
            const double q = eff0.d_C[j] * I_now + controls.u1[i] * eff0.mu_C[j];
            const double factor = (1.0 + dt * g) / (1.0 + dt * q);
            p_now[j] = factor * p_next[j] - dt * psi_next;
        }
        p_now[nx] = p_now[nx - 1];

        if (!std::isfinite(p_now[0])) {
            throw SolverError("solve_adjoint: non-finite adjoint at step " +
                              std::to_string(i));
        }
    }
    return adj;
}

SwitchingDiagnostics switching_diagnostics(const CancerTrajectory& traj,
                                           const AdjointTrajectory& adjoint,
                                           const ControlSchedule& controls,
                                           const ModelParameters& eff0,
                                           const PhenotypeGrid& grid,
                                           const TimeGrid& timegrid) {
    const int nt = timegrid.num_steps;
    const int nx = grid.num_cells;
    const double h = grid.cell_width;

    SwitchingDiagnostics diag;
    diag.phi1.resize(static_cast<size_t>(nt + 1));
    diag.phi2.resize(static_cast<size_t>(nt + 1));
    diag.psi1.resize(static_cast<size_t>(nt + 1));
    diag.hamiltonian.resize(static_cast<size_t>(nt + 1));
    diag.f0.resize(static_cast<size_t>(nt + 1));

    for (int i = 0; i <= nt; ++i) {
        const double* n = traj.row(i);
        const double* p = adjoint.row(i);
        diag.phi1[i] = weighted_product_mass(eff0.mu_C.data(), n, p, grid);
        diag.phi2[i] = weighted_product_mass(eff0.r_C.data(), n, p, grid);
        diag.psi1[i] = weighted_product_mass(eff0.d_C.data(), n, p, grid);

        // Controls are left-constant; reuse the last interval at the final node.
        const int k = (i < nt) ? i : nt - 1;
        const double u1 = controls.u1[k];
        const double u2 = controls.u2[k];
        const double growth_scale = 1.0 / (1.0 + eff0.alpha_C * u2);
        double ham = 0.0, f0 = 0.0;
        for (int j = 0; j < nx; ++j) {
            const double rate = eff0.r_C[j] * growth_scale -
                                eff0.d_C[j] * eff0.a_CC * traj.rho[i] -
                                eff0.mu_C[j] * u1;
            f0 += rate * n[j];
            ham += rate * n[j] * p[j];
        }
        diag.f0[i] = f0 * h;
        diag.hamiltonian[i] = ham * h;
    }

    auto first_negative = [&](const std::vector<double>& v) {
        for (int i = 0; i <= nt; ++i) {
            if (v[i] < 0.0) return i;
        }
        return nt + 1;
    };
    diag.phi1_crossing = first_negative(diag.phi1);
    diag.phi2_crossing = first_negative(diag.phi2);

    diag.phi1_max_increase = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < nt; ++i) {
        diag.phi1_max_increase =
            std::max(diag.phi1_max_increase, diag.phi1[i + 1] - diag.phi1[i]);
    }
    for (double v : diag.phi1) diag.phi1_max_abs = std::max(diag.phi1_max_abs, std::fabs(v));
    diag.psi1_negative =
        std::all_of(diag.psi1.begin(), diag.psi1.end(), [](double v) { return v < 0.0; });
    diag.phi_final_negative = diag.phi1[nt] < 0.0 && diag.phi2[nt] < 0.0;
    return diag;
}

SwitchResult optimize_switching_times(const ModelParameters& eff0,
                                      const InitialData& init,
                                      const PhenotypeGrid& grid,
                                      const TimeGrid& timegrid,
                                      const SwitchOptions& options) {
    const double T = timegrid.horizon;

    std::map<std::pair<int, int>, double> cache;
    int evaluations = 0;
    auto cost_at = [&](int i1, int i2) {
        const auto key = std::make_pair(i1, i2);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        const SwitchingTimes sw{timegrid.node(i1), timegrid.node(i2)};
        const double c =
            solve_ocp0_rollout(sw, eff0, init, grid, timegrid).cost;
        cache.emplace(key, c);
        ++evaluations;
        return c;
    };

    // Deterministic "better" with the smallest-t1-then-t2 tie break.
    int best_i1 = 0, best_i2 = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    auto consider = [&](int i1, int i2) {
        const double c = cost_at(i1, i2);
        if (c < best_cost ||
            (c == best_cost && std::make_pair(i1, i2) < std::make_pair(best_i1, best_i2))) {
            best_cost = c;
            best_i1 = i1;
            best_i2 = i2;
        }
    };

    // Stage 1: exhaustive coarse lattice (snapped, deduplicated by the cache).
    const int k = std::max(2, options.coarse_points);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            const double t1 = T * static_cast<double>(a) / static_cast<double>(k - 1);
            const double t2 = T * static_cast<double>(b) / static_cast<double>(k - 1);
            consider(snap_to_node(t1, timegrid), snap_to_node(t2, timegrid));
        }
    }

    // Stage 2: compass refinement on the snapped lattice, shrinking the move
    // until it falls below dt/4 (the cost is constant between snapped pairs).
    double stride = T / static_cast<double>(k - 1);
    while (stride >= timegrid.step / 4.0) {
        bool moved = false;
        const double t1 = timegrid.node(best_i1);
        const double t2 = timegrid.node(best_i2);
        const double moves[8][2] = {{stride, 0.0},    {-stride, 0.0},
                                    {0.0, stride},    {0.0, -stride},
                                    {stride, stride}, {stride, -stride},
                                    {-stride, stride}, {-stride, -stride}};
        const int before_i1 = best_i1, before_i2 = best_i2;
        const double before_cost = best_cost;
        for (const auto& m : moves) {
            const double c1 = std::clamp(t1 + m[0], 0.0, T);
            const double c2 = std::clamp(t2 + m[1], 0.0, T);
            consider(snap_to_node(c1, timegrid), snap_to_node(c2, timegrid));
        }
        moved = best_cost < before_cost ||
                std::make_pair(best_i1, best_i2) != std::make_pair(before_i1, before_i2);
        if (!moved) stride *= 0.5;
    }

    SwitchResult result;
    result.times = {timegrid.node(best_i1), timegrid.node(best_i2)};
    result.cost = best_cost;
    result.evaluations = evaluations;
    return result;
}

} // namespace phenoct

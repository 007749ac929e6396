#pragma once

#include <vector>

#include "phenoct/forward.hpp"
#include "phenoct/grid.hpp"
#include "phenoct/model.hpp"

namespace phenoct {

/// Switch-on times of the two bang-bang controls: u_i jumps from 0 to its
/// maximum at t_i and stays there until T.
struct SwitchingTimes {
    double t1 = 0.0;
    double t2 = 0.0;
};

/// Shifted adjoint p~ = p + p0 of the simplified problem, stored like a
/// trajectory; p~(T,.) = p0 < 0.
struct AdjointTrajectory {
    int nt = 0, nx = 0;
    std::vector<double> p_tilde; // (N_t+1) x (N_x+1), row-major
    double p0 = -1.0;

    double* row(int i) { return p_tilde.data() + static_cast<size_t>(i) * (nx + 1); }
    const double* row(int i) const {
        return p_tilde.data() + static_cast<size_t>(i) * (nx + 1);
    }
};

/// Switching-function traces and the structure report certifying the
/// bang-bang form: phi1 = int mu n p~, phi2 = int r n p~, psi1 = int d n p~,
/// all rectangle-rule in x. The Hamiltonian and running-cost traces are kept
/// for consistency checks.
struct SwitchingDiagnostics {
    std::vector<double> phi1, phi2, psi1; // length N_t+1
    std::vector<double> hamiltonian, f0;  // length N_t+1

    int phi1_crossing = -1;        // first node with phi1 < 0 (nt+1 when none)
    int phi2_crossing = -1;
    double phi1_max_increase = 0.0; // max_i (phi1[i+1] - phi1[i])
    double phi1_max_abs = 0.0;
    bool psi1_negative = false;     // psi1 < 0 at every node
    bool phi_final_negative = false;

    /// phi1 non-increasing within tol*max|phi1|, psi1 single-signed negative,
    /// terminal values negative.
    bool structure_ok(double tol = 1e-8) const {
        return psi1_negative && phi_final_negative &&
               phi1_max_increase <= tol * phi1_max_abs;
    }
};

struct Ocp0Solution {
    double cost = 0.0; // rho_C(T)
    CancerTrajectory trajectory;
    ControlSchedule controls;
};

struct SwitchOptions {
    int coarse_points = 25; // K: coarse lattice is K x K over [0,T]^2
};

struct SwitchResult {
    SwitchingTimes times;
    double cost = 0.0;
    int evaluations = 0;
};

/// Expands switching times into a schedule on the time grid. Times snap to
/// the nearest node; u[i] = max on intervals whose left node is at or past
/// the switch (so t = T means the control stays off).
ControlSchedule controls_from_switches(const SwitchingTimes& sw,
                                       const TimeGrid& timegrid, double u1max,
                                       double u2max);

/// Cancer-only rollout of the bang-bang controls under lambda = 0 effective
/// parameters; cost is the final mass.
Ocp0Solution solve_ocp0_rollout(const SwitchingTimes& sw,
                                const ModelParameters& eff0,
                                const InitialData& init,
                                const PhenotypeGrid& grid,
                                const TimeGrid& timegrid);

/// Backward sweep for p~ paired with the forward IMEX factors so that the
/// discrete products n*p~ obey the same telescoping identities as the
/// continuous proof (phi1 exactly non-increasing, psi1 exactly single-signed
/// up to roundoff). Diagnostic use only.
AdjointTrajectory solve_adjoint(const CancerTrajectory& traj,
                                const ControlSchedule& controls,
                                const ModelParameters& eff0,
                                const PhenotypeGrid& grid,
                                const TimeGrid& timegrid, double p0 = -1.0);

SwitchingDiagnostics switching_diagnostics(const CancerTrajectory& traj,
                                           const AdjointTrajectory& adjoint,
                                           const ControlSchedule& controls,
                                           const ModelParameters& eff0,
                                           const PhenotypeGrid& grid,
                                           const TimeGrid& timegrid);

/// Two-stage search for the optimal switching pair: exhaustive K x K coarse
/// lattice, then compass refinement with shrinking step (terminates below
/// dt/4). Costs are memoized per snapped node pair; ties break toward the
/// smaller t1, then the smaller t2.
SwitchResult optimize_switching_times(const ModelParameters& eff0,
                                      const InitialData& init,
                                      const PhenotypeGrid& grid,
                                      const TimeGrid& timegrid,
                                      const SwitchOptions& options = {});

} // namespace phenoct

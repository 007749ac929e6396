#pragma once

#include <array>
#include <utility>
#include <vector>

#include "phenoct/grid.hpp"

namespace phenoct {

/// A rate function sampled at the N_x+1 grid nodes.
using CoefficientField = std::vector<double>;

/// All problem data: sampled coefficient functions, competition and drug
/// parameters, dose bounds, constraint thresholds and the objective mix.
/// After apply_continuation() the fields beta_*, a_CH, theta_* and u*_max
/// hold the lambda-effective values; u*_max0 always keeps the reduced bounds.
struct ModelParameters {
    CoefficientField r_H, r_C;   // selection rates, positive
    CoefficientField d_H, d_C;   // competition death rates, positive
    CoefficientField mu_H, mu_C; // cytotoxic sensitivities, non-negative

    double alpha_H = 0.01; // cytostatic efficiency on healthy cells
    double alpha_C = 1.0;  // cytostatic efficiency on cancer cells

    double a_HH = 1.0, a_HC = 0.07; // competition felt by healthy cells
    double a_CH = 0.01, a_CC = 1.0; // competition felt by cancer cells

    double beta_H = 0.001;  // epimutation rate, healthy
    double beta_C = 0.0001; // epimutation rate, cancer

    double u1_max = 2.0, u2_max = 5.0;   // maximum tolerated doses
    double u1_max0 = 1.0, u2_max0 = 4.0; // reduced bounds for the continuation start

    double theta_HC = 0.4; // lower bound on rho_H/(rho_H+rho_C)
    double theta_H = 0.6;  // lower bound on rho_H relative to rho_H(0)

    double lambda_0 = 0.0; // objective mix: lambda_0*int(rho_C) + (1-lambda_0)*rho_C(T)

    /// Throws std::invalid_argument on any violated invariant.
    void validate(const PhenotypeGrid& grid) const;
};

/// Gaussian initial data, normalized so the rectangle-rule masses hit the
/// prescribed initial cell counts.
struct InitialData {
    double epsilon = 0.1;
    double rho_H0_target = 2.7;
    double rho_C0_target = 0.5;
    std::vector<double> n_H0, n_C0; // N_x+1 nodes, componentwise >= 0
};

/// Continuation vector lambda in [0,1]^6:
///   l1 diffusion, l2 interaction a_CH, l3 constraint theta_HC,
///   l4 constraint theta_H, l5 u1 bound lift, l6 u2 bound lift.
struct ContinuationVector {
    std::array<double, 6> lambda{};

    static ContinuationVector zeros() { return {}; }
    static ContinuationVector ones() {
        ContinuationVector v;
        v.lambda.fill(1.0);
        return v;
    }

    double operator[](int i) const { return lambda[static_cast<size_t>(i)]; }
    double& operator[](int i) { return lambda[static_cast<size_t>(i)]; }

    void validate() const; // every component in [0,1]
};

struct CflReport {
    double number; // max(beta_H, beta_C) * T * N_x^2 / N_t
    bool pass;     // number < 0.5
    double margin; // 0.5 - number
};

/// Default coefficient functions and parameter values sampled on the grid:
/// r_C = 3/(1+x^2), r_H = 1.5/(1+x^2), d_C = 0.5(1-0.3x), d_H = 0.5(1-0.1x),
/// mu_H = 0.2/(0.49+x^2), mu_C = max(0.9/(0.49+0.6x^2) - 1, 0).
ModelParameters sample_default_coefficients(const PhenotypeGrid& grid);

/// Samples K*exp(-(x-0.5)^2/epsilon) with K chosen so the rectangle-rule
/// mass equals rho_target. Returns (K, density at the N_x+1 nodes).
std::pair<double, std::vector<double>> normalize_initial_density(
    const PhenotypeGrid& grid, double epsilon, double rho_target);

InitialData make_initial_data(const PhenotypeGrid& grid, double epsilon,
                              double rho_H0, double rho_C0);

/// Effective parameters of the intermediate problem:
///   beta^(l) = l1*beta, a_CH^(l) = l2*a_CH, theta_HC^(l) = l3*theta_HC,
///   theta_H^(l) = l4*theta_H, u_i^max,(l) = (1-l_{4+i})*u_i^max0 + l_{4+i}*u_i^max.
/// All other fields are copied unchanged. Apply to base parameters only.
ModelParameters apply_continuation(const ModelParameters& params,
                                   const ContinuationVector& lambda);

/// Explicit-diffusion stability number; the rollout refuses to run when it
/// fails. Uses the larger of the two effective diffusion rates.
CflReport check_cfl(const ModelParameters& params, const PhenotypeGrid& grid,
                    const TimeGrid& timegrid);

} // namespace phenoct

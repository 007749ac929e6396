#include "phenoct/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phenoct {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("ModelParameters: " + what);
}

void check_field(const CoefficientField& f, const PhenotypeGrid& grid,
                 const char* name, bool strictly_positive) {
    require(static_cast<int>(f.size()) == grid.num_nodes(),
            std::string(name) + " must have N_x+1 entries");
    for (double v : f) {
        require(std::isfinite(v), std::string(name) + " has a non-finite entry");
        if (strictly_positive) {
            require(v > 0.0, std::string(name) + " must be positive on [0,1]");
        } else {
            require(v >= 0.0, std::string(name) + " must be non-negative");
        }
    }
}

} // namespace

void ModelParameters::validate(const PhenotypeGrid& grid) const {
    check_field(r_H, grid, "r_H", true);
    check_field(r_C, grid, "r_C", true);
    check_field(d_H, grid, "d_H", true);
    check_field(d_C, grid, "d_C", true);
    check_field(mu_H, grid, "mu_H", false);
    check_field(mu_C, grid, "mu_C", false);

    require(alpha_H >= 0.0 && alpha_C >= 0.0, "alpha must be non-negative");
    require(alpha_H < alpha_C, "alpha_H < alpha_C is required");
    require(a_HH >= 0.0 && a_HC >= 0.0 && a_CH >= 0.0 && a_CC >= 0.0,
            "competition coefficients must be non-negative");
    require(a_HC < a_HH, "a_HC < a_HH is required");
    require(a_CH < a_CC, "a_CH < a_CC is required");
    // beta_H vs beta_C ordering is deliberately not enforced.
    require(beta_H >= 0.0 && beta_C >= 0.0, "diffusion rates must be non-negative");
    require(u1_max > 0.0 && u2_max > 0.0, "dose bounds must be positive");
    require(u1_max0 > 0.0 && u2_max0 > 0.0, "reduced dose bounds must be positive");
    require(u1_max0 <= u1_max, "u1_max0 <= u1_max is required");
    require(u2_max0 <= u2_max, "u2_max0 <= u2_max is required");
    require(theta_HC > 0.0 && theta_HC < 1.0, "theta_HC must lie in (0,1)");
    require(theta_H > 0.0 && theta_H < 1.0, "theta_H must lie in (0,1)");
    require(lambda_0 >= 0.0 && lambda_0 <= 1.0, "lambda_0 must lie in [0,1]");
}

void ContinuationVector::validate() const {
    for (double v : lambda) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(
                "ContinuationVector: components must lie in [0,1]");
        }
    }
}

ModelParameters sample_default_coefficients(const PhenotypeGrid& grid) {
    const int n = grid.num_nodes();
    ModelParameters p;
    p.r_H.resize(n);
    p.r_C.resize(n);
    p.d_H.resize(n);
    p.d_C.resize(n);
    p.mu_H.resize(n);
    p.mu_C.resize(n);
    for (int j = 0; j < n; ++j) {
        const double x = grid.node(j);
        const double x2 = x * x;
        p.r_C[j] = 3.0 / (1.0 + x2);
        p.r_H[j] = 1.5 / (1.0 + x2);
        p.d_C[j] = 0.5 * (1.0 - 0.3 * x);
        p.d_H[j] = 0.5 * (1.0 - 0.1 * x);
        p.mu_H[j] = 0.2 / (0.49 + x2);
        p.mu_C[j] = std::max(0.9 / (0.49 + 0.6 * x2) - 1.0, 0.0);
    }
    return p;
}

std::pair<double, std::vector<double>> normalize_initial_density(
    const PhenotypeGrid& grid, double epsilon, double rho_target) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("normalize_initial_density: epsilon must be positive");
    }
    if (!(rho_target > 0.0)) {
        throw std::invalid_argument("normalize_initial_density: rho_target must be positive");
    }
    std::vector<double> density(static_cast<size_t>(grid.num_nodes()));
    for (int j = 0; j < grid.num_nodes(); ++j) {
        const double dx = grid.node(j) - 0.5;
        density[static_cast<size_t>(j)] = std::exp(-dx * dx / epsilon);
    }
    const double mass = grid.rectangle_mass(density);
    const double k = rho_target / mass;
    for (double& v : density) v *= k;
    return {k, std::move(density)};
}

InitialData make_initial_data(const PhenotypeGrid& grid, double epsilon,
                              double rho_H0, double rho_C0) {
    InitialData init;
    init.epsilon = epsilon;
    init.rho_H0_target = rho_H0;
    init.rho_C0_target = rho_C0;
    init.n_H0 = normalize_initial_density(grid, epsilon, rho_H0).second;
    init.n_C0 = normalize_initial_density(grid, epsilon, rho_C0).second;
    return init;
}

ModelParameters apply_continuation(const ModelParameters& params,
                                   const ContinuationVector& lambda) {
    lambda.validate();
    ModelParameters eff = params;
    eff.beta_H = lambda[0] * params.beta_H;
    eff.beta_C = lambda[0] * params.beta_C;
    eff.a_CH = lambda[1] * params.a_CH;
    eff.theta_HC = lambda[2] * params.theta_HC;
    eff.theta_H = lambda[3] * params.theta_H;
    eff.u1_max = (1.0 - lambda[4]) * params.u1_max0 + lambda[4] * params.u1_max;
    eff.u2_max = (1.0 - lambda[5]) * params.u2_max0 + lambda[5] * params.u2_max;
    return eff;
}

CflReport check_cfl(const ModelParameters& params, const PhenotypeGrid& grid,
                    const TimeGrid& timegrid) {
    const double beta = std::max(params.beta_H, params.beta_C);
    const double nx = static_cast<double>(grid.num_cells);
    const double number = beta * timegrid.horizon * nx * nx /
                          static_cast<double>(timegrid.num_steps);
    return {number, number < 0.5, 0.5 - number};
}

} // namespace phenoct

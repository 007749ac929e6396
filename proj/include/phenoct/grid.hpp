#pragma once

#include <stdexcept>
#include <vector>

namespace phenoct {

/// Uniform phenotype grid on [0,1]: N_x cells, N_x+1 nodes x_j = j/N_x.
/// Nonlocal quantities use the left-endpoint rectangle rule over nodes
/// 0..N_x-1; node N_x carries the boundary value only.
struct PhenotypeGrid {
    int num_cells;     // N_x
    double cell_width; // h = 1/N_x

    explicit PhenotypeGrid(int nx)
        : num_cells(nx), cell_width(1.0 / static_cast<double>(nx)) {
        if (nx < 2) {
            throw std::invalid_argument("PhenotypeGrid: num_cells must be >= 2");
        }
    }

    int num_nodes() const { return num_cells + 1; }

    double node(int j) const {
        return static_cast<double>(j) / static_cast<double>(num_cells);
    }

    std::vector<double> nodes() const {
        std::vector<double> x(static_cast<size_t>(num_nodes()));
        for (int j = 0; j <= num_cells; ++j) x[static_cast<size_t>(j)] = node(j);
        return x;
    }

    /// h * sum_{j=0}^{N_x-1} v[j], the rule behind every rho and I.
    double rectangle_mass(const double* v) const {
        double s = 0.0;
        for (int j = 0; j < num_cells; ++j) s += v[j];
        return s * cell_width;
    }

    double rectangle_mass(const std::vector<double>& v) const {
        return rectangle_mass(v.data());
    }
};

/// Uniform time grid on [0,T]: N_t steps of size dt = T/N_t, nodes t_i = i*dt.
/// Controls are piecewise constant on [t_i, t_{i+1}).
struct TimeGrid {
    double horizon; // T
    int num_steps;  // N_t
    double step;    // dt

    TimeGrid(double T, int nt)
        : horizon(T), num_steps(nt), step(T / static_cast<double>(nt)) {
        if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
        if (nt < 2) throw std::invalid_argument("TimeGrid: num_steps must be >= 2");
    }

    int num_nodes() const { return num_steps + 1; }

    double node(int i) const {
        return horizon * static_cast<double>(i) / static_cast<double>(num_steps);
    }
};

} // namespace phenoct

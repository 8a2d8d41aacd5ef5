#pragma once

#include <string>
#include <vector>

namespace fimin {

/// Uniform grid on [x_min, x_max] with n_points nodes.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;

    Grid() = default;
    Grid(double x_min, double x_max, int n_points);

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double node(int i) const { return x_min + spacing() * i; }
};

/// Real amplitude samples psi_i on a uniform grid.
struct GridWavefunction {
    Grid grid;
    std::vector<double> values;
};

/// Trapezoidal integral of psi^2.
double norm_integral(const GridWavefunction& psi);

/// Rescaled copy with unit norm; throws domain_error when the norm
/// integral vanishes.
GridWavefunction normalized(const GridWavefunction& psi);

/// Largest |psi| over the two boundary nodes.
double boundary_magnitude(const GridWavefunction& psi);

/// CSV with header "x,psi", one node per row, full double precision.
void write_wavefunction_csv(const GridWavefunction& psi, const std::string& path);

/// Parses the CSV written above.  Enforces the header, strictly
/// increasing x and uniform spacing within 1e-9 relative; throws
/// schema_error otherwise.  An empty file or one without data rows
/// throws domain_error (nothing to normalize).
GridWavefunction read_wavefunction_csv(const std::string& path);

} // namespace fimin

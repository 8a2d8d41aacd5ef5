#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fimin/grid.hpp"
#include "fimin/moments.hpp"
#include "fimin/potential.hpp"

namespace fimin {

struct SolverOptions {
    double bisect_tol = 1e-12;       // absolute bracket width for E0
    int max_inverse_iterations = 200;
    double inverse_tol = 1e-12;      // vector-norm change between iterates
};

/// Ground-state eigenpair of -(1/2) d^2/dx^2 + U(x) on a Dirichlet grid.
struct EigenResult {
    double energy = 0.0;
    GridWavefunction psi;
    double implied_alpha = 0.0; // 8 * energy
    int iterations = 0;
    std::vector<std::string> warnings;
};

/// Lowest eigenpair of the 3-point finite-difference discretization:
/// Sturm-count bisection brackets E0, inverse iteration recovers psi.
/// psi comes back trapezoid-normalized with its peak positive.
EigenResult ground_state(const InfoPotential& potential, const Grid& grid,
                         const SolverOptions& options = {});

/// Domain sized from a coarse solve so the edges sit deep in the
/// forbidden region: U(edge) >= E + 25 and a WKB decay exponent >= 25.
Grid auto_grid(const InfoPotential& potential, int n_points = 4001);

/// f_i = psi_i^2.  Requires unit norm (contract_error otherwise).
std::vector<double> pdf_from_amplitude(const GridWavefunction& psi);

/// I = 4 * integral (psi')^2 dx.  Appends a boundary-leakage warning to
/// `warnings` when |psi| at an edge exceeds 1e-8.
double fisher_from_amplitude(const GridWavefunction& psi,
                             std::vector<std::string>* warnings = nullptr);

/// <x^k> = integral x^k psi^2 dx for each requested order.
MomentSet moments_from_amplitude(const GridWavefunction& psi,
                                 const std::vector<int>& orders);

struct VirialCheck {
    double lhs = 0.0;      // <-d^2/dx^2> as integral (psi')^2
    double rhs = 0.0;      // <x U'(x)>
    double residual = 0.0; // lhs - rhs
};

VirialCheck virial_residual(const GridWavefunction& psi,
                            const InfoPotential& potential);

/// |I[psi] - 4 <x U'(x)>|: zero exactly when the trial state satisfies
/// the stationarity identity an exact solution must obey.
double approx_quality(const GridWavefunction& psi, const InfoPotential& potential);

/// End-to-end closure diagnostics: closed form -> multipliers ->
/// potential -> ground state -> re-measured moments and Fisher values.
struct ConsistencyReport {
    double energy = 0.0;
    double alpha_check = 0.0;        // 8 E0
    double fisher_closed = 0.0;
    double fisher_amplitude = 0.0;
    double fisher_constraint = 0.0;  // 8 E0 + sum lambda_k <x^k>_measured
    double fisher_virial = 0.0;      // -sum (k/2) lambda_k <x^k>_measured
    std::map<int, double> lambdas;
    std::map<int, double> input_moments;
    std::map<int, double> recovered_moments;
    std::map<int, double> moment_deltas; // recovered - input
    VirialCheck virial;
    Grid grid;
    std::vector<std::string> warnings;
};

ConsistencyReport self_consistency(const MomentSet& moments,
                                   const ReferenceConstants& constants,
                                   std::optional<Grid> grid = std::nullopt,
                                   const SolverOptions& options = {});

} // namespace fimin

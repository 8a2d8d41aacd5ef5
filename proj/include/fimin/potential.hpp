#pragma once

#include <map>
#include <vector>

namespace fimin {

/// Polynomial pseudo-potential U(x) = -(1/8) sum_k lambda_k x^k, k >= 1,
/// so U(0) = 0 by construction.
class InfoPotential {
public:
    /// Requires at least one nonzero multiplier.
    explicit InfoPotential(std::map<int, double> lambdas);

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    /// Exact k-th derivative at x via falling factorials.
    double derivative_of_order(double x, int k) const;

    const std::map<int, double>& lambdas() const { return lambdas_; }
    /// Highest order with a nonzero multiplier.
    int degree() const { return degree_; }
    /// True when U is bounded below: even leading order with lambda < 0.
    bool confining() const;

    /// Dense coefficients of U itself: coeff[j] multiplies x^j, coeff[0] = 0.
    std::vector<double> poly_coeffs() const;
    /// Dense coefficients of x * U'(x), the virial weight polynomial.
    std::vector<double> virial_weight_coeffs() const;

private:
    std::map<int, double> lambdas_; // zero entries dropped
    int degree_ = 0;
};

/// Location and depth of a stationary point of U.
struct CriticalPoint {
    double xi = 0.0;
    double u_min = 0.0;
    bool is_minimum = true;
};

/// Same as the InfoPotential constructor; named for the pipeline.
InfoPotential build_potential(const std::map<int, double>& lambdas);

/// Global minimizer of a confining U: analytic for degree <= 2, otherwise
/// a sign-change scan of U' over a root bound followed by bisection.
/// Throws domain_error when U is unbounded below.
CriticalPoint potential_minimum(const InfoPotential& potential);

/// Multipliers of the Taylor expansion of U about xi:
/// lambda*_k = -(8/k!) U^(k)(xi), for k = 0..degree.
std::map<int, double> taylor_multipliers(const InfoPotential& potential, double xi);

/// Potential whose multipliers describe U(x) = Ubar(x - xi) - Ubar(-xi),
/// i.e. the inverse of the Taylor translation with U(0) = 0 restored.
InfoPotential untranslate_potential(const InfoPotential& translated, double xi);

} // namespace fimin

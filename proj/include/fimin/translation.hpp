#pragma once

#include <map>
#include <vector>

#include "fimin/moments.hpp"
#include "fimin/potential.hpp"

namespace fimin {

/// Moments of u = x - xi: entries[k] = <(x - xi)^k>.
struct TranslatedMoments {
    std::map<int, double> entries;
    double xi = 0.0;
};

/// <(x - xi)^k> = sum_{j=0..k} (-1)^j C(k,j) xi^j <x^{k-j}> with <x^0> = 1.
/// Requires every order 1..k in `moments`.
double translate_moment(const MomentSet& moments, double xi, int order);

/// All orders 1..moments.max_order() at once.
TranslatedMoments translate_moments(const MomentSet& moments, double xi);

struct TranslatedFisher {
    double fisher = 0.0;
    std::map<int, double> per_term;
    std::vector<int> skipped; // orders dropped as numerically vanishing
};

/// I = sum_{k>=2} C_k |<u^k>'|^(-2/k) over the non-vanishing translated
/// moments; |<u^k>'| < vanish_tol drops the term.  Throws domain_error
/// when nothing survives.
TranslatedFisher translated_fisher(const TranslatedMoments& translated,
                                   const ReferenceConstants& constants,
                                   double vanish_tol = 1e-12);

/// alpha = alpha_bar + 8 U(xi).
double alpha_shift(double alpha_bar, const InfoPotential& potential, double xi);
/// alpha_bar = alpha - 8 U(xi).
double alpha_unshift(double alpha, const InfoPotential& potential, double xi);

struct CramerRaoResult {
    double product = 0.0;  // I * sigma^2
    double sigma_sq = 0.0; // <(x - xi)^2>
    bool saturated = false;
};

/// I * sigma^2 with sigma^2 = <x^2> - 2 xi <x> + xi^2; saturated when the
/// product sits within 1e-9 of 1.  Throws domain_error for sigma^2 <= 0.
CramerRaoResult cramer_rao_product(double fisher, const MomentSet& moments,
                                   double xi);

} // namespace fimin

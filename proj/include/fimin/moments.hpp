#pragma once

#include <map>
#include <vector>

namespace fimin {

struct MomentEntry {
    int order;    // k >= 1
    double value; // <x^k>, units [x]^k
};

/// Ordered prior knowledge {(k, <x^k>)} plus an optional length scale.
///
/// Orders are strictly increasing and >= 1.  Values may be zero in the
/// container (measured moments of symmetric states vanish); operations
/// that invert a moment enforce the nonzero domain themselves.
class MomentSet {
public:
    MomentSet() = default;
    explicit MomentSet(std::vector<MomentEntry> entries, double x_scale = 1.0);

    const std::vector<MomentEntry>& entries() const { return entries_; }
    double x_scale() const { return x_scale_; }

    bool has(int order) const;
    /// Value at `order`; throws contract_error when absent.
    double value(int order) const;
    int max_order() const;
    /// True when the orders are exactly 1..max_order with no gaps.
    bool contiguous_from_one() const;
    std::map<int, double> as_map() const;

private:
    std::vector<MomentEntry> entries_;
    double x_scale_ = 1.0;
};

/// Positive reference constants C_k of the closed-form measure.
/// Orders without an explicit override use C_k = 1.
class ReferenceConstants {
public:
    ReferenceConstants() = default;
    explicit ReferenceConstants(std::map<int, double> overrides);

    double at(int order) const;
    const std::map<int, double>& overrides() const { return overrides_; }

private:
    std::map<int, double> overrides_;
};

/// Closed-form minimization output: the measure, its multipliers, the
/// normalization multiplier and the per-order contributions.
struct FisherSolution {
    double fisher = 0.0;
    std::map<int, double> lambdas;
    double alpha = 0.0;
    std::map<int, double> per_term;
};

/// Maps entry k to <x^k>/x_scale^k and resets the scale to 1.
MomentSet nondimensionalize(const MomentSet& moments);

/// Inverse of nondimensionalize: entry k to <x^k>*x_scale^k.
MomentSet dimensionalize(const MomentSet& moments, double x_scale);

/// I = sum_k C_k |<x^k>|^(-2/k).  Fills fisher and per_term only.
/// Throws domain_error when any participating moment vanishes.
FisherSolution minimal_fisher(const MomentSet& moments,
                              const ReferenceConstants& constants);

/// lambda_k = -(2/k) C_k |<x^k>|^(-2/k) / <x^k>, the gradient of the
/// minimal measure with respect to each moment.
std::map<int, double> lagrange_multipliers(const MomentSet& moments,
                                           const ReferenceConstants& constants);

/// alpha = I - sum_k lambda_k <x^k>.  Every order with a nonzero
/// multiplier must have a matching moment entry.
double legendre_alpha(double fisher, const std::map<int, double>& lambdas,
                      const MomentSet& moments);

/// I = alpha + sum_k lambda_k <x^k>, the inverse of legendre_alpha.
double fisher_from_constraints(double alpha, const std::map<int, double>& lambdas,
                               const MomentSet& moments);

/// I = -sum_k (k/2) lambda_k <x^k>.
double fisher_virial_form(const std::map<int, double>& lambdas,
                          const MomentSet& moments);

/// Diagonal of the Hessian of the minimal measure:
/// (1 + k/2)(4/k^2) C_k |<x^k>|^(-2(1+k)/k).  Off-diagonal terms vanish.
std::map<int, double> fisher_hessian(const MomentSet& moments,
                                     const ReferenceConstants& constants);

namespace detail {
/// C_k |v|^(-2/k); throws domain_error when v == 0.
double fisher_term(double constant, int order, double v);
/// -(2/k) C_k |v|^(-2/k) / v; throws domain_error when v == 0.
double multiplier_term(double constant, int order, double v);
} // namespace detail

} // namespace fimin

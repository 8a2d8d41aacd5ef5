#include "fimin/moments.hpp"

#include <cmath>
#include <string>

#include "fimin/errors.hpp"
#include "fimin/kernels.hpp"

namespace fimin {

MomentSet::MomentSet(std::vector<MomentEntry> entries, double x_scale)
    : entries_(std::move(entries)), x_scale_(x_scale) {
    if (!(x_scale_ > 0.0) || !std::isfinite(x_scale_)) {
        throw domain_error("x_scale must be positive and finite");
    }
    int prev = 0;
    for (const auto& e : entries_) {
        if (e.order < 1) {
            throw contract_error("moment orders must be >= 1, got " +
                                 std::to_string(e.order));
        }
        if (e.order <= prev) {
            throw contract_error("moment orders must be strictly increasing");
        }
        if (!std::isfinite(e.value)) {
            throw domain_error("moment value for order " +
                               std::to_string(e.order) + " is not finite");
        }
        prev = e.order;
    }
}

bool MomentSet::has(int order) const {
    for (const auto& e : entries_) {
        if (e.order == order) return true;
    }
    return false;
}

double MomentSet::value(int order) const {
    for (const auto& e : entries_) {
        if (e.order == order) return e.value;
    }
    throw contract_error("moment of order " + std::to_string(order) +
                         " is not present");
}

int MomentSet::max_order() const {
    return entries_.empty() ? 0 : entries_.back().order;
}

bool MomentSet::contiguous_from_one() const {
    int expect = 1;
    for (const auto& e : entries_) {
        if (e.order != expect++) return false;
    }
    return !entries_.empty();
}

std::map<int, double> MomentSet::as_map() const {
    std::map<int, double> m;
    for (const auto& e : entries_) m[e.order] = e.value;
    return m;
}

ReferenceConstants::ReferenceConstants(std::map<int, double> overrides)
    : overrides_(std::move(overrides)) {
    for (const auto& [k, c] : overrides_) {
        if (k < 1) {
            throw contract_error("reference constant order must be >= 1");
        }
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw domain_error("reference constant C_" + std::to_string(k) +
                               " must be positive");
        }
    }
}

double ReferenceConstants::at(int order) const {
    auto it = overrides_.find(order);
    return it == overrides_.end() ? 1.0 : it->second;
}

namespace detail {

double fisher_term(double constant, int order, double v) {
    if (v == 0.0) {
        throw domain_error("moment of order " + std::to_string(order) +
                           " vanishes: outside the domain of the closed form");
    }
    return constant * std::pow(std::abs(v), -2.0 / order);
}

double multiplier_term(double constant, int order, double v) {
    return -(2.0 / order) * fisher_term(constant, order, v) / v;
}

} // namespace detail

MomentSet nondimensionalize(const MomentSet& moments) {
    const double s = moments.x_scale();
    if (!(s > 0.0)) {
        throw domain_error("x_scale must be positive to nondimensionalize");
    }
    std::vector<MomentEntry> out;
    out.reserve(moments.entries().size());
    for (const auto& e : moments.entries()) {
        out.push_back({e.order, e.value / kernels::pow_int(s, e.order)});
    }
    return MomentSet(std::move(out), 1.0);
}

MomentSet dimensionalize(const MomentSet& moments, double x_scale) {
    if (!(x_scale > 0.0)) {
        throw domain_error("x_scale must be positive to dimensionalize");
    }
    std::vector<MomentEntry> out;
    out.reserve(moments.entries().size());
    for (const auto& e : moments.entries()) {
        out.push_back({e.order, e.value * kernels::pow_int(x_scale, e.order)});
    }
    return MomentSet(std::move(out), x_scale);
}

FisherSolution minimal_fisher(const MomentSet& moments,
                              const ReferenceConstants& constants) {
    if (moments.entries().empty()) {
        throw contract_error("minimal_fisher requires at least one moment");
    }
    FisherSolution sol;
    for (const auto& e : moments.entries()) {
        const double term = detail::fisher_term(constants.at(e.order), e.order, e.value);
        sol.per_term[e.order] = term;
        sol.fisher += term;
    }
    return sol;
}

std::map<int, double> lagrange_multipliers(const MomentSet& moments,
                                           const ReferenceConstants& constants) {
    if (moments.entries().empty()) {
        throw contract_error("lagrange_multipliers requires at least one moment");
    }
    std::map<int, double> lam;
    for (const auto& e : moments.entries()) {
        lam[e.order] = detail::multiplier_term(constants.at(e.order), e.order, e.value);
    }
    return lam;
}

namespace {

// Shared contraction sum_k lambda_k * w(k) * <x^k>.  Orders carrying a
// nonzero multiplier must be present in the moment set; zero multipliers
// are tolerated so translated frames (lambda*_1 = 0) pass through.
template <class Weight>
double contract(const std::map<int, double>& lambdas, const MomentSet& moments,
                Weight w) {
    double s = 0.0;
    for (const auto& [k, lam] : lambdas) {
        if (!moments.has(k)) {
            if (lam == 0.0) continue;
            throw contract_error("multiplier for order " + std::to_string(k) +
                                 " has no matching moment");
        }
        s += w(k) * lam * moments.value(k);
    }
    return s;
}

} // namespace

double legendre_alpha(double fisher, const std::map<int, double>& lambdas,
                      const MomentSet& moments) {
    return fisher - contract(lambdas, moments, [](int) { return 1.0; });
}

double fisher_from_constraints(double alpha, const std::map<int, double>& lambdas,
                               const MomentSet& moments) {
    return alpha + contract(lambdas, moments, [](int) { return 1.0; });
}

double fisher_virial_form(const std::map<int, double>& lambdas,
                          const MomentSet& moments) {
    return -contract(lambdas, moments, [](int k) { return 0.5 * k; });
}

std::map<int, double> fisher_hessian(const MomentSet& moments,
                                     const ReferenceConstants& constants) {
    std::map<int, double> hess;
    for (const auto& e : moments.entries()) {
        if (e.value == 0.0) {
            throw domain_error("moment of order " + std::to_string(e.order) +
                               " vanishes: Hessian undefined");
        }
        const double k = e.order;
        hess[e.order] = (1.0 + k / 2.0) * (4.0 / (k * k)) * constants.at(e.order) *
                        std::pow(std::abs(e.value), -2.0 * (1.0 + k) / k);
    }
    return hess;
}

} // namespace fimin

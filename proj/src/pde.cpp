#include "fimin/pde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fimin/errors.hpp"

namespace fimin::pde {

MomentPoint::MomentPoint(std::vector<std::pair<int, double>> coords)
    : coords_(std::move(coords)) {
    std::sort(coords_.begin(), coords_.end());
    int prev = 0;
    for (const auto& [k, v] : coords_) {
        if (k < 1) throw contract_error("moment orders must be >= 1");
        if (k == prev) throw contract_error("duplicate moment order");
        if (v == 0.0 || !std::isfinite(v)) {
            throw domain_error("coordinate of order " + std::to_string(k) +
                               " must be finite and nonzero");
        }
        prev = k;
    }
    if (coords_.empty()) throw contract_error("moment point needs coordinates");
}

bool MomentPoint::has(int order) const {
    for (const auto& [k, v] : coords_) {
        if (k == order) return true;
    }
    return false;
}

double MomentPoint::value(int order) const {
    for (const auto& [k, v] : coords_) {
        if (k == order) return v;
    }
    throw contract_error("no coordinate of order " + std::to_string(order));
}

MomentPoint MomentPoint::with_value(int order, double v) const {
    auto c = coords_;
    for (auto& [k, old] : c) {
        if (k == order) {
            old = v;
            return MomentPoint(c);
        }
    }
    throw contract_error("no coordinate of order " + std::to_string(order));
}

CandidateFisher closed_form_candidate(const ReferenceConstants& constants) {
    CandidateFisher c;
    c.eval = [constants](const MomentPoint& p) {
        double s = 0.0;
        for (const auto& [k, v] : p.coords()) {
            s += detail::fisher_term(constants.at(k), k, v);
        }
        return s;
    };
    c.partial = [constants](const MomentPoint& p, int order) {
        return detail::multiplier_term(constants.at(order), order, p.value(order));
    };
    return c;
}

namespace {

double evaluate_checked(const CandidateFisher& cand, const MomentPoint& p,
                        const std::string& where) {
    double v = 0.0;
    try {
        v = cand.eval(p);
    } catch (const std::exception& e) {
        throw domain_error("candidate evaluation failed " + where + ": " + e.what());
    }
    if (!std::isfinite(v)) {
        throw domain_error("candidate is not finite " + where);
    }
    return v;
}

} // namespace

double pde_residual(const CandidateFisher& candidate, const MomentPoint& point,
                    double rel_step) {
    if (!candidate.eval) throw contract_error("candidate has no evaluator");
    double residual = evaluate_checked(candidate, point, "at the base point");
    for (const auto& [k, v] : point.coords()) {
        double partial = 0.0;
        const std::string where = "at coordinate of order " + std::to_string(k);
        if (candidate.partial) {
            partial = candidate.partial(point, k);
        } else {
            const double h = rel_step * std::abs(v);
            const double up = evaluate_checked(candidate, point.with_value(k, v + h), where);
            const double dn = evaluate_checked(candidate, point.with_value(k, v - h), where);
            partial = (up - dn) / (2.0 * h);
        }
        if (!std::isfinite(partial)) {
            throw domain_error("partial derivative is not finite " + where);
        }
        residual += 0.5 * k * v * partial;
    }
    return residual;
}

double scaling_covariance(const CandidateFisher& candidate,
                          const MomentPoint& point, double s) {
    if (!(s > 0.0)) throw contract_error("scale factor must be positive");
    std::vector<std::pair<int, double>> scaled;
    scaled.reserve(point.size());
    for (const auto& [k, v] : point.coords()) {
        scaled.emplace_back(k, v * std::pow(s, k));
    }
    const double base = evaluate_checked(candidate, point, "at the base point");
    const double at_scaled =
        evaluate_checked(candidate, MomentPoint(std::move(scaled)), "at the scaled point");
    return std::abs(at_scaled - base / (s * s)) / std::abs(base);
}

std::vector<double> characteristic_invariants(const MomentPoint& point,
                                              double fisher) {
    if (!point.has(1)) {
        throw contract_error("characteristic invariants need the order-1 coordinate");
    }
    const double x1sq = point.value(1) * point.value(1);
    std::vector<double> b;
    for (const auto& [k, v] : point.coords()) {
        if (k == 1) continue;
        b.push_back(x1sq * std::pow(std::abs(v), -2.0 / k));
    }
    b.push_back(x1sq * std::abs(fisher));
    return b;
}

MomentPoint characteristic_flow(const MomentPoint& point, double t) {
    std::vector<std::pair<int, double>> c;
    c.reserve(point.size());
    for (const auto& [k, v] : point.coords()) {
        c.emplace_back(k, v * std::exp(0.5 * k * t));
    }
    return MomentPoint(std::move(c));
}

double flow_fisher(double fisher, double t) { return fisher * std::exp(-t); }

double representation_deviation(const CandidateFisher& candidate,
                                const MomentPoint& a, const MomentPoint& b) {
    const double ia = evaluate_checked(candidate, a, "at the first point");
    const double ib = evaluate_checked(candidate, b, "at the second point");
    const auto inv_a = characteristic_invariants(a, ia);
    const auto inv_b = characteristic_invariants(b, ib);
    if (inv_a.size() != inv_b.size()) {
        throw contract_error("points carry different invariant counts");
    }
    for (std::size_t i = 0; i + 1 < inv_a.size(); ++i) {
        if (std::abs(inv_a[i] - inv_b[i]) >
            1e-10 * std::max(1.0, std::abs(inv_a[i]))) {
            throw contract_error("points do not share invariant b_" +
                                 std::to_string(i + 1));
        }
    }
    const double a1 = a.value(1);
    const double b1 = b.value(1);
    return std::abs(a1 * a1 * ia - b1 * b1 * ib);
}

} // namespace fimin::pde

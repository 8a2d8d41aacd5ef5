#include "fimin/translation.hpp"

#include <cmath>
#include <string>

#include "fimin/errors.hpp"
#include "fimin/kernels.hpp"

namespace fimin {

double translate_moment(const MomentSet& moments, double xi, int order) {
    if (order < 1) {
        throw contract_error("translated moment order must be >= 1");
    }
    for (int j = 1; j <= order; ++j) {
        if (!moments.has(j)) {
            throw contract_error("translating order " + std::to_string(order) +
                                 " needs moment of order " + std::to_string(j));
        }
    }
    double sum = 0.0;
    double binom = 1.0; // C(order, j)
    for (int j = 0; j <= order; ++j) {
        const double xterm = j == order ? 1.0 : moments.value(order - j);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * kernels::pow_int(xi, j) * xterm;
        binom = binom * (order - j) / (j + 1);
    }
    return sum;
}

TranslatedMoments translate_moments(const MomentSet& moments, double xi) {
    TranslatedMoments tm;
    tm.xi = xi;
    for (int k = 1; k <= moments.max_order(); ++k) {
        tm.entries[k] = translate_moment(moments, xi, k);
    }
    return tm;
}

TranslatedFisher translated_fisher(const TranslatedMoments& translated,
                                   const ReferenceConstants& constants,
                                   double vanish_tol) {
    TranslatedFisher out;
    bool any = false;
    for (const auto& [k, v] : translated.entries) {
        if (k < 2) continue; // lambda*_1 = 0 keeps order 1 out of the sum
        if (std::abs(v) < vanish_tol) {
            out.skipped.push_back(k);
            continue;
        }
        const double term = detail::fisher_term(constants.at(k), k, v);
        out.per_term[k] = term;
        out.fisher += term;
        any = true;
    }
    if (!any) {
        throw domain_error("all translated moments of order >= 2 vanish: "
                           "the translated closed form is undefined");
    }
    return out;
}

double alpha_shift(double alpha_bar, const InfoPotential& potential, double xi) {
    return alpha_bar + 8.0 * potential.value(xi);
}

double alpha_unshift(double alpha, const InfoPotential& potential, double xi) {
    return alpha - 8.0 * potential.value(xi);
}

CramerRaoResult cramer_rao_product(double fisher, const MomentSet& moments,
                                   double xi) {
    if (!moments.has(2)) {
        throw contract_error("Cramer-Rao product needs the order-2 moment");
    }
    if (xi != 0.0 && !moments.has(1)) {
        throw contract_error("Cramer-Rao product with xi != 0 needs the order-1 moment");
    }
    const double m1 = moments.has(1) ? moments.value(1) : 0.0;
    const double sigma_sq = moments.value(2) - 2.0 * xi * m1 + xi * xi;
    if (!(sigma_sq > 0.0)) {
        throw domain_error("sigma^2 <= 0: not the moments of a valid distribution");
    }
    CramerRaoResult r;
    r.sigma_sq = sigma_sq;
    r.product = fisher * sigma_sq;
    r.saturated = std::abs(r.product - 1.0) <= 1e-9;
    return r;
}

} // namespace fimin

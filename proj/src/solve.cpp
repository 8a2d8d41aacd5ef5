#include "fimin/solve.hpp"

#include <cmath>
#include <string>

#include "fimin/errors.hpp"

namespace fimin {

namespace {

ClosedFormSolution solve_translated(const MomentSet& ms,
                                    const ReferenceConstants& constants) {
    ClosedFormSolution sol;
    sol.moments = ms;
    sol.constants = constants;
    sol.translated = true;
    const double xi = ms.value(1);
    sol.xi = xi;

    const TranslatedMoments tm = translate_moments(ms, xi);
    const TranslatedFisher tf = translated_fisher(tm, constants);
    sol.fisher = tf.fisher;
    sol.per_term = tf.per_term;
    sol.translated_moments = tm.entries;
    sol.skipped_orders = tf.skipped;
    for (int k : tf.skipped) {
        sol.warnings.push_back("translated moment of order " + std::to_string(k) +
                               " vanishes; its constraint was dropped");
    }

    // Translated-frame multipliers for the surviving constraints.
    std::map<int, double> star;
    star[1] = 0.0;
    for (const auto& [k, v] : tm.entries) {
        if (tf.per_term.count(k)) {
            star[k] = detail::multiplier_term(constants.at(k), k, v);
        }
    }

    const InfoPotential translated_pot = build_potential(star);
    const InfoPotential original = untranslate_potential(translated_pot, xi);
    sol.lambdas = original.lambdas();
    for (int k = 1; k <= ms.max_order(); ++k) {
        if (!sol.lambdas.count(k)) sol.lambdas[k] = 0.0;
    }

    MomentSet tset = [&] {
        std::vector<MomentEntry> e;
        for (const auto& [k, v] : tm.entries) e.push_back({k, v});
        return MomentSet(std::move(e));
    }();
    sol.alpha_bar = legendre_alpha(sol.fisher, star, tset);
    sol.alpha = alpha_shift(sol.alpha_bar, original, xi);

    if (original.confining()) {
        const CriticalPoint cp = potential_minimum(original);
        if (std::abs(cp.xi - xi) > 1e-8 * (1.0 + std::abs(xi))) {
            sol.warnings.push_back(
                "translation point differs from the potential's global minimum");
        }
    }
    return sol;
}

ClosedFormSolution solve_raw(const MomentSet& ms,
                             const ReferenceConstants& constants) {
    ClosedFormSolution sol;
    sol.moments = ms;
    sol.constants = constants;
    const FisherSolution fs = minimal_fisher(ms, constants);
    sol.fisher = fs.fisher;
    sol.per_term = fs.per_term;
    sol.lambdas = lagrange_multipliers(ms, constants);
    sol.alpha = legendre_alpha(sol.fisher, sol.lambdas, ms);

    try {
        const InfoPotential pot = build_potential(sol.lambdas);
        const CriticalPoint cp = potential_minimum(pot);
        sol.xi = cp.xi;
        sol.alpha_bar = alpha_unshift(sol.alpha, pot, cp.xi);
    } catch (const domain_error&) {
        sol.alpha_bar = sol.alpha;
        sol.warnings.push_back(
            "induced potential is unbounded below; no critical point reported");
    }
    return sol;
}

} // namespace

ClosedFormSolution solve_closed_form(const MomentSet& input,
                                     const ReferenceConstants& constants) {
    if (input.entries().empty()) {
        throw contract_error("at least one moment is required");
    }
    const MomentSet ms =
        input.x_scale() == 1.0 ? input : nondimensionalize(input);

    ClosedFormSolution sol;
    if (ms.has(1) && ms.contiguous_from_one() && ms.max_order() >= 2) {
        sol = solve_translated(ms, constants);
    } else {
        std::vector<std::string> notes;
        if (ms.has(1) && ms.max_order() == 1) {
            notes.push_back(
                "only the order-1 moment is present; the translation frame is "
                "undefined, using the raw closed form");
        } else if (ms.has(1)) {
            notes.push_back(
                "order-1 moment present but orders are not contiguous from 1; "
                "using the untranslated closed form");
        }
        sol = solve_raw(ms, constants);
        sol.warnings.insert(sol.warnings.begin(), notes.begin(), notes.end());
    }

    for (const auto& e : ms.entries()) {
        if (e.order >= 3) {
            sol.warnings.push_back(
                "orders >= 3 use heuristic reference constants; eigensolver "
                "agreement is diagnostic only");
            break;
        }
    }

    if (ms.has(2)) {
        const double xi_cr = sol.xi.value_or(0.0);
        try {
            sol.cramer_rao = cramer_rao_product(sol.fisher, ms, xi_cr);
        } catch (const contract_error&) {
            sol.warnings.push_back(
                "Cramer-Rao product skipped: order-1 moment required for xi != 0");
        }
    }
    return sol;
}

} // namespace fimin

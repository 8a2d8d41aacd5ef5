#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fimin/moments.hpp"
#include "fimin/potential.hpp"
#include "fimin/translation.hpp"

namespace fimin {

/// Closed-form pipeline output, before any eigensolver verification.
///
/// When the order-1 moment is present (orders contiguous from 1), the
/// measure is built in the frame translated to xi = <x>: the translated
/// moments carry the constraints, lambda*_1 = 0, and the original-frame
/// multipliers come from expanding the translated potential back.
/// Otherwise the raw closed form applies and xi is the potential minimum.
struct ClosedFormSolution {
    double fisher = 0.0;
    std::map<int, double> lambdas;     // original frame
    double alpha = 0.0;
    double alpha_bar = 0.0;
    std::map<int, double> per_term;    // contributions in the active frame
    bool translated = false;
    std::optional<double> xi;
    std::map<int, double> translated_moments; // populated on the translated route
    std::vector<int> skipped_orders;
    std::optional<CramerRaoResult> cramer_rao;
    MomentSet moments;                 // dimensionless working set
    ReferenceConstants constants;
    std::vector<std::string> warnings;
};

ClosedFormSolution solve_closed_form(const MomentSet& input,
                                     const ReferenceConstants& constants);

} // namespace fimin

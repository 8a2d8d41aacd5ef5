#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fimin/moments.hpp"

namespace fimin::pde {

/// Dimensionless moment coordinates (order, value), all values nonzero.
class MomentPoint {
public:
    explicit MomentPoint(std::vector<std::pair<int, double>> coords);

    const std::vector<std::pair<int, double>>& coords() const { return coords_; }
    bool has(int order) const;
    double value(int order) const;
    MomentPoint with_value(int order, double v) const;
    std::size_t size() const { return coords_.size(); }

private:
    std::vector<std::pair<int, double>> coords_; // sorted by order
};

/// Evaluation contract for a candidate measure; `partial` is optional and
/// enables analytic derivatives in pde_residual.
struct CandidateFisher {
    std::function<double(const MomentPoint&)> eval;
    std::function<double(const MomentPoint&, int order)> partial; // may be empty
};

/// The complete solution sum_k C_k |X_k|^(-2/k) with analytic partials.
CandidateFisher closed_form_candidate(const ReferenceConstants& constants);

/// Residual of the governing equation at `point`:
///   I + sum_k (k/2) X_k dI/dX_k.
/// Partials are analytic when provided, otherwise central differences
/// with per-coordinate step rel_step*|X_k|.  Non-finite evaluations or
/// partials raise domain_error naming the coordinate.
double pde_residual(const CandidateFisher& candidate, const MomentPoint& point,
                    double rel_step = 1e-5);

/// |I({s^k X_k}) - s^-2 I(X)| / I(X); zero for solutions reachable along
/// the characteristic curves.
double scaling_covariance(const CandidateFisher& candidate,
                          const MomentPoint& point, double s);

/// Integral basis along the characteristics: |X_1|^2 |X_k|^(-2/k) for each
/// order k >= 2 (in order), with |X_1|^2 |I| appended last.  Requires the
/// order-1 coordinate.
std::vector<double> characteristic_invariants(const MomentPoint& point,
                                              double fisher);

/// The flow map X_k -> e^(k t / 2) X_k.
MomentPoint characteristic_flow(const MomentPoint& point, double t);
/// How the measure transports along the same flow: I -> e^-t I.
double flow_fisher(double fisher, double t);

/// | |X_1|_A^2 I(A) - |X_1|_B^2 I(B) | for two points sharing the
/// invariants b_1..b_{M-1} within 1e-10 (contract_error otherwise);
/// zero iff the candidate factors through the invariant basis there.
double representation_deviation(const CandidateFisher& candidate,
                                const MomentPoint& a, const MomentPoint& b);

} // namespace fimin::pde

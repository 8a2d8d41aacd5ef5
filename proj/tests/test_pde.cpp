#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fimin/errors.hpp"
#include "fimin/pde.hpp"

using namespace fimin;
using namespace fimin::pde;

namespace {

MomentPoint random_point(std::mt19937& rng, int max_order) {
    std::uniform_real_distribution<double> mag(0.2, 5.0);
    std::vector<std::pair<int, double>> c;
    for (int k = 1; k <= max_order; ++k) c.emplace_back(k, mag(rng));
    return MomentPoint(std::move(c));
}

// I = X_2: not a solution of the governing equation.
CandidateFisher second_moment_candidate() {
    CandidateFisher c;
    c.eval = [](const MomentPoint& p) { return p.value(2); };
    return c;
}

} // namespace

TEST_CASE("moment point validation") {
    CHECK_THROWS_AS(MomentPoint({}), contract_error);
    CHECK_THROWS_AS(MomentPoint({{1, 0.0}}), domain_error);
    CHECK_THROWS_AS(MomentPoint({{1, 1.0}, {1, 2.0}}), contract_error);
    CHECK_THROWS_AS(MomentPoint({{0, 1.0}}), contract_error);
}

TEST_CASE("closed form annihilates the governing equation") {
    std::mt19937 rng(71);
    const CandidateFisher closed = closed_form_candidate({});
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const MomentPoint p = random_point(rng, m);
        CHECK(std::abs(pde_residual(closed, p)) <= 1e-10);

        CandidateFisher numeric = closed;
        numeric.partial = nullptr;
        CHECK(std::abs(pde_residual(numeric, p)) <= 1e-5);
    }
}

TEST_CASE("the minimal measure itself nulls the equation") {
    // Wrap the actual minimization routine, not its formula transcript,
    // so the two modules are checked against each other.
    CandidateFisher wrapped;
    wrapped.eval = [](const MomentPoint& p) {
        std::vector<MomentEntry> e;
        for (const auto& [k, v] : p.coords()) e.push_back({k, v});
        return minimal_fisher(MomentSet(std::move(e)), {}).fisher;
    };

    std::mt19937 rng(89);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const MomentPoint p = random_point(rng, m);
        CHECK(std::abs(pde_residual(wrapped, p, 1e-5)) <= 1e-5);

        CandidateFisher analytic = wrapped;
        analytic.partial = [](const MomentPoint& q, int order) {
            std::vector<MomentEntry> e;
            for (const auto& [k, v] : q.coords()) e.push_back({k, v});
            return lagrange_multipliers(MomentSet(std::move(e)), {}).at(order);
        };
        CHECK(std::abs(pde_residual(analytic, p)) <= 1e-10);
    }
}

TEST_CASE("non-solution has the hand-computed residual") {
    const MomentPoint p({{1, 1.0}, {2, 1.0}});
    CHECK(pde_residual(second_moment_candidate(), p) ==
          doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("single-term complete solution") {
    CandidateFisher c;
    c.eval = [](const MomentPoint& p) {
        const double x1 = p.value(1);
        return 2.5 / (x1 * x1);
    };
    const MomentPoint p({{1, 1.7}});
    CHECK(std::abs(pde_residual(c, p)) <= 1e-5); // finite differences

    c.partial = [](const MomentPoint& q, int) {
        const double x1 = q.value(1);
        return -5.0 / (x1 * x1 * x1);
    };
    CHECK(std::abs(pde_residual(c, p)) <= 1e-10);
}

TEST_CASE("scaling covariance of solutions and non-solutions") {
    const CandidateFisher closed = closed_form_candidate({});
    CHECK(scaling_covariance(closed, MomentPoint({{2, 0.5}}), 2.0) <= 1e-12);
    CHECK(scaling_covariance(closed, MomentPoint({{1, 1.0}, {2, 2.0}}), 0.5) <= 1e-12);

    const MomentPoint p({{1, 1.0}, {2, 1.0}});
    CHECK(scaling_covariance(second_moment_candidate(), p, 2.0) ==
          doctest::Approx(3.75).epsilon(1e-12));
}

TEST_CASE("zero covariance deviation implies zero residual") {
    // Characteristic coverage: scan s densely for both candidates; the one
    // whose deviation vanishes everywhere must also null the equation.
    std::mt19937 rng(73);
    const MomentPoint p = random_point(rng, 2);
    const CandidateFisher closed = closed_form_candidate({});
    const CandidateFisher broken = second_moment_candidate();

    double closed_dev = 0.0;
    double broken_dev = 0.0;
    for (double s = 0.25; s <= 4.0; s += 0.05) {
        closed_dev = std::max(closed_dev, scaling_covariance(closed, p, s));
        broken_dev = std::max(broken_dev, scaling_covariance(broken, p, s));
    }
    CHECK(closed_dev <= 1e-12);
    CHECK(std::abs(pde_residual(closed, p)) <= 1e-10);
    CHECK(broken_dev > 1e-3);
    CHECK(std::abs(pde_residual(broken, p)) > 1e-3);
}

TEST_CASE("characteristic invariants") {
    const auto b = characteristic_invariants(MomentPoint({{1, 2.0}, {2, 1.0}}), 0.25);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == doctest::Approx(4.0));
    CHECK(b[1] == doctest::Approx(1.0));

    const auto b1 = characteristic_invariants(MomentPoint({{1, 1.0}, {2, 3.0}}), 1.0);
    CHECK(b1[0] == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(characteristic_invariants(MomentPoint({{2, 1.0}}), 1.0),
                    contract_error);
}

TEST_CASE("invariants are constant along the characteristic flow") {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 2);
        const MomentPoint p = random_point(rng, m);
        const double fisher = closed_form_candidate({}).eval(p);
        const auto base = characteristic_invariants(p, fisher);
        for (double t : {-1.0, -0.5, 0.5, 1.0}) {
            const MomentPoint q = characteristic_flow(p, t);
            const auto moved = characteristic_invariants(q, flow_fisher(fisher, t));
            REQUIRE(moved.size() == base.size());
            for (std::size_t i = 0; i < base.size(); ++i) {
                CHECK(moved[i] == doctest::Approx(base[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("representation through the invariant basis") {
    std::mt19937 rng(83);
    const CandidateFisher closed = closed_form_candidate({});
    for (int trial = 0; trial < 20; ++trial) {
        const MomentPoint a = random_point(rng, 2);
        const MomentPoint b = characteristic_flow(a, 0.7);
        CHECK(representation_deviation(closed, a, b) <= 1e-10);
    }

    CandidateFisher single;
    single.eval = [](const MomentPoint& p) {
        const double x1 = p.value(1);
        return 3.0 / (x1 * x1);
    };
    const MomentPoint a({{1, 1.2}, {2, 0.8}});
    CHECK(representation_deviation(single, a, characteristic_flow(a, 1.0)) <= 1e-10);

    // I = X_1 + X_2 does not factor through the basis.
    CandidateFisher sum;
    sum.eval = [](const MomentPoint& p) { return p.value(1) + p.value(2); };
    const MomentPoint unit({{1, 1.0}, {2, 1.0}});
    const double dev =
        representation_deviation(sum, unit, characteristic_flow(unit, 1.0));
    CHECK(dev == doctest::Approx(std::abs(2.0 - (std::exp(1.5) + std::exp(2.0))))
                     .epsilon(1e-10));

    // Mismatched invariants violate the precondition.
    CHECK_THROWS_AS(
        representation_deviation(closed, unit, MomentPoint({{1, 1.0}, {2, 2.0}})),
        contract_error);
}

TEST_CASE("finiteness guard") {
    CandidateFisher blows_up;
    blows_up.eval = [](const MomentPoint&) {
        return std::numeric_limits<double>::infinity();
    };
    CHECK_THROWS_AS(pde_residual(blows_up, MomentPoint({{1, 1.0}})), domain_error);

    CandidateFisher throws_inside;
    throws_inside.eval = [](const MomentPoint& p) {
        if (p.value(1) > 1.0) throw std::runtime_error("poles");
        return 1.0;
    };
    CHECK_THROWS_AS(pde_residual(throws_inside, MomentPoint({{1, 0.999999}})),
                    domain_error);
}

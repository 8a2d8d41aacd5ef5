#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "fimin/errors.hpp"
#include "fimin/grid.hpp"
#include "fimin/kernels.hpp"
#include "fimin/potential.hpp"
#include "fimin/schrodinger.hpp"

using namespace fimin;

namespace {

const InfoPotential kHarmonic({{2, -4.0}});          // U = x^2/2
const InfoPotential kShifted({{1, 8.0}, {2, -4.0}}); // U = x^2/2 - x
const InfoPotential kQuartic({{4, -8.0}});           // U = x^4

// Gaussian amplitude with <x^2> = sigma_sq, sampled and renormalized.
GridWavefunction gaussian_state(const Grid& grid, double sigma_sq, double center = 0.0) {
    GridWavefunction psi;
    psi.grid = grid;
    psi.values.resize(static_cast<std::size_t>(grid.n_points));
    const double norm = std::pow(2.0 * M_PI * sigma_sq, -0.25);
    for (int i = 0; i < grid.n_points; ++i) {
        const double u = grid.node(i) - center;
        psi.values[static_cast<std::size_t>(i)] =
            norm * std::exp(-u * u / (4.0 * sigma_sq));
    }
    return normalized(psi);
}

int sign_changes(const GridWavefunction& psi) {
    int changes = 0;
    double prev = 0.0;
    for (double v : psi.values) {
        if (std::abs(v) < 1e-12) continue;
        if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++changes;
        prev = v;
    }
    return changes;
}

} // namespace

TEST_CASE("harmonic ground state on the reference grid") {
    const Grid grid(-10.0, 10.0, 4001);
    const EigenResult r = ground_state(kHarmonic, grid);
    CHECK(std::abs(r.energy - 0.5) <= 1e-6);
    // Independently computed discrete eigenvalue for this exact matrix.
    CHECK(r.energy == doctest::Approx(0.499999218747).epsilon(1e-9));
    CHECK(r.implied_alpha == doctest::Approx(8.0 * r.energy));
    CHECK(std::abs(norm_integral(r.psi) - 1.0) <= 1e-10);
    CHECK(sign_changes(r.psi) == 0);
    CHECK(r.warnings.empty());
}

TEST_CASE("shifted harmonic well has zero ground energy") {
    const Grid grid(-9.0, 11.0, 4001);
    const EigenResult r = ground_state(kShifted, grid);
    CHECK(std::abs(r.energy) <= 1e-6);
}

TEST_CASE("quartic energy matches a finer-grid run") {
    const double coarse = ground_state(kQuartic, Grid(-6.0, 6.0, 4001)).energy;
    const double fine = ground_state(kQuartic, Grid(-6.0, 6.0, 8001)).energy;
    CHECK(std::abs(coarse - fine) <= 1e-6);
}

TEST_CASE("energy error falls by ~4x per grid doubling") {
    std::vector<double> errs;
    for (int n : {1001, 2001, 4001}) {
        errs.push_back(std::abs(ground_state(kHarmonic, Grid(-10.0, 10.0, n)).energy - 0.5));
    }
    CHECK(errs[0] / errs[1] >= 3.5);
    CHECK(errs[0] / errs[1] <= 4.5);
    CHECK(errs[1] / errs[2] >= 3.5);
    CHECK(errs[1] / errs[2] <= 4.5);
}

TEST_CASE("degenerate grids still solve") {
    // One and two interior nodes exercise the tridiagonal edge paths.
    for (int n : {3, 4, 5}) {
        const EigenResult r = ground_state(kHarmonic, Grid(-1.0, 1.0, n));
        CHECK(std::isfinite(r.energy));
        CHECK(std::abs(norm_integral(r.psi) - 1.0) <= 1e-10);
    }
}

TEST_CASE("non-confining potentials are rejected") {
    CHECK_THROWS_AS(ground_state(InfoPotential({{1, 8.0}}), Grid(-10.0, 10.0, 101)),
                    domain_error);
    CHECK_THROWS_AS(ground_state(InfoPotential({{2, 4.0}}), Grid(-10.0, 10.0, 101)),
                    domain_error);
}

TEST_CASE("iteration budget is honored") {
    SolverOptions opts;
    opts.max_inverse_iterations = 0;
    CHECK_THROWS_AS(ground_state(kHarmonic, Grid(-10.0, 10.0, 201), opts),
                    numeric_error);
}

TEST_CASE("boundary leakage is reported on a cramped grid") {
    const EigenResult r = ground_state(kHarmonic, Grid(-2.0, 2.0, 801));
    REQUIRE(!r.warnings.empty());
}

TEST_CASE("auto grid walls sit deep in the forbidden region") {
    const Grid g = auto_grid(kHarmonic);
    CHECK(g.n_points == 4001);
    CHECK(g.x_max >= std::sqrt(51.0)); // x^2/2 >= E + 25
    CHECK(kHarmonic.value(g.x_max) >= 25.0);
    const EigenResult r = ground_state(kHarmonic, g);
    CHECK(r.warnings.empty());

    // Steep well: the height rule alone would stop near 2.25 and leak.
    const Grid gq = auto_grid(kQuartic);
    CHECK(gq.x_max >= 3.5);
    CHECK(ground_state(kQuartic, gq).warnings.empty());
}

TEST_CASE("pdf from amplitude") {
    const EigenResult r = ground_state(kHarmonic, Grid(-10.0, 10.0, 2001));
    const auto f = pdf_from_amplitude(r.psi);
    CHECK(kernels::trapezoid(f, r.psi.grid.spacing()) ==
          doctest::Approx(1.0).epsilon(1e-10));

    GridWavefunction flipped = r.psi;
    for (double& v : flipped.values) v = -v;
    CHECK(pdf_from_amplitude(flipped) == f);

    GridWavefunction unnormalized = r.psi;
    for (double& v : unnormalized.values) v *= 2.0;
    CHECK_THROWS_AS(pdf_from_amplitude(unnormalized), contract_error);
}

TEST_CASE("fisher information from the amplitude") {
    const EigenResult r = ground_state(kHarmonic, Grid(-10.0, 10.0, 8001));
    CHECK(std::abs(fisher_from_amplitude(r.psi) - 2.0) <= 1e-5);

    const GridWavefunction gauss = gaussian_state(Grid(-12.0, 12.0, 8001), 1.0);
    CHECK(std::abs(fisher_from_amplitude(gauss) - 1.0) <= 1e-5);

    // Uniform amplitude: zero information.
    GridWavefunction box;
    box.grid = Grid(0.0, 1.0, 101);
    box.values.assign(101, 1.0);
    box = normalized(box);
    CHECK(fisher_from_amplitude(box) == 0.0);
}

TEST_CASE("moments from the amplitude") {
    const EigenResult r = ground_state(kHarmonic, Grid(-10.0, 10.0, 8001));
    const MomentSet ms = moments_from_amplitude(r.psi, {1, 2, 3});
    CHECK(std::abs(ms.value(2) - 0.5) <= 1e-6);
    CHECK(std::abs(ms.value(1)) <= 1e-10);
    CHECK(std::abs(ms.value(3)) <= 1e-10);

    const EigenResult s = ground_state(kShifted, Grid(-9.0, 11.0, 4001));
    CHECK(std::abs(moments_from_amplitude(s.psi, {1}).value(1) - 1.0) <= 1e-6);
}

TEST_CASE("virial balance") {
    const EigenResult r = ground_state(kHarmonic, Grid(-10.0, 10.0, 4001));
    const VirialCheck vc = virial_residual(r.psi, kHarmonic);
    CHECK(std::abs(vc.lhs - 0.5) <= 1e-5);
    CHECK(std::abs(vc.rhs - 0.5) <= 1e-5);
    CHECK(std::abs(vc.residual) <= 1e-5);

    for (const InfoPotential* pot : {&kShifted, &kQuartic}) {
        const EigenResult e = ground_state(*pot, auto_grid(*pot));
        CHECK(std::abs(virial_residual(e.psi, *pot).residual) <= 1e-5);
    }

    // A width-mismatched Gaussian badly violates the balance.
    const GridWavefunction gauss = gaussian_state(Grid(-12.0, 12.0, 8001), 1.0);
    const VirialCheck off = virial_residual(gauss, kHarmonic);
    CHECK(off.lhs == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(off.rhs == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(off.residual == doctest::Approx(-0.75).epsilon(1e-4));
}

TEST_CASE("trial-state quality score") {
    const EigenResult r = ground_state(kHarmonic, Grid(-10.0, 10.0, 4001));
    CHECK(approx_quality(r.psi, kHarmonic) <= 1e-4);

    const GridWavefunction gauss = gaussian_state(Grid(-12.0, 12.0, 8001), 1.0);
    CHECK(std::abs(approx_quality(gauss, kHarmonic) - 3.0) <= 1e-4);

    // Sweeping the width toward the exact <x^2> = 1/2 drives the score to
    // zero monotonically from both sides.
    const Grid g(-12.0, 12.0, 8001);
    double prev = approx_quality(gaussian_state(g, 0.30), kHarmonic);
    for (double s2 : {0.35, 0.40, 0.45, 0.499}) {
        const double score = approx_quality(gaussian_state(g, s2), kHarmonic);
        CHECK(score < prev);
        prev = score;
    }
    CHECK(approx_quality(gaussian_state(g, 0.5), kHarmonic) <= 1e-3);
    prev = approx_quality(gaussian_state(g, 0.501), kHarmonic);
    for (double s2 : {0.55, 0.60, 0.65}) {
        const double score = approx_quality(gaussian_state(g, s2), kHarmonic);
        CHECK(score > prev);
        prev = score;
    }
}

TEST_CASE("translating the potential shifts energy and moments consistently") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> shift(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double xi = shift(rng);
        auto star = taylor_multipliers(kShifted, xi);
        const double offset = -star.at(0) / 8.0; // = U(xi)
        star.erase(0);
        const InfoPotential ubar(star);

        const Grid base(-9.0, 11.0, 4001);
        const Grid moved(base.x_min - xi, base.x_max - xi, base.n_points);
        const EigenResult orig = ground_state(kShifted, base);
        const EigenResult trans = ground_state(ubar, moved);

        CHECK(std::abs(trans.energy - (orig.energy - offset)) <= 1e-6);
        const double mean_orig = moments_from_amplitude(orig.psi, {1}).value(1);
        const double mean_trans = moments_from_amplitude(trans.psi, {1}).value(1);
        CHECK(std::abs(mean_trans - (mean_orig - xi)) <= 1e-6);
        const double m2_orig = moments_from_amplitude(orig.psi, {2}).value(2);
        const double m2_trans = moments_from_amplitude(trans.psi, {2}).value(2);
        CHECK(std::abs(m2_trans - (m2_orig - 2.0 * xi * mean_orig + xi * xi)) <=
              1e-6);
    }
}

TEST_CASE("wavefunction csv round trip") {
    const EigenResult r = ground_state(kHarmonic, Grid(-10.0, 10.0, 1001));
    const auto path = std::filesystem::temp_directory_path() / "fimin_test_psi.csv";
    write_wavefunction_csv(r.psi, path.string());
    const GridWavefunction back = read_wavefunction_csv(path.string());
    CHECK(back.grid.n_points == 1001);
    CHECK(back.values == r.psi.values);
    std::filesystem::remove(path);
}

TEST_CASE("csv schema violations") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();

    const auto bad_header = dir / "fimin_bad_header.csv";
    { std::FILE* f = std::fopen(bad_header.c_str(), "w");
      std::fputs("a,b\n0,1\n0.1,1\n0.2,1\n", f); std::fclose(f); }
    CHECK_THROWS_AS(read_wavefunction_csv(bad_header.string()), schema_error);

    const auto nonuniform = dir / "fimin_nonuniform.csv";
    { std::FILE* f = std::fopen(nonuniform.c_str(), "w");
      std::fputs("x,psi\n0,1\n0.1,1\n0.35,1\n", f); std::fclose(f); }
    CHECK_THROWS_AS(read_wavefunction_csv(nonuniform.string()), schema_error);

    const auto empty = dir / "fimin_empty.csv";
    { std::FILE* f = std::fopen(empty.c_str(), "w"); std::fclose(f); }
    CHECK_THROWS_AS(read_wavefunction_csv(empty.string()), domain_error);

    fs::remove(bad_header);
    fs::remove(nonuniform);
    fs::remove(empty);
}

TEST_CASE("self consistency closes the loop") {
    const ConsistencyReport ho =
        self_consistency(MomentSet({{2, 0.5}}), ReferenceConstants{});
    CHECK(std::abs(ho.moment_deltas.at(2)) <= 1e-5);
    CHECK(ho.fisher_closed == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(ho.fisher_amplitude - 2.0) <= 1e-4);
    CHECK(std::abs(ho.fisher_constraint - 2.0) <= 1e-4);
    CHECK(std::abs(ho.fisher_virial - 2.0) <= 1e-4);
    CHECK(std::abs(ho.energy - 0.5) <= 1e-5);

    const ConsistencyReport hf =
        self_consistency(MomentSet({{1, 1.0}, {2, 1.5}}), ReferenceConstants{});
    CHECK(std::abs(hf.moment_deltas.at(1)) <= 1e-5);
    CHECK(std::abs(hf.energy) <= 1e-6);

    // Quartic-only prior: diagnostic report, visible mismatch, no throw.
    const ConsistencyReport q =
        self_consistency(MomentSet({{4, 1.0}}), ReferenceConstants{});
    CHECK(std::abs(q.moment_deltas.at(4)) > 1e-3);
    CHECK(!q.warnings.empty());
}

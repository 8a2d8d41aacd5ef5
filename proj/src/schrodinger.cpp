#include "fimin/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fimin/errors.hpp"
#include "fimin/kernels.hpp"
#include "fimin/solve.hpp"

namespace fimin {

namespace {

constexpr double kBoundaryDecay = 1e-8;

// Eigenvalue count below sigma for the symmetric tridiagonal matrix with
// diagonal d and constant off-diagonal e (Sturm sequence sign count).
int count_below(const std::vector<double>& d, double e2, double sigma,
                double pivmin) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double denom = q;
        if (std::abs(denom) < pivmin) denom = denom < 0.0 ? -pivmin : pivmin;
        q = d[i] - sigma - (i == 0 ? 0.0 : e2 / denom);
        if (q < 0.0) ++count;
    }
    return count;
}

// LU factorization with partial pivoting of the tridiagonal matrix
// (d - sigma) on the diagonal and e elsewhere; fill-in creates a second
// superdiagonal.  Layout follows the standard gttrf scheme.
struct TridiagFactors {
    std::vector<double> dl, dd, du, du2;
    std::vector<bool> swapped;
};

TridiagFactors factor_shifted(const std::vector<double>& d, double e,
                              double sigma, double matrix_scale) {
    const std::size_t m = d.size();
    TridiagFactors f;
    f.dl.assign(m - 1, e);
    f.dd.resize(m);
    f.du.assign(m - 1, e);
    f.du2.assign(m >= 2 ? m - 2 : 0, 0.0);
    f.swapped.assign(m - 1, false);
    for (std::size_t i = 0; i < m; ++i) f.dd[i] = d[i] - sigma;

    const double tiny = std::numeric_limits<double>::epsilon() * matrix_scale;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(f.dd[i]) >= std::abs(f.dl[i])) {
            if (f.dd[i] == 0.0) f.dd[i] = tiny;
            const double fact = f.dl[i] / f.dd[i];
            f.dl[i] = fact;
            f.dd[i + 1] -= fact * f.du[i];
            if (i + 2 < m) f.du2[i] = 0.0;
        } else {
            const double fact = f.dd[i] / f.dl[i];
            f.dd[i] = f.dl[i];
            f.dl[i] = fact;
            const double temp = f.du[i];
            f.du[i] = f.dd[i + 1];
            f.dd[i + 1] = temp - fact * f.dd[i + 1];
            if (i + 2 < m) {
                f.du2[i] = f.du[i + 1];
                f.du[i + 1] = -fact * f.du[i + 1];
            }
            f.swapped[i] = true;
        }
    }
    if (f.dd[m - 1] == 0.0) f.dd[m - 1] = tiny;
    return f;
}

void solve_factored(const TridiagFactors& f, std::vector<double>& b) {
    const std::size_t m = b.size();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!f.swapped[i]) {
            b[i + 1] -= f.dl[i] * b[i];
        } else {
            const double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - f.dl[i] * b[i];
        }
    }
    b[m - 1] /= f.dd[m - 1];
    if (m >= 2) {
        b[m - 2] = (b[m - 2] - f.du[m - 2] * b[m - 1]) / f.dd[m - 2];
        for (std::size_t i = m - 2; i-- > 0;) {
            b[i] = (b[i] - f.du[i] * b[i + 1] - f.du2[i] * b[i + 2]) / f.dd[i];
        }
    }
}

double euclid_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

EigenResult ground_state(const InfoPotential& potential, const Grid& grid,
                         const SolverOptions& options) {
    if (!potential.confining()) {
        throw domain_error("potential is not confining (leading order " +
                           std::to_string(potential.degree()) +
                           "); the spectrum has no ground state");
    }
    const int n = grid.n_points;
    const std::size_t m = static_cast<std::size_t>(n - 2);
    const double h = grid.spacing();
    const double e = -0.5 / (h * h);
    const double e2 = e * e;

    // Interior diagonal 1/h^2 + U(x_i).
    std::vector<double> d(m);
    const auto coeffs = potential.poly_coeffs();
    kernels::fill_poly(d, grid.node(1), h, coeffs);
    for (double& di : d) di += 1.0 / (h * h);

    double dmin = d[0];
    double dmax = d[0];
    for (double di : d) {
        dmin = std::min(dmin, di);
        dmax = std::max(dmax, di);
    }
    const double matrix_scale = std::max({std::abs(dmin), std::abs(dmax), 2.0 * std::abs(e)});
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, e2);

    double lo = dmin - 2.0 * std::abs(e);
    double hi = dmax + 2.0 * std::abs(e);
    for (int it = 0; it < 200; ++it) {
        if (hi - lo <= std::max(options.bisect_tol,
                                4.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(std::abs(lo), std::abs(hi)))) {
            break;
        }
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e2, mid, pivmin) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double sigma = 0.5 * (lo + hi);

    // Inverse iteration at the bisected shift.
    const TridiagFactors factors = factor_shifted(d, e, sigma, matrix_scale);
    std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
    std::vector<double> w;
    int used = 0;
    bool converged = false;
    for (int it = 1; it <= options.max_inverse_iterations; ++it) {
        used = it;
        w = v;
        solve_factored(factors, w);
        const double nrm = euclid_norm(w);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw numeric_error("inverse iteration produced a degenerate vector", it);
        }
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += w[i] * v[i];
        const double flip = dot < 0.0 ? -1.0 : 1.0;
        for (double& x : w) x *= flip / nrm;
        double diff = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            diff += (w[i] - v[i]) * (w[i] - v[i]);
        }
        v = w;
        if (std::sqrt(diff) <= options.inverse_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw numeric_error("inverse iteration did not converge within " +
                                std::to_string(options.max_inverse_iterations) +
                                " iterations",
                            options.max_inverse_iterations);
    }

    // Rayleigh quotient of the converged vector (v has unit 2-norm).
    double rq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double tv = d[i] * v[i];
        if (i > 0) tv += e * v[i - 1];
        if (i + 1 < m) tv += e * v[i + 1];
        rq += v[i] * tv;
    }
    if (std::abs(rq - sigma) > 1e-6 * std::max(1.0, std::abs(rq))) {
        throw numeric_error("inverse iteration drifted away from the bracketed "
                            "eigenvalue",
                            used);
    }

    EigenResult result;
    result.energy = rq;
    result.iterations = used;
    result.implied_alpha = 8.0 * rq;
    result.psi.grid = grid;
    result.psi.values.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < m; ++i) result.psi.values[i + 1] = v[i];
    result.psi = normalized(result.psi);

    std::size_t peak = 0;
    for (std::size_t i = 1; i < result.psi.values.size(); ++i) {
        if (std::abs(result.psi.values[i]) > std::abs(result.psi.values[peak])) {
            peak = i;
        }
    }
    if (result.psi.values[peak] < 0.0) {
        for (double& x : result.psi.values) x = -x;
    }

    const double edge = std::max(std::abs(result.psi.values[1]),
                                 std::abs(result.psi.values[m]));
    if (edge > kBoundaryDecay) {
        result.warnings.push_back("amplitude has not decayed at the grid edges "
                                  "(widen the domain)");
    }
    if (std::min(potential.value(grid.x_min), potential.value(grid.x_max)) < rq) {
        result.warnings.push_back("grid edges sit below the computed energy; "
                                  "the box, not the potential, confines the state");
    }
    return result;
}

Grid auto_grid(const InfoPotential& potential, int n_points) {
    const CriticalPoint cp = potential_minimum(potential);
    const Grid coarse(cp.xi - 10.0, cp.xi + 10.0, 801);
    const double energy = ground_state(potential, coarse).energy;
    const double wall = energy + 25.0;

    const double step = 0.25;
    const double span_cap = 1e5;
    auto march = [&](double direction) {
        double x = cp.xi;
        double wkb = 0.0;
        double u_prev = potential.value(x);
        while (u_prev < wall || wkb < 25.0) {
            const double x_next = x + direction * step;
            const double u_next = potential.value(x_next);
            const double mid = 0.5 * (u_prev + u_next) - energy;
            if (mid > 0.0) wkb += step * std::sqrt(2.0 * mid);
            x = x_next;
            u_prev = u_next;
            if (std::abs(x - cp.xi) > span_cap) {
                throw numeric_error(
                    "auto grid span exceeds 1e5; rescale the input moments "
                    "(x_scale)",
                    static_cast<int>(span_cap / step));
            }
        }
        return x;
    };
    const double x_hi = march(+1.0);
    const double x_lo = march(-1.0);
    return Grid(x_lo, x_hi, n_points);
}

std::vector<double> pdf_from_amplitude(const GridWavefunction& psi) {
    const double nrm = norm_integral(psi);
    if (std::abs(nrm - 1.0) > 1e-8) {
        throw contract_error("amplitude must be normalized before forming the PDF");
    }
    std::vector<double> f(psi.values.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = psi.values[i] * psi.values[i];
    return f;
}

double fisher_from_amplitude(const GridWavefunction& psi,
                             std::vector<std::string>* warnings) {
    if (warnings) {
        const std::size_t n = psi.values.size();
        const double edge =
            std::max({std::abs(psi.values[0]), std::abs(psi.values[1]),
                      std::abs(psi.values[n - 2]), std::abs(psi.values[n - 1])});
        if (edge > kBoundaryDecay) {
            warnings->push_back("amplitude leaks at the grid boundary; the "
                                "Fisher integral may be truncated");
        }
    }
    return 4.0 * kernels::gradient_squared(psi.values, psi.grid.spacing());
}

MomentSet moments_from_amplitude(const GridWavefunction& psi,
                                 const std::vector<int>& orders) {
    std::vector<int> sorted = orders;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<MomentEntry> entries;
    entries.reserve(sorted.size());
    for (int k : sorted) {
        entries.push_back({k, kernels::moment(psi.values, psi.grid.x_min,
                                              psi.grid.spacing(), k)});
    }
    return MomentSet(std::move(entries));
}

VirialCheck virial_residual(const GridWavefunction& psi,
                            const InfoPotential& potential) {
    VirialCheck vc;
    vc.lhs = kernels::gradient_squared(psi.values, psi.grid.spacing());
    vc.rhs = kernels::poly_expectation(psi.values, psi.grid.x_min,
                                       psi.grid.spacing(),
                                       potential.virial_weight_coeffs());
    vc.residual = vc.lhs - vc.rhs;
    return vc;
}

double approx_quality(const GridWavefunction& psi, const InfoPotential& potential) {
    const VirialCheck vc = virial_residual(psi, potential);
    return std::abs(4.0 * vc.lhs - 4.0 * vc.rhs);
}

ConsistencyReport self_consistency(const MomentSet& moments,
                                   const ReferenceConstants& constants,
                                   std::optional<Grid> grid,
                                   const SolverOptions& options) {
    const ClosedFormSolution closed = solve_closed_form(moments, constants);
    const InfoPotential potential = build_potential(closed.lambdas);

    ConsistencyReport rep;
    rep.warnings = closed.warnings;
    rep.fisher_closed = closed.fisher;
    rep.lambdas = closed.lambdas;
    rep.grid = grid ? *grid : auto_grid(potential);

    const EigenResult eig = ground_state(potential, rep.grid, options);
    rep.warnings.insert(rep.warnings.end(), eig.warnings.begin(),
                        eig.warnings.end());
    rep.energy = eig.energy;
    rep.alpha_check = eig.implied_alpha;
    rep.fisher_amplitude = fisher_from_amplitude(eig.psi, &rep.warnings);

    std::vector<int> orders;
    for (const auto& e : closed.moments.entries()) orders.push_back(e.order);
    for (const auto& [k, lam] : closed.lambdas) {
        if (std::find(orders.begin(), orders.end(), k) == orders.end()) {
            orders.push_back(k);
        }
    }
    const MomentSet measured = moments_from_amplitude(eig.psi, orders);

    rep.input_moments = closed.moments.as_map();
    rep.recovered_moments = measured.as_map();
    for (const auto& [k, v] : rep.input_moments) {
        rep.moment_deltas[k] = rep.recovered_moments.at(k) - v;
    }

    rep.fisher_constraint =
        fisher_from_constraints(eig.implied_alpha, closed.lambdas, measured);
    rep.fisher_virial = fisher_virial_form(closed.lambdas, measured);
    rep.virial = virial_residual(eig.psi, potential);
    return rep;
}

} // namespace fimin

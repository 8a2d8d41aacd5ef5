#include "fimin/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fimin/errors.hpp"
#include "fimin/kernels.hpp"

namespace fimin {

InfoPotential::InfoPotential(std::map<int, double> lambdas) {
    for (const auto& [k, lam] : lambdas) {
        if (k < 1) {
            throw contract_error("potential multipliers require order >= 1");
        }
        if (!std::isfinite(lam)) {
            throw domain_error("multiplier for order " + std::to_string(k) +
                               " is not finite");
        }
        if (lam != 0.0) {
            lambdas_[k] = lam;
            degree_ = std::max(degree_, k);
        }
    }
    if (lambdas_.empty()) {
        throw contract_error("potential requires at least one nonzero multiplier");
    }
}

double InfoPotential::value(double x) const {
    double s = 0.0;
    for (const auto& [k, lam] : lambdas_) {
        s += lam * kernels::pow_int(x, k);
    }
    return -s / 8.0;
}

double InfoPotential::derivative(double x) const {
    double s = 0.0;
    for (const auto& [k, lam] : lambdas_) {
        s += lam * k * kernels::pow_int(x, k - 1);
    }
    return -s / 8.0;
}

double InfoPotential::second_derivative(double x) const {
    return derivative_of_order(x, 2);
}

double InfoPotential::derivative_of_order(double x, int k) const {
    if (k < 0) throw contract_error("derivative order must be >= 0");
    if (k == 0) return value(x);
    double s = 0.0;
    for (const auto& [j, lam] : lambdas_) {
        if (j < k) continue;
        double falling = 1.0;
        for (int m = 0; m < k; ++m) falling *= static_cast<double>(j - m);
        s += lam * falling * kernels::pow_int(x, j - k);
    }
    return -s / 8.0;
}

bool InfoPotential::confining() const {
    return degree_ % 2 == 0 && lambdas_.at(degree_) < 0.0;
}

std::vector<double> InfoPotential::poly_coeffs() const {
    std::vector<double> c(static_cast<std::size_t>(degree_) + 1, 0.0);
    for (const auto& [k, lam] : lambdas_) {
        c[static_cast<std::size_t>(k)] = -lam / 8.0;
    }
    return c;
}

std::vector<double> InfoPotential::virial_weight_coeffs() const {
    std::vector<double> c(static_cast<std::size_t>(degree_) + 1, 0.0);
    for (const auto& [k, lam] : lambdas_) {
        c[static_cast<std::size_t>(k)] = -static_cast<double>(k) * lam / 8.0;
    }
    return c;
}

InfoPotential build_potential(const std::map<int, double>& lambdas) {
    return InfoPotential(lambdas);
}

namespace {

double bisect_derivative_root(const InfoPotential& u, double lo, double hi) {
    double flo = u.derivative(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = u.derivative(mid);
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    // Newton polish from the bisected root.
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double d1 = u.derivative(r);
        const double d2 = u.second_derivative(r);
        if (d2 == 0.0) break;
        const double next = r - d1 / d2;
        if (!(next > lo - (hi - lo) && next < hi + (hi - lo))) break;
        if (std::abs(u.derivative(next)) >= std::abs(d1)) break;
        r = next;
    }
    return r;
}

} // namespace

CriticalPoint potential_minimum(const InfoPotential& potential) {
    if (!potential.confining()) {
        throw domain_error("potential is unbounded below (leading order " +
                           std::to_string(potential.degree()) +
                           "): no global minimum exists");
    }
    const auto& lam = potential.lambdas();
    const int deg = potential.degree();

    CriticalPoint cp;
    if (deg == 2) {
        // U = -(1/8)(lambda_1 x + lambda_2 x^2): minimum at -lambda_1/(2 lambda_2).
        const double l1 = lam.count(1) ? lam.at(1) : 0.0;
        cp.xi = -l1 / (2.0 * lam.at(2));
        cp.u_min = potential.value(cp.xi);
        return cp;
    }

    // Cauchy root bound for U': all real critical points lie in [-R, R].
    std::vector<double> dc(static_cast<std::size_t>(deg), 0.0);
    for (const auto& [k, l] : lam) {
        dc[static_cast<std::size_t>(k - 1)] = -static_cast<double>(k) * l / 8.0;
    }
    const double lead = dc.back();
    double maxratio = 0.0;
    for (std::size_t j = 0; j + 1 < dc.size(); ++j) {
        maxratio = std::max(maxratio, std::abs(dc[j] / lead));
    }
    const double R = 1.0 + maxratio;

    const int cells = std::max(4096, 512 * deg);
    double best_xi = 0.0;
    double best_u = std::numeric_limits<double>::infinity();
    double xprev = -R;
    double fprev = potential.derivative(xprev);
    for (int i = 1; i <= cells; ++i) {
        const double x = -R + 2.0 * R * static_cast<double>(i) / cells;
        const double f = potential.derivative(x);
        if (fprev == 0.0 || (fprev < 0.0) != (f < 0.0)) {
            const double root = fprev == 0.0 ? xprev : bisect_derivative_root(potential, xprev, x);
            const double uval = potential.value(root);
            if (uval < best_u || (uval == best_u && std::abs(root) < std::abs(best_xi))) {
                best_u = uval;
                best_xi = root;
            }
        }
        xprev = x;
        fprev = f;
    }
    if (!std::isfinite(best_u)) {
        throw numeric_error("no critical point located inside the root bound", cells);
    }
    cp.xi = best_xi;
    cp.u_min = best_u;
    cp.is_minimum = potential.second_derivative(best_xi) >= -1e-8 * std::max(1.0, std::abs(best_u));
    return cp;
}

std::map<int, double> taylor_multipliers(const InfoPotential& potential, double xi) {
    if (!std::isfinite(xi)) {
        throw contract_error("translation point must be finite");
    }
    std::map<int, double> star;
    double factorial = 1.0;
    for (int k = 0; k <= potential.degree(); ++k) {
        if (k > 0) factorial *= k;
        star[k] = -8.0 * potential.derivative_of_order(xi, k) / factorial;
    }
    return star;
}

InfoPotential untranslate_potential(const InfoPotential& translated, double xi) {
    // Expand each lambda*_k (x - xi)^k binomially; the constant term is
    // discarded, which is exactly the U(0) = 0 normalization.
    std::map<int, double> lam;
    for (const auto& [k, star] : translated.lambdas()) {
        double binom = 1.0;
        for (int j = k; j >= 1; --j) {
            // binom holds C(k, j) built up from C(k, k) = 1.
            lam[j] += star * binom * kernels::pow_int(-xi, k - j);
            binom = binom * j / (k - j + 1);
        }
    }
    return InfoPotential(lam);
}

} // namespace fimin

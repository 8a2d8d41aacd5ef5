#include "fimin/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fimin/errors.hpp"

namespace fimin::kernels {

namespace {

// Fixed-block reduction: per-block partial sums are combined serially in
// block order, so the summation tree is independent of the thread count.
template <class Term>
double blocked_sum(std::size_t n, Term term) {
    const std::size_t nblocks = (n + block_size - 1) / block_size;
    std::vector<double> partial(nblocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * block_size;
        const std::size_t hi = std::min(n, lo + block_size);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            s += term(i);
        }
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total;
}

double horner(std::span<const double> coeffs, double x) {
    double r = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        r = r * x + coeffs[j];
    }
    return r;
}

inline double trap_weight(std::size_t i, std::size_t n) {
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

void require_min_size(std::span<const double> v, std::size_t min_n) {
    if (v.size() < min_n) {
        throw contract_error("grid kernel needs at least " + std::to_string(min_n) +
                             " samples, got " + std::to_string(v.size()));
    }
}

// Difference quotient used by both gradient kernels: central in the
// interior, one-sided at the ends.
inline double diff_at(std::span<const double> psi, std::size_t i, double h) {
    const std::size_t n = psi.size();
    if (i == 0) return (psi[1] - psi[0]) / h;
    if (i + 1 == n) return (psi[n - 1] - psi[n - 2]) / h;
    return (psi[i + 1] - psi[i - 1]) / (2.0 * h);
}

} // namespace

double pow_int(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

namespace serial {

double trapezoid(std::span<const double> f, double h) {
    require_min_size(f, 2);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        s += trap_weight(i, f.size()) * f[i];
    }
    return s * h;
}

double norm_squared(std::span<const double> psi, double h) {
    require_min_size(psi, 2);
    double s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        s += trap_weight(i, psi.size()) * psi[i] * psi[i];
    }
    return s * h;
}

double moment(std::span<const double> psi, double x0, double h, int order) {
    require_min_size(psi, 2);
    double s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double x = x0 + static_cast<double>(i) * h;
        s += trap_weight(i, psi.size()) * pow_int(x, order) * psi[i] * psi[i];
    }
    return s * h;
}

double poly_expectation(std::span<const double> psi, double x0, double h,
                        std::span<const double> coeffs) {
    require_min_size(psi, 2);
    double s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double x = x0 + static_cast<double>(i) * h;
        s += trap_weight(i, psi.size()) * horner(coeffs, x) * psi[i] * psi[i];
    }
    return s * h;
}

double gradient_squared(std::span<const double> psi, double h) {
    require_min_size(psi, 3);
    double s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double d = diff_at(psi, i, h);
        s += trap_weight(i, psi.size()) * d * d;
    }
    return s * h;
}

void fill_poly(std::span<double> out, double x0, double h,
               std::span<const double> coeffs) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = horner(coeffs, x0 + static_cast<double>(i) * h);
    }
}

} // namespace serial

double trapezoid(std::span<const double> f, double h) {
    require_min_size(f, 2);
    const std::size_t n = f.size();
    const double s = blocked_sum(n, [&](std::size_t i) { return f[i]; });
    return (s - 0.5 * (f[0] + f[n - 1])) * h;
}

double norm_squared(std::span<const double> psi, double h) {
    require_min_size(psi, 2);
    const std::size_t n = psi.size();
    const double s = blocked_sum(n, [&](std::size_t i) { return psi[i] * psi[i]; });
    return (s - 0.5 * (psi[0] * psi[0] + psi[n - 1] * psi[n - 1])) * h;
}

double moment(std::span<const double> psi, double x0, double h, int order) {
    require_min_size(psi, 2);
    const std::size_t n = psi.size();
    auto term = [&](std::size_t i) {
        const double x = x0 + static_cast<double>(i) * h;
        return pow_int(x, order) * psi[i] * psi[i];
    };
    return (blocked_sum(n, term) - 0.5 * (term(0) + term(n - 1))) * h;
}

double poly_expectation(std::span<const double> psi, double x0, double h,
                        std::span<const double> coeffs) {
    require_min_size(psi, 2);
    const std::size_t n = psi.size();
    auto term = [&](std::size_t i) {
        const double x = x0 + static_cast<double>(i) * h;
        return horner(coeffs, x) * psi[i] * psi[i];
    };
    return (blocked_sum(n, term) - 0.5 * (term(0) + term(n - 1))) * h;
}

double gradient_squared(std::span<const double> psi, double h) {
    require_min_size(psi, 3);
    const std::size_t n = psi.size();
    auto term = [&](std::size_t i) {
        const double d = diff_at(psi, i, h);
        return trap_weight(i, n) * d * d;
    };
    return blocked_sum(n, term) * h;
}

void fill_poly(std::span<double> out, double x0, double h,
               std::span<const double> coeffs) {
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            horner(coeffs, x0 + static_cast<double>(i) * h);
    }
}

} // namespace fimin::kernels

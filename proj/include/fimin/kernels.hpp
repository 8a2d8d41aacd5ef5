#pragma once

#include <cstddef>
#include <span>

namespace fimin::kernels {

// Grid reductions behind the amplitude-side diagnostics.  Every kernel
// exists twice: a plain serial reference under kernels::serial, and a
// blocked variant in this namespace that OpenMP parallelizes over
// fixed-size blocks.  The block layout does not depend on the thread
// count, so the blocked results are bit-identical for 1 thread, N
// threads, or a build without OpenMP at all.

inline constexpr std::size_t block_size = 4096;

namespace serial {

/// Trapezoidal integral of sampled values with uniform spacing h.
double trapezoid(std::span<const double> f, double h);

/// Trapezoidal integral of psi^2.
double norm_squared(std::span<const double> psi, double h);

/// Trapezoidal integral of x^order * psi^2 on the grid x_i = x0 + i*h.
double moment(std::span<const double> psi, double x0, double h, int order);

/// Trapezoidal integral of p(x) * psi^2 for a dense polynomial
/// p(x) = coeffs[0] + coeffs[1] x + ... evaluated by Horner's rule.
double poly_expectation(std::span<const double> psi, double x0, double h,
                        std::span<const double> coeffs);

/// Trapezoidal integral of (psi')^2 with central differences in the
/// interior and one-sided differences at the two endpoints.
double gradient_squared(std::span<const double> psi, double h);

/// out[i] = p(x0 + i*h).
void fill_poly(std::span<double> out, double x0, double h,
               std::span<const double> coeffs);

} // namespace serial

double trapezoid(std::span<const double> f, double h);
double norm_squared(std::span<const double> psi, double h);
double moment(std::span<const double> psi, double x0, double h, int order);
double poly_expectation(std::span<const double> psi, double x0, double h,
                        std::span<const double> coeffs);
double gradient_squared(std::span<const double> psi, double h);
void fill_poly(std::span<double> out, double x0, double h,
               std::span<const double> coeffs);

/// x^k by repeated multiplication, k >= 0.
double pow_int(double x, int k);

} // namespace fimin::kernels

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "pfhg/errors.hpp"
#include "pfhg/scalar.hpp"

namespace pfhg {

inline bool near_nonpositive_integer(const Complex& z, double tol = 1e-12) {
    return scalar_traits<Complex>::is_nonpositive_integer(z, tol);
}

/// log Gamma for complex argument, Lanczos approximation (g = 7, 9 terms),
/// with the reflection formula for Re z < 1/2. Accurate to ~1e-13 relative.
inline Complex log_gamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw GammaPole("log_gamma at non-positive integer");
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    Complex x = coef[0];
    for (int k = 1; k < 9; ++k) x += coef[k] / (z + Complex(double(k), 0.0));
    Complex t = z + g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline Complex gamma_fn(const Complex& z) { return std::exp(log_gamma(z)); }

/// Beta(a, b) for real positive arguments.
inline double beta_fn(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace pfhg

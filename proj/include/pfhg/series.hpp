#pragma once

#include <cmath>
#include <vector>

#include "pfhg/errors.hpp"
#include "pfhg/gamma.hpp"
#include "pfhg/params.hpp"
#include "pfhg/scalar.hpp"

namespace pfhg {

struct SeriesValue {
    Complex value{};
    int truncation_order = 0;
    double tail_bound = 0.0;  // heuristic bound on the dropped tail
};

inline Complex pochhammer(Complex a, int n) {
    Complex r(1.0, 0.0);
    for (int k = 0; k < n; ++k) r *= a + Complex(double(k), 0.0);
    return r;
}

/// Sum of the defining power series over total degree |m| <= order.
///
/// The factors depending only on |m| are advanced by one shell at a time; the
/// per-variable beta part is folded into shell coefficients c_s with
/// sum_{|m|=s} prod_i (beta_i)_{m_i} x_i^{m_i} / m_i! = [t^s] prod_i (1-x_i t)^{-beta_i},
/// computed from the log-derivative recurrence. No Gamma evaluations per term.
inline SeriesValue eval_series(const ParameterSet<Complex>& p,
                               const std::vector<Complex>& x, int order) {
    if (x.size() != size_t(p.N))
        throw DimensionMismatch("eval_series: x must have N entries");
    double xmax = 0.0;
    for (const Complex& xi : x) xmax = std::max(xmax, std::abs(xi));
    // Margin keeps the geometric tail heuristic meaningful; larger |x| goes
    // through analytic continuation instead.
    if (xmax > 0.95)
        throw OutsidePolydisc("eval_series: max |x_i| must be <= 0.95");

    const int S = std::max(order, 0);
    // Power sums P_j = sum_i beta_i x_i^j.
    std::vector<Complex> psum(size_t(S) + 1, Complex(0.0));
    std::vector<Complex> xpow(x.size(), Complex(1.0));
    for (int j = 1; j <= S; ++j) {
        Complex s(0.0);
        for (size_t i = 0; i < x.size(); ++i) {
            xpow[i] *= x[i];
            s += p.beta[i] * xpow[i];
        }
        psum[size_t(j)] = s;
    }

    std::vector<Complex> c(size_t(S) + 1, Complex(0.0));
    c[0] = Complex(1.0);
    for (int s = 0; s < S; ++s) {
        Complex acc(0.0);
        for (int r = 0; r <= s; ++r) acc += c[size_t(r)] * psum[size_t(s + 1 - r)];
        c[size_t(s + 1)] = acc / Complex(double(s + 1));
    }

    Complex ratio_num(1.0), value(0.0);
    double shell_mag[3] = {0.0, 0.0, 0.0};
    int grow_streak = 0;
    double prev_mag = 0.0;
    for (int s = 0; s <= S; ++s) {
        Complex term = ratio_num * c[size_t(s)];
        value += term;
        double mag = std::abs(term);
        shell_mag[s % 3] = mag;
        if (s > S / 2) {
            if (mag > prev_mag && mag > 0.0)
                ++grow_streak;
            else
                grow_streak = 0;
        }
        prev_mag = mag;
        if (s < S) {
            Complex f(1.0);
            for (int k = 1; k <= p.L - 1; ++k)
                f *= (p.alpha_(k) + Complex(double(s))) /
                     (p.gamma_(k) + Complex(double(s)));
            ratio_num *= f;
        }
    }

    double tail = std::max({shell_mag[0], shell_mag[1], shell_mag[2]});
    if (xmax < 1.0) tail /= (1.0 - xmax);
    if (!std::isfinite(tail) || grow_streak > 10)
        throw NonConvergent("eval_series: shell magnitudes fail to shrink");
    return SeriesValue{value, S, tail};
}

/// Increases the truncation order until the heuristic tail is below
/// reltol * |value|.
inline SeriesValue eval_series_to_tol(const ParameterSet<Complex>& p,
                                      const std::vector<Complex>& x,
                                      double reltol = 1e-13,
                                      int max_order = 4096) {
    int order = 48;
    SeriesValue sv;
    for (;;) {
        sv = eval_series(p, x, order);
        double scale = std::max(std::abs(sv.value), 1e-30);
        if (sv.tail_bound <= reltol * scale || order >= max_order) return sv;
        order *= 2;
    }
}

/// Normalizing constant c = prod_k Gamma(alpha_k) Gamma(gamma_k - alpha_k) / Gamma(gamma_k).
inline Complex holomorphic_normalization(const ParameterSet<Complex>& p) {
    Complex lg(0.0);
    for (int k = 1; k <= p.L - 1; ++k) {
        lg += log_gamma(p.alpha_(k));
        lg += log_gamma(p.gamma_(k) - p.alpha_(k));
        lg -= log_gamma(p.gamma_(k));
    }
    return std::exp(lg);
}

namespace detail {

inline ParameterSet<Complex> shifted_for_component(const ParameterSet<Complex>& p,
                                                   int i, int n) {
    std::vector<Complex> alpha = p.alpha, beta = p.beta, gamma = p.gamma;
    for (int k = 1; k <= n - 1; ++k) alpha[size_t(k - 1)] += 1.0;
    beta[size_t(i - 1)] += 1.0;
    for (int k = 1; k <= n; ++k) gamma[size_t(k - 1)] += 1.0;
    return validate_parameters(p.L, p.N, std::move(alpha), std::move(beta),
                               std::move(gamma));
}

}  // namespace detail

/// The solution vector holomorphic at x = 0, components ordered
/// (y_0, y_1^{(1)}, .., y_{L-1}^{(1)}, .., y_{L-1}^{(N)}):
///   y_0 = c F, and
///   y_n^{(i)} = alpha_1..alpha_{n-1} (alpha_n - gamma_n) / (gamma_1..gamma_n)
///               * c F(alpha_1+1,..,alpha_{n-1}+1, beta_i+1, gamma_1+1,..,gamma_n+1).
inline Vector<Complex> holomorphic_solution_vector(const ParameterSet<Complex>& p,
                                                   const std::vector<Complex>& x,
                                                   int order) {
    const BlockIndex idx = p.blocks();
    Vector<Complex> y(idx.size());
    const Complex c = holomorphic_normalization(p);
    y(0) = c * eval_series(p, x, order).value;
    for (int i = 1; i <= p.N; ++i) {
        for (int n = 1; n <= p.L - 1; ++n) {
            Complex pref(1.0);
            for (int k = 1; k <= n - 1; ++k) pref *= p.alpha_(k);
            pref *= p.alpha_(n) - p.gamma_(n);
            for (int k = 1; k <= n; ++k) pref /= p.gamma_(k);
            auto shifted = detail::shifted_for_component(p, i, n);
            y(idx.of(i, n)) = pref * c * eval_series(shifted, x, order).value;
        }
    }
    return y;
}

inline Vector<Complex> holomorphic_solution_vector_to_tol(
    const ParameterSet<Complex>& p, const std::vector<Complex>& x,
    double reltol = 1e-13) {
    int order = eval_series_to_tol(p, x, reltol).truncation_order;
    return holomorphic_solution_vector(p, x, order);
}

}  // namespace pfhg

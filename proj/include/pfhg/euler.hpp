#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pfhg/errors.hpp"
#include "pfhg/params.hpp"
#include "pfhg/quadrature.hpp"
#include "pfhg/scalar.hpp"
#include "pfhg/series.hpp"

namespace pfhg {

// ---------------------------------------------------------------------------
// Symbolic integrand machinery.
//
// Integrands are products of powers of linear forms in the homogeneous
// variables tau_0..tau_{L-1} (after dehomogenization tau_0 = 1 the slot-0
// coefficient is the constant term), times the standard (L-1)-form. The
// cyclic substitution tau_k -> tau_{k+1}, tau_{L-1} -> tau_0/x_j acts
// linearly on the coefficient vectors, so the images over the unit simplex
// stay in this class. Coefficients carry an explicit power of the
// deformation variable x_j while it is unmixed; the clean powers pulled out
// of monomial factors accumulate into the leading x_j exponent of the column.
// ---------------------------------------------------------------------------

namespace detail {
inline Complex cpow(double base, const Complex& e);
}

/// val * xj^xpow; the power is folded into val once coefficients mix.
struct XCoeff {
    double val = 0.0;
    int xpow = 0;
};

struct IntegrandFactor {
    std::vector<XCoeff> coeff;  // size L, slot 0 = tau_0 (const after dehom)
    Complex expo{};
};

struct SymbolicIntegrand {
    int L = 0;
    double xj = 1.0;            // value of the pulled variable (1 if none)
    Complex prefactor{1.0, 0.0};
    Complex xj_exponent{0.0, 0.0};
    std::vector<IntegrandFactor> factors;
};

/// Euler integrand pulled back to the unit cube: tensor Jacobi weights
/// prod_k s_k^{p_k} (1-s_k)^{q_k} times a smooth factor that is a product of
/// powers of (c0 + c1 * s_lo...s_hi) with constant sign on the open cube.
struct SmoothFactor {
    double c0 = 0.0, c1 = 0.0;
    int lo = 0, hi = 0;  // 1-based axis range of the monomial
    Complex expo{};
};

struct IntegrandSpec {
    int dim = 0;
    std::vector<double> jacobi_p, jacobi_q;  // per axis, 1-based stored 0-based
    Complex prefactor{1.0, 0.0};             // excludes the x_j power
    Complex xj_exponent{0.0, 0.0};
    double xj = 1.0;
    std::vector<SmoothFactor> smooth;

    Complex eval_smooth(const std::vector<double>& s) const {
        Complex v(1.0, 0.0);
        for (const auto& f : smooth) {
            double mon = 1.0;
            for (int k = f.lo; k <= f.hi; ++k) mon *= s[size_t(k - 1)];
            v *= detail::cpow(f.c0 + f.c1 * mon, f.expo);
        }
        return v;
    }
    Complex full_prefactor() const {
        return prefactor * std::pow(Complex(xj, 0.0), xj_exponent);
    }
};

/// Pre-cube form of the integrand on the simplex chart, used by tests to
/// validate the pullback algebra against raw parametrized integrals.
struct ChartIntegrand {
    int dim = 0;
    Complex prefactor{1.0, 0.0};  // x_j power folded in
    std::vector<std::pair<Eigen::VectorXd, Complex>> factors;

    Complex eval(const Eigen::VectorXd& t) const {
        Complex v = prefactor;
        for (const auto& [c, e] : factors) {
            double base = c(0);
            for (int k = 1; k <= dim; ++k) base += c(k) * t(k - 1);
            v *= detail::cpow(base, e);
        }
        return v;
    }
};

namespace detail {

inline Complex cpow(double base, const Complex& e) {
    if (e.imag() == 0.0) {
        double er = e.real();
        // integer powers keep exact signs; positive bases stay real
        if (er == std::round(er) && std::abs(er) <= 64.0)
            return Complex(std::pow(base, er), 0.0);
        if (base > 0.0) return Complex(std::pow(base, er), 0.0);
    }
    return std::pow(Complex(base, 0.0), e);
}

inline void add_factor(SymbolicIntegrand& g, std::vector<std::pair<int, double>> terms,
                       Complex expo) {
    IntegrandFactor f;
    f.coeff.assign(size_t(g.L), XCoeff{});
    for (auto [slot, v] : terms) f.coeff[size_t(slot)] = XCoeff{v, 0};
    f.expo = expo;
    g.factors.push_back(std::move(f));
}

/// V(tau) * psi form for row (i, m); (i, m) = (0, 0) selects the plain form.
inline SymbolicIntegrand master_integrand(const ParameterSet<Complex>& p,
                                          const DerivedSymbols<Complex>& sym,
                                          int i, int m,
                                          const std::vector<double>& x) {
    const int L = p.L, N = p.N;
    SymbolicIntegrand g;
    g.L = L;
    add_factor(g, {{0, 1.0}}, sym.zeta_(0));
    for (int k = 1; k <= L - 1; ++k) {
        add_factor(g, {{k, 1.0}}, sym.zeta_(k));
        add_factor(g, {{k - 1, 1.0}, {k, -1.0}}, sym.eta_(k));
    }
    for (int l = 1; l <= N; ++l)
        add_factor(g, {{0, 1.0}, {L - 1, -x[size_t(l - 1)]}}, sym.theta_(l));
    if (m == 0) {
        for (int k = 1; k <= L - 1; ++k)
            add_factor(g, {{k - 1, 1.0}, {k, -1.0}}, Complex(-1.0));
    } else {
        add_factor(g, {{L - 1, x[size_t(i - 1)]}, {0, -1.0}}, Complex(-1.0));
        for (int k = 1; k <= L - 1; ++k)
            if (k != m) add_factor(g, {{k - 1, 1.0}, {k, -1.0}}, Complex(-1.0));
    }
    return g;
}

/// One application of the inverse cyclic substitution for variable j:
/// tau_k -> tau_{k-1} (k >= 1), tau_0 -> x_j tau_{L-1}; the volume form
/// picks up (-1)^{L-1} x_j.
inline void apply_inverse_cycle(SymbolicIntegrand& g) {
    const int L = g.L;
    for (auto& f : g.factors) {
        std::vector<XCoeff> next(size_t(L), XCoeff{});
        for (int k = 1; k < L; ++k) next[size_t(k - 1)] = f.coeff[size_t(k)];
        if (f.coeff[0].val != 0.0)
            next[size_t(L - 1)] = XCoeff{f.coeff[0].val, f.coeff[0].xpow + 1};
        f.coeff = std::move(next);
    }
    if ((L - 1) % 2 != 0) g.prefactor = -g.prefactor;
    g.xj_exponent += 1.0;
}

/// Pulls the clean common x_j powers out of each factor and folds any
/// remaining mixed coefficients to plain doubles.
inline void normalize_powers(SymbolicIntegrand& g) {
    for (auto& f : g.factors) {
        int mn = 0;
        bool first = true;
        for (const auto& c : f.coeff) {
            if (c.val == 0.0) continue;
            mn = first ? c.xpow : std::min(mn, c.xpow);
            first = false;
        }
        if (!first && mn > 0) g.xj_exponent += f.expo * double(mn);
        for (auto& c : f.coeff) {
            if (c.val == 0.0) continue;
            c.val *= std::pow(g.xj, c.xpow - mn);
            c.xpow = 0;
        }
    }
}

}  // namespace detail

/// Cube reduction of a (dehomogenized) symbolic integrand via
/// t_k = s_1 s_2 ... s_k. Separates Jacobi weight exponents per axis,
/// constant-sign smooth factors, and the scalar/phase prefactor.
inline IntegrandSpec cube_from_symbolic(SymbolicIntegrand g) {
    detail::normalize_powers(g);
    const int L = g.L, dim = L - 1;
    IntegrandSpec spec;
    spec.dim = dim;
    spec.xj = g.xj;
    spec.xj_exponent = g.xj_exponent;
    spec.prefactor = g.prefactor;
    std::vector<Complex> p(size_t(dim), Complex(0.0)), q(size_t(dim), Complex(0.0));

    for (const auto& f : g.factors) {
        std::vector<int> support;
        for (int k = 0; k < L; ++k)
            if (f.coeff[size_t(k)].val != 0.0) support.push_back(k);
        if (support.empty())
            throw InadmissibleChamber("integrand factor vanished identically");
        if (support.size() > 2)
            throw InadmissibleChamber("unexpected non-binomial integrand factor");

        const int a = support[0];
        const double ca = f.coeff[size_t(a)].val;
        if (support.size() == 1) {
            // c * t_a to a power: scalar part plus s_1..s_a weight
            spec.prefactor *= detail::cpow(ca, f.expo);
            for (int k = 1; k <= a; ++k) p[size_t(k - 1)] += f.expo;
            continue;
        }
        const int b = support[1];
        const double cb = f.coeff[size_t(b)].val;
        for (int k = 1; k <= a; ++k) p[size_t(k - 1)] += f.expo;
        // remaining factor (ca + cb * s_{a+1}..s_b)
        if (b == a + 1 && std::abs(ca + cb) <= 1e-14 * (std::abs(ca) + std::abs(cb))) {
            spec.prefactor *= detail::cpow(ca, f.expo);
            q[size_t(b - 1)] += f.expo;
            continue;
        }
        double at0 = ca, at1 = ca + cb;
        if (at0 == 0.0 || at1 == 0.0 || (at0 > 0.0) != (at1 > 0.0))
            throw InadmissibleChamber(
                "integrand factor changes sign on the cube (chamber ordering)");
        SmoothFactor sf{ca, cb, a + 1, b, f.expo};
        if (at0 < 0.0) {
            spec.prefactor *= detail::cpow(-1.0, f.expo);
            sf.c0 = -sf.c0;
            sf.c1 = -sf.c1;
        }
        spec.smooth.push_back(sf);
    }

    spec.jacobi_p.resize(size_t(dim));
    spec.jacobi_q.resize(size_t(dim));
    for (int k = 0; k < dim; ++k) {
        if (std::abs(p[size_t(k)].imag()) > 1e-9 || std::abs(q[size_t(k)].imag()) > 1e-9)
            throw InadmissibleChamber("complex cube exponent outside the real chamber");
        spec.jacobi_p[size_t(k)] = p[size_t(k)].real();
        spec.jacobi_q[size_t(k)] = q[size_t(k)].real();
        if (spec.jacobi_p[size_t(k)] <= -1.0)
            throw NonIntegrableExponent(k + 1, "s-exponent " +
                                                   std::to_string(spec.jacobi_p[size_t(k)]));
        if (spec.jacobi_q[size_t(k)] <= -1.0)
            throw NonIntegrableExponent(k + 1, "(1-s)-exponent " +
                                                   std::to_string(spec.jacobi_q[size_t(k)]));
    }
    return spec;
}

inline ChartIntegrand chart_from_symbolic(SymbolicIntegrand g) {
    detail::normalize_powers(g);
    ChartIntegrand ch;
    ch.dim = g.L - 1;
    ch.prefactor = g.prefactor * detail::cpow(g.xj, g.xj_exponent);
    for (const auto& f : g.factors) {
        Eigen::VectorXd c(g.L);
        for (int k = 0; k < g.L; ++k) c(k) = f.coeff[size_t(k)].val;
        ch.factors.emplace_back(c, f.expo);
    }
    return ch;
}

namespace detail {

inline void require_chamber(const ParameterSet<Complex>& p,
                            const std::vector<double>& x) {
    if (x.size() != size_t(p.N))
        throw DimensionMismatch("x must have N entries");
    for (double xi : x)
        if (!(xi > 0.0 && xi < 1.0))
            throw InadmissibleChamber("validation chamber needs 0 < x_i < 1");
}

inline SymbolicIntegrand pulled_master(const ParameterSet<Complex>& p, int j,
                                       int n, int i, int m,
                                       const std::vector<double>& x) {
    auto sym = derive_symbols(p);
    SymbolicIntegrand g = master_integrand(p, sym, i, m, x);
    if (n > 0) {
        g.xj = x.at(size_t(j - 1));
        for (int r = 0; r < n; ++r) apply_inverse_cycle(g);
    }
    return g;
}

}  // namespace detail

/// Unit-cube reduction of the plain Euler integrand over the simplex for the
/// row form (i, m); (0, 0) gives the form paired with the series.
inline IntegrandSpec simplex_to_cube(const ParameterSet<Complex>& p, int i, int m,
                                     const std::vector<double>& x) {
    detail::require_chamber(p, x);
    return cube_from_symbolic(detail::pulled_master(p, 0, 0, i, m, x));
}

/// Integrand of the column over the n-th cyclic image of the simplex for the
/// pulled variable j, row form (i, m), rewritten as an integral over the
/// simplex itself. Requires x_j strictly below every other coordinate; the
/// x_j power that controls the local behavior is reported separately in the
/// returned spec.
inline IntegrandSpec pullback_cyclic(const ParameterSet<Complex>& p, int j, int n,
                                     int i, int m, const std::vector<double>& x) {
    detail::require_chamber(p, x);
    for (int l = 1; l <= p.N; ++l)
        if (l != j && x[size_t(l - 1)] <= x[size_t(j - 1)])
            throw InadmissibleChamber("pullback needs x_j < x_i for all i != j");
    return cube_from_symbolic(detail::pulled_master(p, j, n, i, m, x));
}

/// Pre-cube variant for change-of-variables validation.
inline ChartIntegrand pullback_chart(const ParameterSet<Complex>& p, int j, int n,
                                     int i, int m, const std::vector<double>& x) {
    detail::require_chamber(p, x);
    return chart_from_symbolic(detail::pulled_master(p, j, n, i, m, x));
}

struct QuadResult {
    Complex value{};
    double error = 0.0;  // node-doubling estimate
};

/// Tensorized Gauss-Jacobi quadrature of the spec; the error estimate comes
/// from doubling the per-axis node count.
inline QuadResult quadrature(const IntegrandSpec& spec, int nodes_per_axis,
                             double fail_tol = -1.0) {
    auto run = [&spec](int n) {
        std::vector<const QuadratureRule*> rules;
        for (int k = 0; k < spec.dim; ++k)
            rules.push_back(&gauss_jacobi_01(spec.jacobi_p[size_t(k)],
                                             spec.jacobi_q[size_t(k)], n));
        std::vector<size_t> odo(size_t(spec.dim), 0);
        std::vector<double> s(size_t(spec.dim), 0.0);
        Complex acc(0.0);
        for (;;) {
            double w = 1.0;
            for (int k = 0; k < spec.dim; ++k) {
                s[size_t(k)] = rules[size_t(k)]->nodes[odo[size_t(k)]];
                w *= rules[size_t(k)]->weights[odo[size_t(k)]];
            }
            acc += w * spec.eval_smooth(s);
            int pos = 0;
            while (pos < spec.dim && ++odo[size_t(pos)] >= size_t(n))
                odo[size_t(pos++)] = 0;
            if (pos == spec.dim) break;
        }
        return acc * spec.full_prefactor();
    };
    Complex coarse = run(nodes_per_axis);
    Complex fine = run(2 * nodes_per_axis);
    double err = std::abs(fine - coarse);
    if (fail_tol > 0.0 && err > fail_tol * std::max(1.0, std::abs(fine)))
        throw QuadratureNotConverged("node doubling changed the result by " +
                                     std::to_string(err));
    return QuadResult{fine, err};
}

// ---------------------------------------------------------------------------
// Fundamental systems from Euler integrals.
// ---------------------------------------------------------------------------

struct FundamentalSystem {
    std::vector<double> x;
    Matrix<Complex> Y;
    std::vector<std::string> column_labels;
    int nodes = 0;
    double max_quad_error = 0.0;
};

/// Column of integrals over the simplex itself (the holomorphic solution).
inline Vector<Complex> euler_column_base(const ParameterSet<Complex>& p,
                                         const std::vector<double>& x, int nodes,
                                         double* max_err = nullptr) {
    const BlockIndex idx = p.blocks();
    Vector<Complex> col(idx.size());
    auto q0 = quadrature(simplex_to_cube(p, 0, 0, x), nodes);
    col(0) = q0.value;
    double err = q0.error;
    for (int i = 1; i <= p.N; ++i)
        for (int m = 1; m <= p.L - 1; ++m) {
            auto qr = quadrature(simplex_to_cube(p, i, m, x), nodes);
            col(idx.of(i, m)) = qr.value;
            err = std::max(err, qr.error);
        }
    if (max_err) *max_err = std::max(*max_err, err);
    return col;
}

/// Column of integrals over the n-th cyclic image for variable j.
inline Vector<Complex> euler_column_cyclic(const ParameterSet<Complex>& p, int j,
                                           int n, const std::vector<double>& x,
                                           int nodes, double* max_err = nullptr) {
    const BlockIndex idx = p.blocks();
    Vector<Complex> col(idx.size());
    auto q0 = quadrature(pullback_cyclic(p, j, n, 0, 0, x), nodes);
    col(0) = q0.value;
    double err = q0.error;
    for (int i = 1; i <= p.N; ++i)
        for (int m = 1; m <= p.L - 1; ++m) {
            auto qr = quadrature(pullback_cyclic(p, j, n, i, m, x), nodes);
            col(idx.of(i, m)) = qr.value;
            err = std::max(err, qr.error);
        }
    if (max_err) *max_err = std::max(*max_err, err);
    return col;
}

namespace detail {

/// Entry of the all-shifted-parameter representation: integrand of
/// U_n phi_{m-n} over the simplex, built directly on the chart.
inline SymbolicIntegrand thomae_rep1_entry(const ParameterSet<Complex>& p, int m,
                                           int n, double x) {
    const int L = p.L;
    SymbolicIntegrand g;
    g.L = L;
    g.xj = x;
    // U_n with extended parameter indices; all bases positive on the chart.
    for (int k = 1; k <= L - 1; ++k) {
        Complex ze = detail::alpha_extended(p, k + n) - detail::gamma_extended(p, k + n + 1);
        Complex et = detail::gamma_extended(p, k + n) - detail::alpha_extended(p, k + n);
        add_factor(g, {{k, 1.0}}, ze);
        add_factor(g, {{k - 1, 1.0}, {k, -1.0}}, et);
    }
    {
        Complex et0 = detail::gamma_extended(p, n) - detail::alpha_extended(p, n);
        add_factor(g, {{0, 1.0}, {L - 1, -x}}, et0);
    }
    int mm = m - n;
    while (mm < 0) {
        mm += L;
        g.xj_exponent += 1.0;  // phi_{k} = x phi_{k+L}
    }
    if (mm == 0) {
        for (int k = 1; k <= L - 1; ++k)
            add_factor(g, {{k - 1, 1.0}, {k, -1.0}}, Complex(-1.0));
    } else {
        add_factor(g, {{L - 1, x}, {0, -1.0}}, Complex(-1.0));
        for (int k = 1; k <= L - 1; ++k)
            if (k != mm) add_factor(g, {{k - 1, 1.0}, {k, -1.0}}, Complex(-1.0));
    }
    return g;
}

}  // namespace detail

/// One-variable fundamental systems. rep = 1 integrates shifted-parameter
/// integrands over the simplex only and post-multiplies the diagonal
/// x^{-gamma_n}; rep = 2 uses the cyclic image domains. The two agree up to
/// a constant diagonal factor.
inline FundamentalSystem fundamental_system_thomae(const ParameterSet<Complex>& p,
                                                   double x, int nodes, int rep) {
    if (p.N != 1) throw NotThomaeCase();
    if (!(x > 0.0 && x < 1.0))
        throw InadmissibleChamber("thomae systems need 0 < x < 1");
    const int L = p.L;
    FundamentalSystem fs;
    fs.x = {x};
    fs.nodes = nodes;
    fs.Y. resize(L, L);
    for (int n = 0; n <= L - 1; ++n) {
        if (rep == 1) {
            for (int m = 0; m <= L - 1; ++m) {
                auto spec = cube_from_symbolic(detail::thomae_rep1_entry(p, m, n, x));
                auto qr = quadrature(spec, nodes);
                // column scaling x^{-gamma_n} with gamma_0 = 0
                Complex scale = n == 0 ? Complex(1.0)
                                       : std::pow(Complex(x, 0.0), -p.gamma_(n));
                fs.Y(m, n) = qr.value * scale;
                fs.max_quad_error = std::max(fs.max_quad_error, qr.error);
            }
            fs.column_labels.push_back("shifted-parameters n=" + std::to_string(n));
        } else {
            Vector<Complex> col =
                n == 0 ? euler_column_base(p, fs.x, nodes, &fs.max_quad_error)
                       : euler_column_cyclic(p, 1, n, fs.x, nodes, &fs.max_quad_error);
            fs.Y.col(n) = col;
            fs.column_labels.push_back("cyclic-domain n=" + std::to_string(n));
        }
    }
    return fs;
}

}  // namespace pfhg

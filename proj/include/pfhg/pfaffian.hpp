#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pfhg/charpoly.hpp"
#include "pfhg/errors.hpp"
#include "pfhg/params.hpp"
#include "pfhg/scalar.hpp"

namespace pfhg {

struct DivisorId {
    enum class Kind { at_zero, at_one, at_infinity, diagonal };
    Kind kind = Kind::at_zero;
    int i = 0, j = 0;  // diagonal uses i < j

    static DivisorId zero(int i) { return {Kind::at_zero, i, 0}; }
    static DivisorId one(int i) { return {Kind::at_one, i, 0}; }
    static DivisorId infinity(int i) { return {Kind::at_infinity, i, 0}; }
    static DivisorId diag(int i, int j) {
        if (i > j) std::swap(i, j);
        return {Kind::diagonal, i, j};
    }
    std::string str() const {
        switch (kind) {
            case Kind::at_zero: return "x_" + std::to_string(i) + "=0";
            case Kind::at_one: return "x_" + std::to_string(i) + "=1";
            case Kind::at_infinity: return "x_" + std::to_string(i) + "=inf";
            default: return "x_" + std::to_string(i) + "=x_" + std::to_string(j);
        }
    }
};

/// Residue matrices of the total differential system
///   dy = { sum_i (E_i dlog x_i + F_i dlog(1 - x_i))
///          + sum_{i<j} G_ij dlog(x_i - x_j) } y
/// of rank N(L-1)+1. Immutable after construction.
template <class K>
struct PfaffianSystem {
    ParameterSet<K> params;
    DerivedSymbols<K> sym;
    BlockIndex idx;
    std::vector<Matrix<K>> E, F;                 // per i = 1..N
    std::vector<std::vector<Matrix<K>>> Gupper;  // Gupper[i-1][j-1], i < j

    int size() const { return idx.size(); }
    const Matrix<K>& G(int i, int j) const {
        if (i > j) std::swap(i, j);
        return Gupper[size_t(i - 1)][size_t(j - 1)];
    }
};

template <class K>
PfaffianSystem<K> build_system(const ParameterSet<K>& p) {
    PfaffianSystem<K> s{p, derive_symbols(p), p.blocks(), {}, {}, {}};
    const int L = p.L, N = p.N, sz = s.idx.size();
    const auto& sym = s.sym;

    for (int i = 1; i <= N; ++i) {
        Matrix<K> e = Matrix<K>::Zero(sz, sz);
        for (int m = 1; m <= L - 1; ++m) {
            const int row = s.idx.of(i, m);
            e(row, 0) = sym.a_(m);
            for (int j = 1; j <= N; ++j) {
                if (j == i) {
                    for (int n = 1; n < m; ++n) e(row, s.idx.of(i, n)) = sym.a_(m);
                    e(row, s.idx.of(i, m)) = sym.b_(i, m);
                } else {
                    e(row, s.idx.of(j, m)) = -p.beta_(j);
                }
            }
        }
        s.E.push_back(std::move(e));

        Matrix<K> f = Matrix<K>::Zero(sz, sz);
        f(0, 0) = -p.beta_(i);
        for (int n = 1; n <= L - 1; ++n) f(0, s.idx.of(i, n)) = -p.beta_(i);
        for (int m = 1; m <= L - 1; ++m) {
            const int row = s.idx.of(i, m);
            f(row, 0) = -sym.a_(m);
            for (int n = 1; n <= L - 1; ++n) f(row, s.idx.of(i, n)) = -sym.a_(m);
        }
        s.F.push_back(std::move(f));
    }

    s.Gupper.assign(size_t(N), std::vector<Matrix<K>>());
    for (int i = 1; i <= N; ++i) {
        auto& row = s.Gupper[size_t(i - 1)];
        row.assign(size_t(N), Matrix<K>());
        for (int j = i + 1; j <= N; ++j) {
            Matrix<K> g = Matrix<K>::Zero(sz, sz);
            for (int m = 1; m <= L - 1; ++m) {
                g(s.idx.of(i, m), s.idx.of(i, m)) = -p.beta_(j);
                g(s.idx.of(i, m), s.idx.of(j, m)) = p.beta_(j);
                g(s.idx.of(j, m), s.idx.of(i, m)) = p.beta_(i);
                g(s.idx.of(j, m), s.idx.of(j, m)) = -p.beta_(i);
            }
            row[size_t(j - 1)] = std::move(g);
        }
    }
    return s;
}

template <class K>
void check_off_singular_locus(const PfaffianSystem<K>& s, const std::vector<K>& x) {
    for (int i = 1; i <= s.params.N; ++i) {
        const K& xi = x.at(size_t(i - 1));
        if (scalar_traits<K>::is_zero(xi))
            throw OnSingularLocus(DivisorId::zero(i).str());
        if (scalar_traits<K>::is_zero(K(xi - K(1))))
            throw OnSingularLocus(DivisorId::one(i).str());
        for (int j = i + 1; j <= s.params.N; ++j)
            if (scalar_traits<K>::is_zero(K(xi - x.at(size_t(j - 1)))))
                throw OnSingularLocus(DivisorId::diag(i, j).str());
    }
}

/// Coefficient matrices M_i(x) of dx_i, from expanding the logarithmic
/// differentials: dlog(1-x_i) = -dx_i/(1-x_i) and dlog(x_i-x_j) feeds both
/// the i and j slots with opposite signs absorbed into (x_j - x_i).
template <class K>
std::vector<Matrix<K>> connection_at(const PfaffianSystem<K>& s,
                                     const std::vector<K>& x) {
    check_off_singular_locus(s, x);
    const int N = s.params.N;
    std::vector<Matrix<K>> m;
    m.reserve(size_t(N));
    for (int i = 1; i <= N; ++i) {
        const K& xi = x[size_t(i - 1)];
        Matrix<K> mi = s.E[size_t(i - 1)] / xi - s.F[size_t(i - 1)] / (K(1) - xi);
        for (int j = 1; j <= N; ++j)
            if (j != i) mi += s.G(i, j) / (xi - x[size_t(j - 1)]);
        m.push_back(std::move(mi));
    }
    return m;
}

template <class K>
Matrix<K> residue_matrix(const PfaffianSystem<K>& s, const DivisorId& d) {
    switch (d.kind) {
        case DivisorId::Kind::at_zero:
            return s.E[size_t(d.i - 1)];
        case DivisorId::Kind::at_one:
            // the residue along {x_i = 1} in the coordinate (x_i - 1)
            return s.F[size_t(d.i - 1)];
        case DivisorId::Kind::diagonal:
            return s.G(d.i, d.j);
        default: {
            Matrix<K> r = -s.E[size_t(d.i - 1)] - s.F[size_t(d.i - 1)];
            for (int j = 1; j <= s.params.N; ++j)
                if (j != d.i) r -= s.G(d.i, j);
            return r;
        }
    }
}

/// The characteristic-exponent row the Riemann scheme predicts for d.
template <class K>
std::vector<K> riemann_scheme_exponents(const PfaffianSystem<K>& s,
                                        const DivisorId& d) {
    const int L = s.params.L, N = s.params.N;
    std::vector<K> out;
    switch (d.kind) {
        case DivisorId::Kind::at_zero:
            for (int n = 1; n <= L - 1; ++n) out.push_back(s.sym.b_(d.i, n));
            out.insert(out.end(), size_t((N - 1) * (L - 1) + 1), K(0));
            break;
        case DivisorId::Kind::at_one: {
            K v = -s.params.beta_(d.i);
            for (int n = 1; n <= L - 1; ++n) v -= s.sym.a_(n);
            out.push_back(v);
            out.insert(out.end(), size_t(N * (L - 1)), K(0));
            break;
        }
        case DivisorId::Kind::at_infinity:
            for (int n = 1; n <= L - 1; ++n) out.push_back(s.params.alpha_(n));
            out.insert(out.end(), size_t((N - 1) * (L - 1) + 1), s.params.beta_(d.i));
            break;
        default:
            out.insert(out.end(), size_t(L - 1),
                       K(-s.params.beta_(d.i) - s.params.beta_(d.j)));
            out.insert(out.end(), size_t((N - 1) * (L - 1) + 1), K(0));
            break;
    }
    return out;
}

/// Eigenvalue multiset of the residue matrix along d, computed from the
/// matrix itself. Exact scalars use characteristic-polynomial deflation over
/// the candidate set formed by matrix data; the numeric lane uses a dense
/// complex eigensolver.
template <class K>
std::vector<K> residue_spectrum(const PfaffianSystem<K>& s, const DivisorId& d) {
    Matrix<K> r = residue_matrix(s, d);
    if constexpr (scalar_traits<K>::is_exact) {
        return spectrum_from_candidates(r, std::vector<K>{});
    } else {
        Eigen::ComplexEigenSolver<Matrix<Complex>> es(to_complex_matrix(r));
        std::vector<K> out(r.rows());
        for (Eigen::Index k = 0; k < r.rows(); ++k) out[size_t(k)] = es.eigenvalues()(k);
        return out;
    }
}

/// max_{i<j} || d_j M_i - d_i M_j + [M_i, M_j] || with the partials in
/// closed form from the rational structure. Exactly zero over rationals.
template <class K>
typename scalar_traits<K>::real_type integrability_residual(
    const PfaffianSystem<K>& s, const std::vector<K>& x) {
    const int N = s.params.N;
    auto m = connection_at(s, x);
    typename scalar_traits<K>::real_type worst(0);
    for (int i = 1; i <= N; ++i) {
        for (int j = i + 1; j <= N; ++j) {
            const K dij = x[size_t(i - 1)] - x[size_t(j - 1)];
            Matrix<K> dj_mi = s.G(i, j) / (dij * dij);
            Matrix<K> di_mj = s.G(j, i) / (dij * dij);
            Matrix<K> comm = m[size_t(i - 1)] * m[size_t(j - 1)] -
                             m[size_t(j - 1)] * m[size_t(i - 1)];
            auto res = max_abs(Matrix<K>(dj_mi - di_mj + comm));
            if (res > worst) worst = res;
        }
    }
    return worst;
}

namespace detail {

template <class K>
std::vector<int> partition_of_multiset(const std::vector<K>& vals) {
    std::vector<K> pool = vals;
    std::vector<int> part;
    while (!pool.empty()) {
        K v = pool.front();
        int mult = 0;
        std::vector<K> rest;
        for (const K& w : pool) {
            bool same;
            if constexpr (scalar_traits<K>::is_exact)
                same = (w == v);
            else
                same = std::abs(w - v) < 1e-8;
            if (same)
                ++mult;
            else
                rest.push_back(w);
        }
        part.push_back(mult);
        pool = std::move(rest);
    }
    std::sort(part.begin(), part.end());
    return part;
}

}  // namespace detail

/// Eigenvalue-multiplicity partitions of the residues met when x_i is taken
/// as the independent variable, in the order (x_i=0, x_i=1, x_i=inf,
/// x_i=x_j for j != i ascending). Throws when parameter collisions beyond
/// the scheme's forced ones blur the generic pattern.
template <class K>
std::vector<std::vector<int>> spectral_type(const PfaffianSystem<K>& s, int i) {
    const int L = s.params.L, N = s.params.N;
    std::vector<DivisorId> divs{DivisorId::zero(i), DivisorId::one(i),
                                DivisorId::infinity(i)};
    for (int j = 1; j <= N; ++j)
        if (j != i) divs.push_back(DivisorId::diag(i, j));

    std::vector<std::vector<int>> expected;
    std::vector<int> at0(size_t(L - 1), 1);
    at0.push_back((N - 1) * (L - 1) + 1);
    std::sort(at0.begin(), at0.end());
    expected.push_back(at0);
    std::vector<int> at1{1, N * (L - 1)};
    std::sort(at1.begin(), at1.end());
    expected.push_back(at1);
    expected.push_back(at0);
    std::vector<int> atd{L - 1, (N - 1) * (L - 1) + 1};
    std::sort(atd.begin(), atd.end());
    for (int j = 1; j <= N; ++j)
        if (j != i) expected.push_back(atd);

    std::vector<std::vector<int>> out;
    for (size_t k = 0; k < divs.size(); ++k) {
        auto part = detail::partition_of_multiset(residue_spectrum(s, divs[k]));
        if (part != expected[k])
            throw NonGenericParameters("extra eigenvalue collision at " +
                                       divs[k].str());
        out.push_back(part);
    }
    return out;
}

// ---- One-variable case: cyclic conjugation of the coefficient matrix ----

/// L x L rotation matrix with ones on the superdiagonal and 1/x in the
/// bottom-left corner, raised to the n-th power in closed form.
template <class K>
Matrix<K> rotation_pow(int L, int n, const K& x) {
    n = ((n % L) + L) % L;
    Matrix<K> m = Matrix<K>::Zero(L, L);
    for (int k = 0; k < L; ++k) {
        if (k + n < L)
            m(k, k + n) = K(1);
        else
            m(k, k + n - L) = K(1) / x;
    }
    return m;
}

template <class K>
Matrix<K> rotation_pow_deriv(int L, int n, const K& x) {
    n = ((n % L) + L) % L;
    Matrix<K> m = Matrix<K>::Zero(L, L);
    for (int k = 0; k < L; ++k)
        if (k + n >= L) m(k, k + n - L) = K(-1) / (x * x);
    return m;
}

template <class K>
Matrix<K> rotation_pow_inv(int L, int n, const K& x) {
    n = ((n % L) + L) % L;
    Matrix<K> m = Matrix<K>::Zero(L, L);
    for (int k = 0; k < L; ++k) {
        if (k + n < L)
            m(k + n, k) = K(1);
        else
            m(k + n - L, k) = x;
    }
    return m;
}

/// For N = 1: the coefficient matrix of the equation satisfied by
/// Lambda^n (y * x^{gamma_n}), i.e. Lambda^n K_n Lambda^{-n}
/// + (d Lambda^n/dx) Lambda^{-n} with K_n = M(x) + (gamma_n/x) I.
/// Equals the connection built from the cyclically shifted parameters.
template <class K>
Matrix<K> conjugated_connection_at(const PfaffianSystem<K>& s, int n, const K& x) {
    if (s.params.N != 1) throw NotThomaeCase();
    const int L = s.params.L;
    Matrix<K> kn = connection_at(s, std::vector<K>{x})[0];
    if (n >= 1) {
        const K bn = -s.params.gamma_(n);
        for (int r = 0; r < L; ++r) kn(r, r) -= bn / x;
    }
    Matrix<K> lam = rotation_pow(L, n, x);
    Matrix<K> lam_inv = rotation_pow_inv(L, n, x);
    Matrix<K> dlam = rotation_pow_deriv(L, n, x);
    return lam * kn * lam_inv + dlam * lam_inv;
}

}  // namespace pfhg

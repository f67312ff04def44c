#pragma once

#include <vector>

#include "pfhg/errors.hpp"
#include "pfhg/scalar.hpp"

namespace pfhg {

/// Row/column bookkeeping for the rank N(L-1)+1 systems: component 0 is the
/// scalar slot, block i (1-based) covers components of index (i-1)(L-1)+1
/// .. i(L-1).
struct BlockIndex {
    int L = 0, N = 0;
    int size() const { return N * (L - 1) + 1; }
    int of(int i, int n) const { return (i - 1) * (L - 1) + n; }
    int block_of(int idx) const { return idx == 0 ? 0 : (idx - 1) / (L - 1) + 1; }
    int slot_of(int idx) const { return idx == 0 ? 0 : (idx - 1) % (L - 1) + 1; }
};

/// The 2L+N-2 parameters (alpha_1..alpha_{L-1}, beta_1..beta_N,
/// gamma_1..gamma_{L-1}). Immutable value type; accessors are 1-based to
/// match the standard notation.
template <class K>
struct ParameterSet {
    int L = 0, N = 0;
    std::vector<K> alpha, beta, gamma;

    const K& alpha_(int k) const { return alpha.at(size_t(k - 1)); }
    const K& beta_(int i) const { return beta.at(size_t(i - 1)); }
    const K& gamma_(int n) const { return gamma.at(size_t(n - 1)); }
    BlockIndex blocks() const { return BlockIndex{L, N}; }
};

template <class K>
ParameterSet<K> validate_parameters(int L, int N, std::vector<K> alpha,
                                    std::vector<K> beta, std::vector<K> gamma) {
    if (L < 2 || N < 1) throw DimensionMismatch("need L >= 2 and N >= 1");
    if (alpha.size() != size_t(L - 1) || beta.size() != size_t(N) ||
        gamma.size() != size_t(L - 1))
        throw DimensionMismatch("parameter array lengths must be L-1, N, L-1");
    // The series denominator (gamma_n)_{|m|} already breaks at gamma_n = 0,
    // so 0 is rejected along with the negative integers.
    for (int n = 1; n <= L - 1; ++n)
        if (scalar_traits<K>::is_nonpositive_integer(gamma[size_t(n - 1)]))
            throw GammaNonPositiveInteger(n);
    return ParameterSet<K>{L, N, std::move(alpha), std::move(beta), std::move(gamma)};
}

/// Exponent symbols derived from a parameter set. zeta[0] carries the
/// homogenizing exponent fixed by zeta_0 = -1 - sum(zeta_k + eta_k) - sum theta_i.
template <class K>
struct DerivedSymbols {
    std::vector<K> zeta;              // zeta[k], k = 0..L-1
    std::vector<K> eta;               // eta[k-1] = eta_k, k = 1..L-1
    std::vector<K> theta;             // theta[i-1] = -beta_i
    std::vector<K> a;                 // a[n-1] = alpha_n - gamma_n
    std::vector<std::vector<K>> b;    // b[i-1][n-1] = sum_{j != i} beta_j - gamma_n
    K alpha0{};                       // sum of the beta_i

    const K& zeta_(int k) const { return zeta.at(size_t(k)); }
    const K& eta_(int k) const { return eta.at(size_t(k - 1)); }
    const K& theta_(int i) const { return theta.at(size_t(i - 1)); }
    const K& a_(int n) const { return a.at(size_t(n - 1)); }
    const K& b_(int i, int n) const { return b.at(size_t(i - 1)).at(size_t(n - 1)); }
};

template <class K>
DerivedSymbols<K> derive_symbols(const ParameterSet<K>& p) {
    const int L = p.L, N = p.N;
    DerivedSymbols<K> s;
    s.zeta.assign(size_t(L), K(0));
    s.eta.assign(size_t(L - 1), K(0));
    s.theta.assign(size_t(N), K(0));
    s.a.assign(size_t(L - 1), K(0));
    s.b.assign(size_t(N), std::vector<K>(size_t(L - 1), K(0)));

    K beta_sum(0);
    for (int i = 1; i <= N; ++i) beta_sum += p.beta_(i);
    s.alpha0 = beta_sum;

    for (int k = 1; k <= L - 1; ++k) {
        K gamma_next = (k == L - 1) ? K(1) : p.gamma_(k + 1);
        s.zeta[size_t(k)] = p.alpha_(k) - gamma_next;
        s.eta[size_t(k - 1)] = p.gamma_(k) - p.alpha_(k);
        s.a[size_t(k - 1)] = p.alpha_(k) - p.gamma_(k);
    }
    for (int i = 1; i <= N; ++i) s.theta[size_t(i - 1)] = -p.beta_(i);
    for (int i = 1; i <= N; ++i)
        for (int n = 1; n <= L - 1; ++n)
            s.b[size_t(i - 1)][size_t(n - 1)] = beta_sum - p.beta_(i) - p.gamma_(n);

    K zeta0 = K(-1);
    for (int k = 1; k <= L - 1; ++k)
        zeta0 -= s.zeta[size_t(k)] + s.eta[size_t(k - 1)];
    for (int i = 1; i <= N; ++i) zeta0 -= s.theta[size_t(i - 1)];
    s.zeta[0] = zeta0;
    return s;
}

namespace detail {

// Index extension used by the cyclic parameter shift: alpha_0 = beta,
// gamma_0 = 0, and alpha_{k+L} = alpha_k + 1, gamma_{k+L} = gamma_k + 1.
template <class K>
K alpha_extended(const ParameterSet<K>& p, int k) {
    int shift = 0;
    while (k >= p.L) { k -= p.L; ++shift; }
    K base = (k == 0) ? p.beta_(1) : p.alpha_(k);
    return base + K(shift);
}

template <class K>
K gamma_extended(const ParameterSet<K>& p, int k) {
    int shift = 0;
    while (k >= p.L) { k -= p.L; ++shift; }
    K base = (k == 0) ? K(0) : p.gamma_(k);
    return base + K(shift);
}

}  // namespace detail

/// The parameter transformation behind the cyclic solution columns in the
/// one-variable (Thomae) case: alpha_k -> alpha_{k+n} - gamma_n,
/// beta -> alpha_n - gamma_n, gamma_k -> gamma_{k+n} - gamma_n.
template <class K>
ParameterSet<K> cyclic_shift_parameters(const ParameterSet<K>& p, int n) {
    if (p.N != 1) throw NotThomaeCase();
    if (n < 0) throw DimensionMismatch("cyclic shift index must be >= 0");
    const int L = p.L;
    std::vector<K> alpha(size_t(L - 1)), gamma(size_t(L - 1));
    K gn = detail::gamma_extended(p, n);
    for (int k = 1; k <= L - 1; ++k) {
        alpha[size_t(k - 1)] = detail::alpha_extended(p, k + n) - gn;
        gamma[size_t(k - 1)] = detail::gamma_extended(p, k + n) - gn;
    }
    std::vector<K> beta{detail::alpha_extended(p, n) - gn};
    return validate_parameters(L, 1, std::move(alpha), std::move(beta), std::move(gamma));
}

/// Constants of the deformation picture. e has L entries, kappa has L
/// (kappa_0 included), theta has N+1 entries theta_0..theta_N.
template <class K>
struct IsoParams {
    std::vector<K> e, kappa, theta;
    int L() const { return int(e.size()); }
    int N() const { return int(theta.size()) - 1; }

    const K& e_(int n) const { return e.at(size_t(n)); }
    const K& kappa_(int n) const { return kappa.at(size_t(n)); }
    const K& theta_(int i) const { return theta.at(size_t(i)); }
};

/// Rewrites (alpha, beta, gamma) as (e, kappa, theta):
/// alpha_n = e_n - e_0, beta_i = -theta_i, gamma_n = e_n - e_0 - kappa_n.
/// Only differences of the e_n are pinned; the common shift is fixed by
/// sum e_n = (L-1)/2. kappa_0 = sum theta_i and theta_0 closes the Fuchsian
/// relation sum kappa_n = sum theta_i.
template <class K>
IsoParams<K> to_isomonodromic(const ParameterSet<K>& p) {
    const int L = p.L, N = p.N;
    IsoParams<K> iso;
    iso.e.assign(size_t(L), K(0));
    iso.kappa.assign(size_t(L), K(0));
    iso.theta.assign(size_t(N + 1), K(0));

    K alpha_sum(0);
    for (int n = 1; n <= L - 1; ++n) alpha_sum += p.alpha_(n);
    K e0 = (K(L - 1) / K(2) - alpha_sum) / K(L);
    iso.e[0] = e0;
    for (int n = 1; n <= L - 1; ++n) iso.e[size_t(n)] = p.alpha_(n) + e0;

    K theta_sum(0);
    for (int i = 1; i <= N; ++i) {
        iso.theta[size_t(i)] = -p.beta_(i);
        theta_sum += iso.theta[size_t(i)];
    }
    iso.kappa[0] = theta_sum;
    K kappa_rest(0);
    for (int n = 1; n <= L - 1; ++n) {
        iso.kappa[size_t(n)] = p.alpha_(n) - p.gamma_(n);
        kappa_rest += iso.kappa[size_t(n)];
    }
    iso.theta[0] = kappa_rest;
    return iso;
}

template <class K>
ParameterSet<K> from_isomonodromic(const IsoParams<K>& iso) {
    const int L = iso.L(), N = iso.N();
    std::vector<K> alpha(static_cast<size_t>(L - 1));
    std::vector<K> beta(static_cast<size_t>(N));
    std::vector<K> gamma(static_cast<size_t>(L - 1));
    for (int n = 1; n <= L - 1; ++n) {
        alpha[size_t(n - 1)] = iso.e_(n) - iso.e_(0);
        gamma[size_t(n - 1)] = iso.e_(n) - iso.e_(0) - iso.kappa_(n);
    }
    for (int i = 1; i <= N; ++i) beta[size_t(i - 1)] = -iso.theta_(i);
    return validate_parameters(L, N, std::move(alpha), std::move(beta), std::move(gamma));
}

template <class K>
ParameterSet<Complex> to_complex_params(const ParameterSet<K>& p) {
    std::vector<Complex> a, b, g;
    for (const K& v : p.alpha) a.push_back(scalar_traits<K>::to_complex(v));
    for (const K& v : p.beta) b.push_back(scalar_traits<K>::to_complex(v));
    for (const K& v : p.gamma) g.push_back(scalar_traits<K>::to_complex(v));
    return ParameterSet<Complex>{p.L, p.N, std::move(a), std::move(b), std::move(g)};
}

}  // namespace pfhg

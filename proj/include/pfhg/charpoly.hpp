#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pfhg/errors.hpp"
#include "pfhg/scalar.hpp"

namespace pfhg {

/// Characteristic polynomial coefficients c[0..n] with
/// p(t) = c[n] t^n + ... + c[0] and c[n] = 1, via Faddeev-LeVerrier.
/// Divisions are by integers only, so the result is exact over rationals.
template <class K>
std::vector<K> char_poly(const Matrix<K>& a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw DimensionMismatch("char_poly: matrix not square");
    std::vector<K> c(static_cast<size_t>(n) + 1, K(0));
    c[n] = K(1);
    Matrix<K> m = Matrix<K>::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        Matrix<K> am = a * m;
        K tr(0);
        for (Eigen::Index i = 0; i < n; ++i) tr += am(i, i);
        K ck = -tr / K(static_cast<int>(k));
        c[n - k] = ck;
        m = am;
        for (Eigen::Index i = 0; i < n; ++i) m(i, i) += ck;
    }
    return c;
}

/// Monic polynomial with the given root multiset, expanded exactly.
template <class K>
std::vector<K> poly_from_roots(const std::vector<K>& roots) {
    std::vector<K> c{K(1)};
    for (const K& r : roots) {
        std::vector<K> next(c.size() + 1, K(0));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    return c;
}

template <class K>
K poly_eval(const std::vector<K>& c, const K& t) {
    K v(0);
    for (size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

/// Deflate p by (t - r); returns quotient if r is an exact root.
template <class K>
std::optional<std::vector<K>> poly_deflate(const std::vector<K>& c, const K& r) {
    std::vector<K> q(c.size() - 1, K(0));
    K carry = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c[i] + r * carry;
    }
    if (!scalar_traits<K>::is_zero(carry)) return std::nullopt;
    return q;
}

/// Exact spectrum of a matrix whose eigenvalues all occur among the given
/// candidate values (plus 0 and the trace, which are appended internally).
/// Computes the characteristic polynomial and factors it by deflation, so the
/// result is a genuine eigenvalue computation, not a restatement of the guess.
template <class K>
std::vector<K> spectrum_from_candidates(const Matrix<K>& a,
                                        std::vector<K> candidates) {
    static_assert(scalar_traits<K>::is_exact,
                  "exact spectrum extraction needs an exact scalar");
    candidates.push_back(K(0));
    K tr(0);
    for (Eigen::Index i = 0; i < a.rows(); ++i) tr += a(i, i);
    // entries, pairwise entry sums, and integer fractions of the trace cover
    // the spectra of the structured residue matrices handled here
    for (Eigen::Index k = 1; k <= a.rows(); ++k)
        candidates.push_back(tr / K(static_cast<int>(k)));
    std::vector<K> entries;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) entries.push_back(a(i, j));
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    for (size_t i = 0; i < entries.size(); ++i) {
        candidates.push_back(entries[i]);
        for (size_t j = i; j < entries.size(); ++j)
            candidates.push_back(entries[i] + entries[j]);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    std::vector<K> p = char_poly(a);
    std::vector<K> roots;
    bool progress = true;
    while (p.size() > 1 && progress) {
        progress = false;
        for (const K& r : candidates) {
            while (p.size() > 1) {
                auto q = poly_deflate(p, r);
                if (!q) break;
                roots.push_back(r);
                p = *q;
                progress = true;
            }
        }
    }
    if (p.size() > 1)
        throw NonGenericParameters(
            "spectrum does not split over the candidate set");
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace pfhg

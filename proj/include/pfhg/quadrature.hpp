#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pfhg/errors.hpp"
#include "pfhg/gamma.hpp"

namespace pfhg {

/// Nodes and weights on [0,1] with the measure s^p (1-s)^q ds folded into
/// the weights, so sum_i w_i f(s_i) ~ int_0^1 s^p (1-s)^q f(s) ds.
struct QuadratureRule {
    std::vector<double> nodes, weights;
};

namespace detail {

/// Golub-Welsch on the symmetric tridiagonal recurrence matrix of the Jacobi
/// polynomials for the weight (1-u)^a (1+u)^b on [-1,1], then mapped to [0,1].
inline QuadratureRule make_gauss_jacobi_01(double p, double q, int n) {
    if (p <= -1.0 || q <= -1.0)
        throw NonIntegrableExponent(0, "jacobi exponent <= -1");
    const double a = q, b = p;  // (1-u)^a ~ (1-s)^q, (1+u)^b ~ s^p
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double num = b * b - a * a;
        double den = (2.0 * k + a + b) * (2.0 * k + a + b + 2.0);
        jac(k, k) = (k == 0) ? (b - a) / (a + b + 2.0) : num / den;
        if (k >= 1) {
            double bk;
            if (k == 1) {
                bk = 4.0 * (a + 1.0) * (b + 1.0) /
                     ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
            } else {
                double s = 2.0 * k + a + b;
                bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                     (s * s * (s + 1.0) * (s - 1.0));
            }
            jac(k, k - 1) = jac(k - 1, k) = std::sqrt(bk);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    const double mu0 = beta_fn(p + 1.0, q + 1.0);  // total mass on [0,1]
    QuadratureRule rule;
    rule.nodes.resize(size_t(n));
    rule.weights.resize(size_t(n));
    for (int k = 0; k < n; ++k) {
        rule.nodes[size_t(k)] = 0.5 * (1.0 + es.eigenvalues()(k));
        double v = es.eigenvectors()(0, k);
        rule.weights[size_t(k)] = mu0 * v * v;
    }
    return rule;
}

}  // namespace detail

inline const QuadratureRule& gauss_jacobi_01(double p, double q, int n) {
    static std::map<std::tuple<double, double, int>, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(p, q, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, detail::make_gauss_jacobi_01(p, q, n)).first;
    return it->second;
}

}  // namespace pfhg

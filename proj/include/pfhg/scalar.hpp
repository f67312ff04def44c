#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <vector>
#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

namespace pfhg {

using Complex = std::complex<double>;

/// Exact rational scalar. Thin wrapper over boost::multiprecision so the
/// type exposes only non-template constructors; the backend's converting
/// constructor templates otherwise collide with Eigen expression types
/// during overload resolution.
class Rational {
  public:
    using backend = boost::multiprecision::cpp_rational;

    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(n) {}
    Rational(long long num, long long den) : v_(num, den) {}
    explicit Rational(backend v) : v_(std::move(v)) {}

    const backend& value() const { return v_; }
    double to_double() const { return v_.convert_to<double>(); }
    bool is_integer() const {
        return boost::multiprecision::denominator(v_) == 1;
    }

    Rational operator-() const { return Rational(backend(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(backend(a.v_ + b.v_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(backend(a.v_ - b.v_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(backend(a.v_ * b.v_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return Rational(backend(a.v_ / b.v_));
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) {
        return a.v_ != b.v_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.v_ <= b.v_;
    }
    friend bool operator>(const Rational& a, const Rational& b) {
        return a.v_ > b.v_;
    }
    friend bool operator>=(const Rational& a, const Rational& b) {
        return a.v_ >= b.v_;
    }
    friend Rational abs(const Rational& a) {
        return a.v_ < 0 ? Rational(backend(-a.v_)) : a;
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& a) {
        return os << a.v_.str();
    }

  private:
    backend v_;
};

template <class K>
using Matrix = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vector = Eigen::Matrix<K, Eigen::Dynamic, 1>;

/// The library is generic over two scalar fields: double-precision complex
/// numbers for numerics and exact rationals for identity checks.
template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
    static constexpr bool is_exact = false;
    using real_type = double;

    static real_type abs(const Complex& v) { return std::abs(v); }
    static Complex to_complex(const Complex& v) { return v; }
    static Complex from_ratio(long long num, long long den) {
        return Complex(double(num) / double(den), 0.0);
    }
    static bool is_nonpositive_integer(const Complex& v, double tol = 1e-12) {
        if (std::abs(v.imag()) > tol) return false;
        double r = v.real();
        return r < 0.5 && std::abs(r - std::round(r)) < tol && std::round(r) <= 0.0;
    }
    static bool is_zero(const Complex& v) { return v == Complex(0.0, 0.0); }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    using real_type = Rational;

    static real_type abs(const Rational& v) {
        return v < Rational(0) ? -v : v;
    }
    static Complex to_complex(const Rational& v) {
        return Complex(v.to_double(), 0.0);
    }
    static Rational from_ratio(long long num, long long den) {
        return Rational(num, den);
    }
    static bool is_nonpositive_integer(const Rational& v, double = 0.0) {
        return v.is_integer() && v <= Rational(0);
    }
    static bool is_zero(const Rational& v) { return v == Rational(0); }
};

inline double to_double(const Rational& v) { return v.to_double(); }

template <class K>
Matrix<Complex> to_complex_matrix(const Matrix<K>& m) {
    Matrix<Complex> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = scalar_traits<K>::to_complex(m(i, j));
    return out;
}

/// Largest entry magnitude; the exact lane keeps the result rational.
template <class K>
typename scalar_traits<K>::real_type max_abs(const Matrix<K>& m) {
    typename scalar_traits<K>::real_type r(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            auto a = scalar_traits<K>::abs(m(i, j));
            if (a > r) r = a;
        }
    return r;
}

}  // namespace pfhg

namespace Eigen {

template <>
struct NumTraits<pfhg::Rational> : GenericNumTraits<pfhg::Rational> {
    typedef pfhg::Rational Real;
    typedef pfhg::Rational NonInteger;
    typedef pfhg::Rational Nested;
    typedef pfhg::Rational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 40
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

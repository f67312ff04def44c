#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "pfhg/pfaffian.hpp"

using namespace pfhg;

namespace {

ParameterSet<Rational> rational_params(int L, int N, long seed) {
    std::mt19937_64 rng{uint64_t(seed)};
    std::uniform_int_distribution<int> num(1, 60);
    std::uniform_int_distribution<int> den(5, 17);
    auto draw = [&] { return Rational(num(rng), den(rng) * 2 + 1); };
    std::vector<Rational> a, b, g;
    for (int k = 0; k < L - 1; ++k) a.push_back(draw());
    for (int i = 0; i < N; ++i) b.push_back(draw() - Rational(1, 3));
    for (int n = 0; n < L - 1; ++n) g.push_back(draw() + Rational(1, 4));
    return validate_parameters(L, N, a, b, g);
}

template <class K>
std::vector<K> sorted(std::vector<K> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Rational> rational_point(int N, long seed) {
    std::mt19937_64 rng{uint64_t(seed)};
    std::uniform_int_distribution<int> num(2, 30);
    std::uniform_int_distribution<int> den(31, 97);
    std::vector<Rational> x;
    for (int i = 0; i < N; ++i) x.emplace_back(num(rng), den(rng));
    return x;
}

}  // namespace

TEST_CASE("Gauss residue matrices") {
    Rational al(1, 2), be(1, 3), ga(5, 4);
    auto s = build_system(validate_parameters<Rational>(2, 1, {al}, {be}, {ga}));
    Matrix<Rational> e(2, 2), f(2, 2);
    e << 0, 0, al - ga, -ga;
    f << -be, -be, -(al - ga), -(al - ga);
    CHECK(s.E[0] == e);
    CHECK(s.F[0] == f);
}

TEST_CASE("N = 2 coupling matrix has the four +/- beta blocks") {
    Rational al(2, 3), b1(1, 5), b2(3, 7), ga(6, 5);
    auto s = build_system(validate_parameters<Rational>(2, 2, {al}, {b1, b2}, {ga}));
    REQUIRE(s.size() == 3);
    Matrix<Rational> g = Matrix<Rational>::Zero(3, 3);
    g(1, 1) = -b2;
    g(1, 2) = b2;
    g(2, 1) = b1;
    g(2, 2) = -b1;
    CHECK(s.G(1, 2) == g);
    CHECK(s.G(2, 1) == g);
}

TEST_CASE("L = 3 one-variable system layout") {
    auto p = rational_params(3, 1, 5);
    auto s = build_system(p);
    REQUIRE(s.size() == 3);
    const auto& e = s.E[0];
    CHECK(e(0, 0) == 0);
    CHECK(e(1, 0) == s.sym.a_(1));
    CHECK(e(2, 0) == s.sym.a_(2));
    CHECK(e(1, 1) == -p.gamma_(1));
    CHECK(e(2, 2) == -p.gamma_(2));
    CHECK(e(2, 1) == s.sym.a_(2));
    CHECK(e(1, 2) == 0);
}

TEST_CASE("trace bookkeeping of the residue matrices") {
    auto p = rational_params(3, 2, 11);
    auto s = build_system(p);
    for (int i = 1; i <= 2; ++i) {
        Rational tr_e(0), tr_f(0);
        for (int k = 0; k < s.size(); ++k) {
            tr_e += s.E[size_t(i - 1)](k, k);
            tr_f += s.F[size_t(i - 1)](k, k);
        }
        Rational be(0), ba(0);
        for (int n = 1; n <= p.L - 1; ++n) {
            be += s.sym.b_(i, n);
            ba += s.sym.a_(n);
        }
        CHECK(tr_e == be);
        CHECK(tr_f == -p.beta_(i) - ba);
    }
    Rational tr_g(0);
    for (int k = 0; k < s.size(); ++k) tr_g += s.G(1, 2)(k, k);
    CHECK(tr_g == -(p.L - 1) * (p.beta_(1) + p.beta_(2)));
}

TEST_CASE("connection at a point (Gauss closed form and pole detection)") {
    Rational al(1, 2), be(1, 3), ga(5, 4);
    auto s = build_system(validate_parameters<Rational>(2, 1, {al}, {be}, {ga}));
    Rational x(2, 7);
    auto m = connection_at(s, {x});
    Matrix<Rational> expected = s.E[0] / x - s.F[0] / (Rational(1) - x);
    CHECK(m[0] == expected);

    auto s2 = build_system(rational_params(2, 2, 3));
    CHECK_THROWS_AS(connection_at(s2, {Rational(1, 3), Rational(1, 3)}),
                    OnSingularLocus);
    CHECK_THROWS_AS(connection_at(s2, {Rational(0), Rational(1, 3)}),
                    OnSingularLocus);
    CHECK_THROWS_AS(connection_at(s2, {Rational(1, 2), Rational(1)}),
                    OnSingularLocus);
}

TEST_CASE("derivative of the connection in a coupled direction") {
    auto p = rational_params(2, 2, 17);
    auto s = build_system(p);
    std::vector<Rational> x{Rational(1, 3), Rational(1, 5)};
    // d M_1 / d x_2 = G_12 / (x_1 - x_2)^2, verified against a secant over
    // the exact rational evaluation.
    Rational d = x[0] - x[1];
    Matrix<Rational> closed = s.G(1, 2) / (d * d);
    Rational h(1, 1000000);
    auto mp = connection_at(s, {x[0], x[1] + h})[0];
    auto mm = connection_at(s, {x[0], x[1] - h})[0];
    Matrix<Rational> secant = (mp - mm) / (2 * h);
    // the secant of a rational function of degree 2 differs at O(h^2)
    CHECK(to_double(max_abs(Matrix<Rational>(secant - closed))) < 1e-7);
}

TEST_CASE("residue spectra match the Riemann scheme exactly") {
    for (auto [L, N] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 2}}) {
        auto p = rational_params(L, N, 1000 + 10 * L + N);
        auto s = build_system(p);
        for (int i = 1; i <= N; ++i) {
            for (auto d : {DivisorId::zero(i), DivisorId::one(i), DivisorId::infinity(i)}) {
                CHECK(sorted(residue_spectrum(s, d)) ==
                      sorted(riemann_scheme_exponents(s, d)));
            }
            for (int j = i + 1; j <= N; ++j) {
                auto d = DivisorId::diag(i, j);
                CHECK(sorted(residue_spectrum(s, d)) ==
                      sorted(riemann_scheme_exponents(s, d)));
            }
        }
    }
}

TEST_CASE("Fuchsian relation: all exponents for a fixed variable sum to zero") {
    for (auto [L, N] : {std::pair{3, 2}, {4, 3}}) {
        auto p = rational_params(L, N, 2000 + 10 * L + N);
        auto s = build_system(p);
        for (int i = 1; i <= N; ++i) {
            Rational total(0);
            for (auto d : {DivisorId::zero(i), DivisorId::one(i), DivisorId::infinity(i)})
                for (const auto& v : residue_spectrum(s, d)) total += v;
            for (int j = 1; j <= N; ++j)
                if (j != i)
                    for (const auto& v : residue_spectrum(s, DivisorId::diag(i, j)))
                        total += v;
            CHECK(total == 0);
        }
    }
}

TEST_CASE("integrability residual vanishes exactly over rationals") {
    for (auto [L, N] : {std::pair{2, 2}, {3, 2}, {4, 3}}) {
        auto p = rational_params(L, N, 3000 + 10 * L + N);
        auto s = build_system(p);
        for (long k = 0; k < 5; ++k) {
            auto x = rational_point(N, 40 * L + k);
            CHECK(integrability_residual(s, x) == 0);
        }
    }
    // no pairs for N = 1
    auto s1 = build_system(rational_params(3, 1, 77));
    CHECK(integrability_residual(s1, {Rational(1, 3)}) == 0);
}

TEST_CASE("integrability residual is near roundoff in doubles") {
    auto p = validate_parameters<Complex>(3, 2, {Complex(0.41, 0.1), Complex(0.73)},
                                          {Complex(0.29), Complex(0.18, -0.2)},
                                          {Complex(1.21), Complex(0.87)});
    auto s = build_system(p);
    std::vector<Complex> x{Complex(0.31, 0.05), Complex(0.12, -0.2)};
    CHECK(integrability_residual(s, x) < 1e-12);
}

TEST_CASE("spectral types") {
    auto s21 = build_system(rational_params(2, 1, 4001));
    auto t21 = spectral_type(s21, 1);
    CHECK(t21[0] == std::vector<int>{1, 1});
    CHECK(t21[1] == std::vector<int>{1, 1});
    CHECK(t21[2] == std::vector<int>{1, 1});

    auto s32 = build_system(rational_params(3, 2, 4002));
    auto t32 = spectral_type(s32, 1);
    CHECK(t32[0] == std::vector<int>{1, 1, 3});   // x_1 = 0
    CHECK(t32[1] == std::vector<int>{1, 4});      // x_1 = 1
    CHECK(t32[2] == std::vector<int>{1, 1, 3});   // x_1 = inf
    CHECK(t32[3] == std::vector<int>{2, 3});      // x_1 = x_2
}

TEST_CASE("forced collision is flagged as non-generic") {
    // b_{1,1} = beta_2 - gamma_1 = 0 collides with the zero block.
    auto p = validate_parameters<Rational>(2, 2, {Rational(2, 5)},
                                           {Rational(1, 3), Rational(3, 4)},
                                           {Rational(3, 4)});
    auto s = build_system(p);
    CHECK_THROWS_AS(spectral_type(s, 1), NonGenericParameters);
}

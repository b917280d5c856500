#include <doctest.h>

#include <cmath>
#include <random>

#include "twistrt/potential.hpp"

using namespace twistrt;

namespace {

Real3 real_part(const Theta3& t) { return {t[0].real(), t[1].real(), t[2].real()}; }

Real3 random_D0(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u1(-0.5, 0.5), u2(0.5, 0.909), u3(0.2, 0.8);
    for (;;) {
        Real3 t{u1(rng), u2(rng), u3(rng)};
        if (in_D0(t)) return t;
    }
}

}  // namespace

TEST_CASE("admissible set S") {
    CHECK(in_S({6, 27}));
    CHECK_FALSE(in_S({6, 26}));
    CHECK(in_S({33, 12}));
    CHECK_FALSE(in_S({33, 11}));
    CHECK_FALSE(in_S({5, 1000}));
    for (SurgeryParams pq : {SurgeryParams{7, 19}, {8, 17}, {9, 15}, {10, 15}, {11, 14}, {13, 14}, {14, 13}, {32, 13}}) {
        CAPTURE(pq.p);
        CHECK(in_S(pq));
        CHECK_FALSE(in_S({pq.p, pq.q - 1}));
    }
}

TEST_CASE("D0 and DH membership") {
    CHECK(in_D0({0, 0.83, 0.6}));
    CHECK(in_DH({0, 0.83, 0.6}));
    CHECK_FALSE(in_D0({0, 0.4, 0.3}));
    CHECK_FALSE(in_DH({0, 0.4, 0.3}));
    CHECK(in_D0({0, 0.909, 0.6}));
    CHECK_FALSE(in_D0({0, 0.91, 0.6}));
    CHECK(in_Dprime({0, 0.4, 0.3}));
    CHECK_FALSE(in_Dprime({0.5, 0.6, 0.3}));
    CHECK_FALSE(in_Dprime({-0.5, 0.6, 0.3}));
}

TEST_CASE("D0 is symmetric in theta1") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        Real3 t = random_D0(rng);
        CHECK(in_D0({-t[0], t[1], t[2]}));
    }
}

TEST_CASE("26 inequalities") {
    SurgeryParams pq{6, 27};
    Real3 crit = real_part(solve_critical(pq).theta);
    CHECK(check_26(crit, {0, 0, 0}, pq));
    CHECK_FALSE(check_26(crit, {0, -1, 0}, pq));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        Real3 t = random_D0(rng);
        CHECK_FALSE(check_26(t, {0, 5, 0}, pq));
        CHECK_FALSE(check_26(t, {0, -1, 0}, pq));
    }
}

TEST_CASE("growth function") {
    SurgeryParams pq{6, 27};
    Real3 crit = real_part(solve_critical(pq).theta);
    CHECK(growth_F({0, 0, 0}, crit, {0, 0, 0}, pq) == 0.0);

    // F is positively homogeneous of degree one
    Real3 X{0.3, -1.2, 0.7};
    double f1 = growth_F(X, crit, {0, 0, 0}, pq);
    double f3 = growth_F({3 * X[0], 3 * X[1], 3 * X[2]}, crit, {0, 0, 0}, pq);
    CHECK(std::abs(f3 - 3 * f1) < 1e-12);
}

TEST_CASE("growth along random rays when the inequalities hold") {
    SurgeryParams pq{6, 27};
    Real3 crit = real_part(solve_critical(pq).theta);
    REQUIRE(check_26(crit, {0, 0, 0}, pq));
    std::mt19937_64 rng(26);
    std::normal_distribution<double> g;
    for (int i = 0; i < 26; ++i) {
        Real3 d{g(rng), g(rng), g(rng)};
        double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        Real3 X{1e3 * d[0] / n, 1e3 * d[1] / n, 1e3 * d[2] / n};
        CHECK(growth_F(X, crit, {0, 0, 0}, pq) > 0);
    }
    // the coordinate directions too
    for (int j = 0; j < 3; ++j)
        for (double s : {-1e3, 1e3}) {
            Real3 X{0, 0, 0};
            X[j] = s;
            CHECK(growth_F(X, crit, {0, 0, 0}, pq) > 0);
        }
}

TEST_CASE("a negative linear tail gives a descending ray") {
    // choose theta so that the tail coefficients are A = -1, B = C = 0
    SurgeryParams pq{6, 27};
    FourierIndex m{0, -1, 0};
    const double p = pq.p, q = pq.q;
    Real3 t{(m.m1 + 1.5) / (q / 2 - 1), 0.8, (p + 1.5 + m.m3) / (2 * p + 1)};
    double A = -(q / 2 - 1) * t[0] + m.m1 + 0.5, B = m.m2 + 1, C = p + 1.5 + m.m3 - (2 * p + 1) * t[2];
    CHECK(std::abs(A + 1) < 1e-14);
    CHECK(B == 0.0);
    CHECK(std::abs(C) < 1e-14);
    double prev = 0;
    for (double s : {10.0, 100.0, 1000.0}) {
        double f = growth_F({s, 0, 0}, t, m, pq);
        CHECK(f < prev);
        prev = f;
    }
    CHECK(prev < -100);
    CHECK_FALSE(check_26(t, m, pq));
}

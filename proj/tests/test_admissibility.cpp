#include <cmath>
#include <numbers>

#include "admissibility.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "gen.hpp"
#include "specialfn.hpp"

using namespace vp;
using std::numbers::pi;

namespace {

// brute force over n = 1 .. 10^6 plus the accumulation point
double oracle_forbidden(double s, double c)
{
    double d = std::abs(s - c);
    for (int n = 1; n < 1000000; ++n)
        d = std::min(d, std::abs(s - c * std::sqrt(1 - 1.0 / (double(n) * n))));
    return d;
}

// K by the trapezoid rule, an independent path from the AGM
double oracle_K(double k)
{
    const int n = 2000;
    double s = 0;
    for (int i = 0; i < n; ++i) {
        double st = std::sin(2 * pi * i / n);
        s += 1 / std::sqrt(1 - k * k * st * st);
    }
    return s * (2 * pi / n) / 4;
}

double oracle_g(double k)
{
    double q = (1 + k * k) - std::pow(pi / (2 * oracle_K(k)), 2);
    return 1 / std::sqrt(1 - q * q / (4 * k * k));
}

// |S(F)(0)|^2 for the sector of order m, with the sign-corrected constant term
double sector_s2(int m)
{
    double m2 = double(m) * m, m4 = m2 * m2, m6 = m4 * m2, m8 = m4 * m4;
    double A = -8 / m8 * (2 * m6 + 9 * m4 + 6 * m2 + 1);
    double B = 4 / m8 * (m8 + 24 * m6 + 38 * m4 + 16 * m2 + 2);
    return A * std::sqrt(4 * m2 + 1) + B;
}

}  // namespace

TEST_CASE("property: forbidden distance matches brute force")
{
    Gen g(61);
    for (int i = 0; i < 20; ++i) {
        double s = g.uniform(0, 2.2);
        auto f = forbidden_distance(s, 2.0);
        CHECK(f.distance == doctest::Approx(oracle_forbidden(s, 2.0)).epsilon(1e-9));
        CHECK(f.distance >= 0);
    }
    CHECK(forbidden_distance(2.0, 2.0).nearest_n == 0);
    CHECK(forbidden_distance(std::sqrt(3.0), 2.0).distance < 1e-15);
    CHECK(forbidden_distance(std::sqrt(3.0), 2.0).nearest_n == 2);
}

TEST_CASE("ellipse g")
{
    CHECK(ellipse_g(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // g grows like 2K(k)/pi, so it only passes 10 when k' is near 1e-7
    CHECK(ellipse_g(0.999) == doctest::Approx(oracle_g(0.999)).epsilon(1e-9));
    for (double kp : {1e-3, 1e-5, 1e-7}) {
        double k = std::sqrt(1 - kp * kp);
        CHECK(ellipse_g(k) * pi / (2 * elliptic_K(k, kp)) == doctest::Approx(1.0).epsilon(0.01));
    }
    CHECK(ellipse_g(std::sqrt(1 - 1e-14)) > 10);
    double prev = ellipse_g(0.0);
    for (int i = 1; i < 100; ++i) {
        double v = ellipse_g(0.99 * i / 99);
        CHECK(v > prev);
        prev = v;
    }
    Gen g(62);
    for (int i = 0; i < 50; ++i) {
        double k = g.uniform(0.05, 0.95);
        CHECK(ellipse_g(k) == doctest::Approx(oracle_g(k)).epsilon(1e-11));
    }
}

TEST_CASE("ellipse excluded ratios")
{
    auto v = ellipse_excluded_ratios(5);
    REQUIRE(v.size() == 5);
    CHECK(v[0].k == 0.0);
    CHECK(v[0].a == doctest::Approx(1.0));
    for (size_t i = 1; i < v.size(); ++i) {
        CHECK(ellipse_g(v[i].k) == doctest::Approx(double(v[i].n)).epsilon(1e-11));
        CHECK(v[i].a > v[i - 1].a);
    }
}

TEST_CASE("rectangle ratios")
{
    CHECK(rectangle_G(1) == doctest::Approx(1.0).epsilon(1e-14));
    auto G = rectangle_excluded_ratios(20);
    for (size_t i = 1; i < G.size(); ++i) {
        CHECK(G[i] < G[i - 1]);
        CHECK(G[i] > 0);
    }
    auto r = rectangle_check(0.6, 50);
    double d = 1;
    for (double x : rectangle_excluded_ratios(50))
        d = std::min(d, std::abs(0.6 - x));
    CHECK(r.distance == doctest::Approx(d));
    CHECK(r.verdict == (d > 1e-8));
    for (int n : {1, 2, 3}) {
        CHECK_FALSE(corollary_check(*make_rectangle(rectangle_G(n))).verdict);
        double mid = 0.5 * (rectangle_G(n) + rectangle_G(n + 1));
        CHECK(corollary_check(*make_rectangle(mid)).verdict);
    }
}

TEST_CASE("corollary check on the closed-form families")
{
    auto d = corollary_check(*make_disc());
    CHECK_FALSE(d.verdict);
    CHECK(d.forbidden_set_distance < 1e-12);
    for (int m : {3, 4, 6}) {
        auto p = corollary_check(*make_regular_polygon(m));
        CHECK_FALSE(p.verdict);
        CHECK(p.forbidden_set_distance < 1e-12);
    }
    for (double aspect : {0.3, 0.6, 0.9}) {
        auto r = corollary_check(*make_rectangle(aspect));
        CHECK(r.schwarzian_abs == doctest::Approx(2 * std::abs(std::cos(2 * rectangle_theta1(aspect)))).epsilon(1e-6));
        auto s = sym_polygon_sum(rectangle_spec(aspect));
        CHECK(r.schwarzian_abs == doctest::Approx(2 * std::abs(s.sum)).epsilon(1e-6));
    }
}

TEST_CASE("sector Schwarzian matches the corrected closed form")
{
    CHECK(sector_s2(1) == doctest::Approx(2.00621124003028).epsilon(1e-12));
    CHECK(sector_s2(2) == doctest::Approx(0.263675912236088).epsilon(1e-12));
    for (int m : {1, 2, 3, 4, 8}) {
        auto r = corollary_check(*make_sector(m));
        CAPTURE(m);
        CHECK(r.schwarzian_abs * r.schwarzian_abs == doctest::Approx(sector_s2(m)).epsilon(1e-9));
        CHECK(r.verdict);
    }
}

TEST_CASE("symmetric polygon sum")
{
    PolygonSpec sq;
    sq.theta = {pi / 4, 3 * pi / 4, 5 * pi / 4, 7 * pi / 4};
    sq.mu = {0.5, 0.5, 0.5, 0.5};
    auto s = sym_polygon_sum(sq);
    CHECK(std::abs(s.sum) < 1e-15);
    CHECK_FALSE(s.verdict);
    PolygonSpec hex;
    for (int k = 0; k < 6; ++k) {
        hex.theta.push_back(pi / 6 + k * pi / 3);
        hex.mu.push_back(1.0 / 3);
    }
    CHECK_FALSE(sym_polygon_sum(hex).verdict);
    double t = 0.5 * std::acos(0.5);
    PolygonSpec p;
    p.theta = {t, pi - t, pi + t, 2 * pi - t};
    p.mu = {0.5, 0.5, 0.5, 0.5};
    CHECK(sym_polygon_sum(p).verdict);
    PolygonSpec bad = p;
    bad.mu = {0.4, 0.6, 0.5, 0.5};
    CHECK_THROWS_AS(sym_polygon_sum(bad), vp::error);
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "errors.hpp"
#include "gen.hpp"
#include "specialfn.hpp"

using namespace vp;
using std::numbers::pi;

namespace {

// K(k) by the trapezoid rule on the periodic integrand over [0, 2pi]
double oracle_K(double k)
{
    const int n = 4000;
    double s = 0;
    for (int i = 0; i < n; ++i) {
        double t = 2 * pi * i / n, st = std::sin(t);
        s += 1.0 / std::sqrt(1 - k * k * st * st);
    }
    return s * (2 * pi / n) / 4;
}

// sn, cn, dn by RK4 on sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn
void oracle_jacobi(double u, double k, double& sn, double& cn, double& dn)
{
    double y[3] = {0, 1, 1};
    const int n = 20000;
    double h = u / n;
    auto f = [k](const double* v, double* d) {
        d[0] = v[1] * v[2];
        d[1] = -v[0] * v[2];
        d[2] = -k * k * v[0] * v[1];
    };
    for (int i = 0; i < n; ++i) {
        double k1[3], k2[3], k3[3], k4[3], t[3];
        f(y, k1);
        for (int j = 0; j < 3; ++j) t[j] = y[j] + 0.5 * h * k1[j];
        f(t, k2);
        for (int j = 0; j < 3; ++j) t[j] = y[j] + 0.5 * h * k2[j];
        f(t, k3);
        for (int j = 0; j < 3; ++j) t[j] = y[j] + h * k3[j];
        f(t, k4);
        for (int j = 0; j < 3; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    sn = y[0];
    cn = y[1];
    dn = y[2];
}

}  // namespace

TEST_CASE("K oracle matches frozen high precision values")
{
    // frozen from an independent 30-digit evaluation
    CHECK(oracle_K(0.5) == doctest::Approx(1.6857503548125960).epsilon(1e-13));
    CHECK(oracle_K(0.6) == doctest::Approx(1.7507538029157525).epsilon(1e-13));
    CHECK(oracle_K(0.8) == doctest::Approx(1.9953027776647294).epsilon(1e-13));
}

TEST_CASE("elliptic_K against frozen values")
{
    CHECK(elliptic_K(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(elliptic_K(0.5) == doctest::Approx(1.6857503548125960).epsilon(1e-14));
    CHECK(elliptic_K(0.6) == doctest::Approx(1.7507538029157525).epsilon(1e-14));
    CHECK(elliptic_K(0.8) == doctest::Approx(1.9953027776647294).epsilon(1e-14));
    CHECK(elliptic_K(0.99) == doctest::Approx(3.3566005233611924).epsilon(1e-13));
    // rectangle side ratio for cos(theta1) = 0.8
    CHECK(elliptic_K(0.6) / elliptic_K(0.8) == doctest::Approx(0.87743766134822251).epsilon(1e-14));
}

TEST_CASE("agm basics")
{
    CHECK(agm(1, 1) == 1.0);
    CHECK(pi / (2 * agm(1, 1)) == doctest::Approx(pi / 2));
    CHECK(agm(1, 2) == doctest::Approx(agm(2, 1)).epsilon(1e-15));
    CHECK(agm(3, 7) == doctest::Approx(4.7890135831409487).epsilon(1e-14));
}

TEST_CASE("property: elliptic_K matches the trapezoid oracle")
{
    Gen g(11);
    for (int i = 0; i < 40; ++i) {
        double k = g.uniform(0, 0.95);
        CHECK(elliptic_K(k) == doctest::Approx(oracle_K(k)).epsilon(1e-12));
    }
}

TEST_CASE("property: agm is homogeneous and lies between the means")
{
    Gen g(12);
    for (int i = 0; i < 50; ++i) {
        double a = g.uniform(0.1, 10), b = g.uniform(0.1, 10), s = g.uniform(0.1, 5);
        double m = agm(a, b);
        CHECK(agm(s * a, s * b) == doctest::Approx(s * m).epsilon(1e-13));
        CHECK(m >= std::sqrt(a * b) * (1 - 1e-14));
        CHECK(m <= 0.5 * (a + b) * (1 + 1e-14));
    }
}

TEST_CASE("jacobi functions against frozen values")
{
    double sn, cn, dn;
    jacobi_real(0.3, 0.5, std::sqrt(0.75), sn, cn, dn);
    CHECK(sn == doctest::Approx(0.29446555154955623).epsilon(1e-14));
    CHECK(cn == doctest::Approx(0.95566209454525068).epsilon(1e-14));
    CHECK(dn == doctest::Approx(0.98910187025283392).epsilon(1e-14));
    jacobi_real(1.1, 0.9, std::sqrt(1 - 0.81), sn, cn, dn);
    CHECK(sn == doctest::Approx(0.81940717718032102).epsilon(1e-13));
    CHECK(cn == doctest::Approx(0.57321189623504675).epsilon(1e-13));
    CHECK(dn == doctest::Approx(0.67538375844267691).epsilon(1e-13));
}

TEST_CASE("property: jacobi identities and ODE oracle")
{
    Gen g(13);
    for (int i = 0; i < 25; ++i) {
        double k = g.uniform(0, 0.99), u = g.uniform(-3, 3);
        double kp = std::sqrt((1 - k) * (1 + k));
        double sn, cn, dn;
        jacobi_real(u, k, kp, sn, cn, dn);
        CHECK(sn * sn + cn * cn == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(dn * dn + k * k * sn * sn == doctest::Approx(1.0).epsilon(1e-13));
        double os, oc, od;
        oracle_jacobi(u, k, os, oc, od);
        CHECK(std::abs(sn - os) < 1e-10);
        CHECK(std::abs(cn - oc) < 1e-10);
        CHECK(std::abs(dn - od) < 1e-10);
        // complex version on the real axis agrees
        auto c = jacobi_sn_cn_dn(cplx(u, 0), k, kp);
        CHECK(std::abs(c.sn - sn) < 1e-12);
        CHECK(std::abs(c.cn - cn) < 1e-12);
        CHECK(std::abs(c.dn - dn) < 1e-12);
    }
}

TEST_CASE("jacobi at the quarter period")
{
    for (double k : {0.2, 0.5, 0.9}) {
        double kp = std::sqrt(1 - k * k), sn, cn, dn;
        jacobi_real(elliptic_K(k, kp), k, kp, sn, cn, dn);
        CHECK(sn == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(cn) < 1e-7);
        CHECK(dn == doctest::Approx(kp).epsilon(1e-12));
    }
    double sn, cn, dn;
    jacobi_real(0.7, 0.0, 1.0, sn, cn, dn);
    CHECK(sn == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
    CHECK(cn == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
}

TEST_CASE("property: complex jacobi satisfies the addition identities")
{
    Gen g(14);
    for (int i = 0; i < 25; ++i) {
        double k = g.uniform(0.05, 0.95);
        cplx u(g.uniform(-1, 1), g.uniform(-0.8, 0.8));
        auto s = jacobi_sn_cn_dn(u, k);
        CHECK(std::abs(s.sn * s.sn + s.cn * s.cn - 1.0) < 1e-11);
        CHECK(std::abs(s.dn * s.dn + k * k * s.sn * s.sn - 1.0) < 1e-11);
        // derivative of sn is cn dn
        double h = 1e-5;
        auto p = jacobi_sn_cn_dn(u + h, k), m = jacobi_sn_cn_dn(u - h, k);
        CHECK(std::abs((p.sn - m.sn) / (2 * h) - s.cn * s.dn) < 1e-8);
    }
}

TEST_CASE("gauss_legendre integrates polynomials exactly")
{
    for (int n : {1, 2, 5, 16, 64}) {
        auto q = gauss_legendre(n);
        REQUIRE(q.nodes.size() == size_t(n));
        double wsum = 0;
        for (double w : q.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int deg = 0; deg <= 2 * n - 1; deg += 1 + (n > 8) * 3) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], deg);
            double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(std::abs(s - exact) < 1e-14 * std::max(1, n));
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), vp::error);
}

TEST_CASE("gauss_legendre on a smooth function")
{
    auto q = gauss_legendre(20);
    double s = 0;
    for (int i = 0; i < 20; ++i) s += q.weights[i] * std::exp(q.nodes[i]);
    CHECK(s == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-15));
    CHECK(&gauss_legendre_cached(12) == &gauss_legendre_cached(12));
}

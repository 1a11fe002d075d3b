#include <cmath>
#include <numbers>

#include "conformal.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "gen.hpp"
#include "specialfn.hpp"

using namespace vp;
using std::numbers::pi;

namespace {

std::vector<MapPtr> families()
{
    return {make_disc(),           make_ellipse(2.0),     make_ellipse(1.3), make_rectangle(0.6),
            make_rectangle(1.0),   make_regular_polygon(5), make_sector(1),  make_sector(2),
            make_sector(4),        make_affine(make_sector(1), 2.0, {0.5, -1.0})};
}

cplx random_interior(const ConformalMap& m, Gen& g)
{
    // pull back a random point of the disc of radius 0.9
    return m.f_inverse(g.in_disc(0.9));
}

// Schwarzian of F by central differences of F along the real direction
cplx fd_schwarzian_F(const ConformalMap& m, cplx w, double h)
{
    cplx f[5];
    for (int i = 0; i < 5; ++i)
        f[i] = m.f_inverse(w + double(i - 2) * h);
    cplx d1 = (f[3] - f[1]) / (2 * h);
    cplx d2 = (f[3] - 2.0 * f[2] + f[1]) / (h * h);
    cplx d3 = (f[4] - 2.0 * f[3] + 2.0 * f[1] - f[0]) / (2 * h * h * h);
    return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

}  // namespace

TEST_CASE("xi0 is the zero of Phi with positive derivative")
{
    for (auto& m : families()) {
        CAPTURE(m->describe());
        cplx c = m->xi0();
        auto j = m->phi_jet(c);
        CHECK(std::abs(j.value()) < 1e-12);
        CHECK(std::abs(j.d1().imag()) < 1e-12);
        CHECK(j.d1().real() > 0);
    }
}

TEST_CASE("property: f_inverse inverts phi")
{
    Gen g(21);
    for (auto& m : families()) {
        CAPTURE(m->describe());
        for (int i = 0; i < 20; ++i) {
            cplx w = g.in_disc(0.95);
            cplx z = m->f_inverse(w);
            CHECK(m->contains(z));
            CHECK(std::abs(m->phi(z) - w) < 1e-10);
        }
    }
}

TEST_CASE("property: phi_jet derivatives match finite differences")
{
    Gen g(22);
    for (auto& m : families()) {
        CAPTURE(m->describe());
        for (int i = 0; i < 10; ++i) {
            cplx z = random_interior(*m, g);
            auto j = m->phi_jet(z);
            double h = 1e-4 * m->diameter();
            cplx fp = m->phi(z + h), fm = m->phi(z - h), fc = m->phi(z);
            cplx d1 = (fp - fm) / (2 * h), d2 = (fp - 2.0 * fc + fm) / (h * h);
            CHECK(std::abs(j.d1() - d1) < 1e-6 * (1 + std::abs(d1)));
            CHECK(std::abs(j.d2() - d2) < 1e-3 * (1 + std::abs(d2)));
            // holomorphic: same derivative in the imaginary direction
            cplx di = (m->phi(z + cplx(0, h)) - m->phi(z - cplx(0, h))) / (2.0 * cplx(0, h));
            CHECK(std::abs(j.d1() - di) < 1e-6 * (1 + std::abs(di)));
        }
    }
}

TEST_CASE("property: schwarzian_of_F matches finite differences")
{
    Gen g(23);
    for (auto& m : families()) {
        CAPTURE(m->describe());
        for (int i = 0; i < 5; ++i) {
            cplx w = g.in_disc(0.6);
            cplx s = m->schwarzian_of_F(w), fd = fd_schwarzian_F(*m, w, 2e-3);
            CHECK(std::abs(s - fd) < 1e-4 * (1 + std::abs(s)));
        }
    }
}

TEST_CASE("boundary behaviour")
{
    for (auto& m : families()) {
        CAPTURE(m->describe());
        auto pts = m->boundary_points(64);
        cplx c = m->xi0();
        for (auto& b : pts) {
            cplx z = c + (1 - 1e-6) * (b - c);
            if (m->contains(z))
                CHECK(std::abs(m->phi(z)) > 0.99);
        }
    }
}

TEST_CASE("disc and Moebius invariance")
{
    auto d = make_disc();
    CHECK(d->phi({0.3, 0.2}) == cplx(0.3, 0.2));
    CHECK(std::abs(d->schwarzian_of_F({0.4, -0.1})) < 1e-14);
    CHECK(d->boundary_length() == doctest::Approx(2 * pi));
    // renormalising the disc at c is a Moebius map: Schwarzian stays zero
    auto n = make_normalized(d, {0.3, 0.4});
    CHECK(std::abs(n->phi({0.3, 0.4})) < 1e-15);
    CHECK(std::abs(n->schwarzian_of_F({0.2, 0.1})) < 1e-12);
}

TEST_CASE("ellipse closed forms")
{
    auto e = make_ellipse(2.0);
    CHECK(std::abs(e->xi0()) < 1e-15);
    auto j = e->phi_jet(0.0);
    CHECK(std::abs(j.d2()) < 1e-12);
    double k, kp;
    ellipse_modulus(2.0, k, kp);
    CHECK(ellipse_axis_from_modulus(k, kp) == doctest::Approx(2.0).epsilon(1e-13));
    double K = elliptic_K(k, kp);
    // third Taylor coefficient over the cube of the first
    double a1 = j.d1().real(), a3 = std::abs(j.d3()) / 6;
    double expect = ((1 + k * k) - std::pow(pi / (2 * K), 2)) / (6 * k);
    CHECK(a3 / (a1 * a1 * a1) == doctest::Approx(std::abs(expect)).epsilon(1e-9));
    // perimeter of x^2/4 + y^2 < 1
    CHECK(e->boundary_length() == doctest::Approx(9.6884482205476762).epsilon(1e-12));
    CHECK_THROWS_AS(make_ellipse(0.9), vp::error);
}

TEST_CASE("rectangle prevertices and Schwarzian")
{
    // cos(theta1) = 0.8 gives l/L = K(0.6)/K(0.8)
    double ratio = elliptic_K(0.6) / elliptic_K(0.8);
    CHECK(std::cos(rectangle_theta1(ratio)) == doctest::Approx(0.8).epsilon(1e-12));
    for (double aspect : {0.3, 0.6, 0.877, 1.0}) {
        auto spec = rectangle_spec(aspect);
        auto v = sc_vertices(spec);
        REQUIRE(v.size() == 4);
        double l = std::abs(v[1] - v[0]), L = std::abs(v[2] - v[1]);
        CHECK(std::min(l, L) / std::max(l, L) == doctest::Approx(aspect).epsilon(1e-10));
        // right angles
        CHECK(std::abs(std::real((v[1] - v[0]) * std::conj(v[2] - v[1]))) < 1e-10 * l * L);
        auto m = make_rectangle(aspect);
        double t1 = rectangle_theta1(aspect);
        CHECK(std::abs(m->schwarzian_of_F(0.0)) == doctest::Approx(2 * std::abs(std::cos(2 * t1))).epsilon(1e-6));
    }
}

TEST_CASE("regular and symmetric polygons")
{
    for (int m : {3, 4, 5, 8}) {
        auto p = make_regular_polygon(m);
        CHECK(std::abs(p->schwarzian_of_F(0.0)) < 1e-10);
        auto v = sc_vertices(regular_polygon_spec(m));
        for (size_t i = 1; i < v.size(); ++i)
            CHECK(std::abs(v[i]) == doctest::Approx(std::abs(v[0])).epsilon(1e-10));
    }
    PolygonSpec s;
    double t = 0.5;
    s.theta = {t, pi - t, pi + t, 2 * pi - t};
    s.mu = {0.5, 0.5, 0.5, 0.5};
    auto m = make_sym_polygon(s);
    double expect = 0;
    for (int k = 0; k < 4; ++k)
        expect += s.mu[k] * std::cos(2 * s.theta[k]);
    cplx S = m->schwarzian_of_F(0.0);
    CHECK(std::abs(S.imag()) < 1e-10);
    CHECK(std::abs(S.real()) == doctest::Approx(std::abs(expect)).epsilon(1e-8));
}

TEST_CASE("sector closed forms")
{
    CHECK(sector_xi(1).real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(sector_xi(1).imag() == doctest::Approx(std::pow(2 + std::sqrt(5.0), -0.5)).epsilon(1e-15));
    cplx xi2 = std::pow(4 + std::sqrt(17.0), -0.25) / std::sqrt(2.0) * cplx(1, 1);
    CHECK(std::abs(sector_xi(2) - xi2) < 1e-15);
    for (int m : {1, 2, 3, 4}) {
        auto s = make_sector(m);
        CHECK(std::abs(s->xi0() - sector_xi(m)) < 1e-14);
        auto j = s->phi_jet(sector_xi(m));
        CHECK(std::abs(j.value()) < 1e-13);
        double t = sector_t(m), tm = std::pow(t, m), t2m = tm * tm;
        double alpha = 4 * m * std::pow(t, m - 1) * (1 + t2m) / std::pow(1 + 2 * tm - t2m, 2);
        double a = sector_a(m);
        CHECK(std::abs(j.d1() - alpha / (1 - a * a)) < 1e-12);
        CHECK(s->boundary_length() == doctest::Approx(2 + pi / m).epsilon(1e-14));
    }
}

TEST_CASE("affine map")
{
    Gen g(24);
    auto base = make_ellipse(1.7);
    auto a = make_affine(base, 0.5, {1.0, 2.0});
    CHECK(std::abs(a->xi0() - cplx(1.0, 2.0)) < 1e-15);
    for (int i = 0; i < 10; ++i) {
        cplx z = random_interior(*base, g);
        cplx za = 0.5 * z + cplx(1, 2);
        CHECK(std::abs(a->phi(za) - base->phi(z)) < 1e-14);
        CHECK(std::abs(a->phi_jet(za).d1() - 2.0 * base->phi_jet(z).d1()) < 1e-12);
        cplx w = g.in_disc(0.8);
        CHECK(std::abs(a->schwarzian_of_F(w) - base->schwarzian_of_F(w)) < 1e-10);
    }
    CHECK(a->boundary_length() == doctest::Approx(0.5 * base->boundary_length()).epsilon(1e-14));
    CHECK_THROWS(make_affine(base, 0.0, {}));
}

TEST_CASE("evaluations outside the domain fail")
{
    auto d = make_disc();
    CHECK_THROWS_AS(d->phi({1.5, 0}), vp::error);
    CHECK_THROWS_AS(make_rectangle(1.5), vp::error);
}

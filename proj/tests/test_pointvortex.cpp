#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gen.hpp"
#include "pointvortex.hpp"

using namespace vp;
using std::numbers::pi;

namespace {

PotentialField field(MapPtr m) { return PotentialField{std::move(m)}; }

double disc_period(double lam) { return 4 * pi * std::exp(-4 * lam); }

}  // namespace

TEST_CASE("disc orbits are exact circles")
{
    auto f = field(make_disc());
    for (double lam : {0.1, 0.3, 0.5, 1.0}) {
        auto o = trace_orbit(f, lam, 64);
        double rad = std::sqrt(1 - std::exp(-4 * lam));
        for (auto& p : o.samples)
            CHECK(std::abs(p) == doctest::Approx(rad).epsilon(1e-8));
        CHECK(o.period == doctest::Approx(disc_period(lam)).epsilon(1e-8));
        CHECK(o.area == doctest::Approx(pi * rad * rad).epsilon(1e-8));
        CHECK(o.h_drift < 1e-9);
    }
    CHECK(disc_period(0.25) == doctest::Approx(4.6229093991636869).epsilon(1e-15));
}

TEST_CASE("period derivative in the disc")
{
    auto f = field(make_disc());
    for (double lam : {0.2, 0.6}) {
        CHECK(period_derivative(f, lam) == doctest::Approx(-16 * pi * std::exp(-4 * lam)).epsilon(1e-5));
    }
}

TEST_CASE("period limits")
{
    auto f = field(make_disc());
    CHECK(period_at_critical(f) == doctest::Approx(4 * pi).epsilon(1e-10));
    for (double lam : {1.0, 2.0})
        CHECK(boundary_period_asymptote(f, lam) == doctest::Approx(disc_period(lam)).epsilon(1e-12));
}

TEST_CASE("property: period is the derivative of the enclosed area")
{
    // H = lambda on the orbit, dA/dlambda = T with Gamma = pi
    Gen g(41);
    for (auto m : {make_ellipse(2.0), make_rectangle(0.6), make_sector(2)}) {
        auto f = field(m);
        CAPTURE(m->describe());
        double lc = critical_level(f);
        for (int i = 0; i < 3; ++i) {
            double lam = lc + g.uniform(0.1, 0.8), h = 5e-4;
            double ap = trace_orbit(f, lam + h, 512).area, am = trace_orbit(f, lam - h, 512).area;
            double T = period(f, lam);
            CHECK((ap - am) / (2 * h) == doctest::Approx(T).epsilon(1e-5));
            CHECK(ap > am);
        }
    }
}

TEST_CASE("property: orbits conserve the Hamiltonian and close")
{
    Gen g(42);
    for (auto m : {make_ellipse(1.5), make_regular_polygon(6), make_sector(1)}) {
        auto f = field(m);
        CAPTURE(m->describe());
        double lc = critical_level(f);
        for (int i = 0; i < 3; ++i) {
            double lam = lc + g.uniform(0.05, 1.0);
            auto o = trace_orbit(f, lam, 64);
            CHECK(o.h_drift < 1e-8);
            CHECK(o.closure < 1e-8);
            for (auto& p : o.samples) {
                CHECK(m->contains(p));
                CHECK(hamiltonian(f, p) == doctest::Approx(lam).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("ellipse periods approach the boundary asymptote")
{
    auto f = field(make_ellipse(2.0));
    double T = period(f, 2.0), A = boundary_period_asymptote(f, 2.0);
    CHECK(std::abs(T - A) / T < 0.1);
}

TEST_CASE("critical level is the Hamiltonian at the centre")
{
    auto f = field(make_sector(2));
    CHECK(critical_level(f) == doctest::Approx(hamiltonian(f, orbit_center(f))).epsilon(1e-14));
    CHECK(std::abs(vortex_velocity(f, orbit_center(f))) < 1e-10);
}

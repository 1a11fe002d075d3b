#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gen.hpp"
#include "monodromy.hpp"

using namespace vp;
using std::numbers::pi;

namespace {

PotentialField field(MapPtr m) { return PotentialField{std::move(m)}; }

MonodromyResult disc_monodromy(double lam)
{
    auto f = field(make_disc());
    return monodromy_matrix(f, trace_orbit(f, lam, 256));
}

}  // namespace

TEST_CASE("constant generator gives the matrix exponential")
{
    // A = [[i a, b], [b, -i a]] with a > b: trace 2 cos(2 pi sqrt(a^2 - b^2))
    for (auto [a, b] : {std::pair{0.7, 0.2}, std::pair{1.3, 0.5}, std::pair{0.4, 0.0}}) {
        Mat2 A{cplx(0, a), b, b, cplx(0, -a)};
        auto r = integrate_monodromy([&](int) { return A; }, 4096);
        double w = std::sqrt(a * a - b * b);
        CHECK(std::abs(r.trace - 2 * std::cos(2 * pi * w)) < 1e-10);
        CHECK(std::abs(det(r.M) - 1.0) < 1e-10);
        CHECK(r.structure_gap < 1e-10);
    }
}

TEST_CASE("disc trace closed form")
{
    for (double lam : {0.05, 0.1, 0.15, 0.25, 0.35, 0.5}) {
        auto r = disc_monodromy(lam);
        CAPTURE(lam);
        CHECK(std::abs(r.trace - disc_trace(lam)) < 1e-6);
        CHECK(disc_trace(lam) == doctest::Approx(2 * std::cos(pi * std::sqrt(3.0) * (std::exp(4 * lam) - 1))));
    }
}

TEST_CASE("disc resonances")
{
    CHECK(disc_resonance(1) == doctest::Approx(0.19191293814769047).epsilon(1e-14));
    for (int k = 1; k <= 3; ++k) {
        auto r = disc_monodromy(disc_resonance(k));
        CHECK(r.trace_gap < 1e-5);
        double mid = 0.5 * (disc_resonance(k) + disc_resonance(k + 1));
        CHECK(disc_monodromy(mid).trace_gap > 1e-2);
    }
}

TEST_CASE("property: det and structure are preserved along the path")
{
    Gen g(51);
    for (auto m : {make_disc(), make_ellipse(2.0), make_rectangle(0.6), make_sector(2), make_regular_polygon(5)}) {
        auto f = field(m);
        CAPTURE(m->describe());
        double lc = critical_level(f);
        for (int i = 0; i < 2; ++i) {
            double lam = lc + g.uniform(0.05, 0.6);
            auto r = monodromy_matrix(f, trace_orbit(f, lam, 256));
            CHECK(r.path_det_drift < 1e-8);
            CHECK(r.path_structure_gap < 1e-8);
            CHECK(r.steps >= 4096);
            CHECK(std::abs(r.trace.imag()) < 1e-8);
        }
    }
}

TEST_CASE("generator has the expected structure")
{
    auto f = field(make_ellipse(1.5));
    auto o = trace_orbit(f, critical_level(f) + 0.3, 128);
    for (double phi : {0.0, 1.0, 4.0}) {
        Mat2 A = generator(f, o, phi);
        CHECK(structure_gap(A) < 1e-12);
        CHECK(std::abs(A.a.real()) < 1e-12);
    }
}

TEST_CASE("spectral verdict")
{
    Mat2 I = identity2();
    CHECK_FALSE(spectral_check(I).ok);
    Mat2 R{cplx(0.3, 0.9539392014169456), 0.0, 0.0, cplx(0.3, -0.9539392014169456)};
    auto v = spectral_check(R);
    CHECK(v.ok);
    CHECK(v.margin == doctest::Approx(1.4).epsilon(1e-12));
}

TEST_CASE("scan is deterministic and finds the first resonance")
{
    auto f = field(make_disc());
    ScanOptions opt;
    opt.jobs = 1;
    auto a = hypothesis_scan(f, 0.15, 0.25, 11, opt);
    opt.jobs = 2;
    auto b = hypothesis_scan(f, 0.15, 0.25, 11, opt);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].lambda == b.records[i].lambda);
        CHECK(a.records[i].trace == b.records[i].trace);
    }
    CHECK_FALSE(a.verdict);
    CHECK(a.worst_lambda == doctest::Approx(disc_resonance(1)).epsilon(1e-7));
}

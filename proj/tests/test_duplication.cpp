#include <cmath>
#include <numbers>

#include "doctest.h"
#include "duplication.hpp"
#include "gen.hpp"

using namespace vp;
using std::numbers::pi;

namespace {

MapPtr half_disc() { return make_sector(1); }
MapPtr quadrant() { return make_sector(2); }

}  // namespace

TEST_CASE("property: reflection is an isometric involution")
{
    Gen g(81);
    for (int i = 0; i < 50; ++i) {
        auto any = [](cplx) { return true; };
        Reflection s{g.in_box(-2, 2, -2, 2, any), g.in_box(-2, 2, -2, 2, any)};
        if (std::abs(s.w - s.z) < 1e-3)
            continue;
        cplx x = g.in_box(-3, 3, -3, 3, any), y = g.in_box(-3, 3, -3, 3, any);
        CHECK(std::abs(reflect_point(s, reflect_point(s, x)) - x) < 1e-13);
        CHECK(std::abs(reflect_point(s, s.z) - s.z) < 1e-14);
        CHECK(std::abs(reflect_point(s, s.w) - s.w) < 1e-13);
        CHECK(std::abs(reflect_point(s, x) - reflect_point(s, y)) == doctest::Approx(std::abs(x - y)).epsilon(1e-13));
        cplx v = y - x;
        CHECK(std::abs(reflect_vector(s, v) - (reflect_point(s, y) - reflect_point(s, x))) < 1e-13);
    }
}

TEST_CASE("mirror patch keeps orientation and flips the sign")
{
    auto p = circular_patch({0.3, 0.4}, 0.05, 32);
    Reflection s{0.0, 1.0};
    auto q = mirror_patch(p, s);
    CHECK(q.sign == -p.sign);
    CHECK(patch_area(q) == doctest::Approx(patch_area(p)).epsilon(1e-13));
    CHECK(std::abs(patch_centroid(q) - cplx(0.3, -0.4)) < 1e-14);
}

TEST_CASE("Green identities")
{
    Reflection real_axis{0.0, 1.0}, imag_axis{0.0, cplx(0, 1)};
    auto a = green_identity_residual(*half_disc(), *make_disc(), real_axis, 100, 3);
    CHECK(a.pairs + a.skipped == 100);
    CHECK(a.pairs > 90);
    CHECK(a.first < 1e-8);
    CHECK(a.second < 1e-8);
    CHECK(a.symmetry < 1e-8);
    auto b = green_identity_residual(*quadrant(), *half_disc(), imag_axis, 100, 4);
    CHECK(b.first < 1e-8);
    CHECK(b.second < 1e-8);
    CHECK(b.symmetry < 1e-8);
}

TEST_CASE("duplicate builds the image configuration")
{
    auto p = circular_patch({0.2, 0.5}, 0.05, 32);
    Reflection s1{0.0, 1.0}, s2{0.0, cplx(0, 1)};
    auto cfg = duplicate({p}, {s2, s1});
    REQUIRE(cfg.patches.size() == 4);
    double total = 0;
    for (auto& q : cfg.patches)
        total += q.sign;
    CHECK(total == 0.0);
    CHECK(std::abs(patch_centroid(cfg.patches[3]) - cplx(-0.2, -0.5)) < 1e-14);
    CHECK(cfg.patches[3].sign == p.sign);
    auto again = assemble(cfg, {p});
    for (size_t i = 0; i < again.size(); ++i)
        CHECK(again[i].nodes == cfg.patches[i].nodes);
}

TEST_CASE("antisymmetric configuration has an equivariant velocity")
{
    auto d = make_disc();
    auto p = circular_patch({0.3, 0.4}, 0.05, 64);
    Reflection s{0.0, 1.0};
    auto cfg = duplicate({p}, {s});
    Gen g(82);
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i)
        pts.push_back(g.in_disc(0.9));
    CHECK(velocity_equivariance(*d, cfg.patches, s, pts) < 1e-10);
}

TEST_CASE("mirrored pair stays mirrored")
{
    auto cell = half_disc();
    PotentialField f{half_disc()};
    auto o = trace_orbit(f, critical_level(f) + 0.3, 64);
    auto p = circular_patch(o.samples[0], 0.05, 64);
    auto cfg = duplicate({p}, {Reflection{0.0, 1.0}});
    auto chk = verify_duplicated_dynamics(*make_disc(), cfg, o.period / 4000, 40);
    CHECK(chk.max_deviation < 1e-8);
}

#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <vector>

#include "cli_commands.hpp"

namespace cli {

namespace {

constexpr double pi = std::numbers::pi;

struct Check {
    const char* name;
    double tol;
    std::function<double()> run;
};

vp_domain* disc()
{
    vp_domain* d = nullptr;
    check(vp_domain_disc(&d), "disc");
    return d;
}

vp_domain* sector(int m)
{
    vp_domain* d = nullptr;
    check(vp_domain_sector(m, &d), "sector");
    return d;
}

double orbit_check()
{
    Domain d(disc());
    double worst = 0;
    for (double lam : {0.1, 0.5, 1.0}) {
        vp_orbit* o = nullptr;
        check(vp_orbit_trace(d.get(), lam, 64, &o), "orbit");
        vp_orbit_info info;
        vp_orbit_get_info(o, &info);
        double x, y;
        vp_orbit_sample(o, 0, &x, &y);
        vp_orbit_destroy(o);
        double rad = std::sqrt(1 - std::exp(-4 * lam)), T = 4 * pi * std::exp(-4 * lam);
        worst = std::max({worst, std::abs(std::hypot(x, y) - rad) / rad, std::abs(info.period - T) / T});
    }
    return worst;
}

double critical_period_check()
{
    Domain d(disc());
    double T;
    check(vp_period_at_critical(d.get(), &T), "period_at_critical");
    return std::abs(T - 4 * pi) / (4 * pi);
}

double monodromy_check(bool invariants)
{
    Domain d(disc());
    double worst = 0;
    for (double lam : {0.05, 0.2, 0.4}) {
        vp_orbit* o = nullptr;
        check(vp_orbit_trace(d.get(), lam, 256, &o), "orbit");
        vp_monodromy m;
        int st = vp_monodromy_compute(o, d.get(), &m);
        vp_orbit_destroy(o);
        check(st, "monodromy");
        if (invariants)
            worst = std::max({worst, m.path_det_drift, m.path_structure_gap});
        else
            worst = std::max(worst, std::abs(m.trace_re - vp_disc_trace(lam)));
    }
    return worst;
}

double liouville_order()
{
    vp_domain* e = nullptr;
    check(vp_domain_ellipse(2.0, &e), "ellipse");
    Domain d(e);
    double r1, r2;
    check(vp_liouville_residual(d.get(), 0.4, 0.2, 0.04, &r1), "liouville");
    check(vp_liouville_residual(d.get(), 0.4, 0.2, 0.02, &r2), "liouville");
    return std::abs(r1 / r2 - 4.0);
}

double grakhov_check()
{
    double worst = 0;
    for (int m : {1, 2, 4}) {
        Domain d(sector(m));
        double x, y, g;
        check(vp_domain_xi0(d.get(), &x, &y), "xi0");
        check(vp_grakhov_residual(d.get(), x, y, &g), "grakhov");
        worst = std::max(worst, g);
    }
    return worst;
}

double admissibility_check()
{
    Domain d(disc());
    vp_admissibility r;
    check(vp_corollary_check(d.get(), 1e-8, &r), "admissibility");
    double g1;
    check(vp_rectangle_G(1, &g1), "rectangle_G");
    // the disc must be excluded and the square must be the n = 1 ratio
    return (r.verdict ? 1.0 : 0.0) + std::abs(g1 - 1.0);
}

double green_identity_check()
{
    Domain c(sector(1)), s(disc());
    double refl[4] = {0, 0, 1, 0};
    double f, g, h;
    check(vp_green_identity(c.get(), s.get(), refl, 40, 7, &f, &g, &h), "green_identity");
    return std::max({f, g, h});
}

double sector_robin_check()
{
    double worst = 0;
    for (int m : {1, 2, 3}) {
        Domain d(sector(m));
        double x, y;
        vp_domain_xi0(d.get(), &x, &y);
        for (double s : {0.6, 1.0, 1.3}) {
            double a, b;
            check(vp_robin(d.get(), s * x, s * y, &a), "robin");
            check(vp_sector_robin_images(m, s * x, s * y, &b), "sector_robin");
            worst = std::max(worst, std::abs(a - b));
        }
    }
    return worst;
}

double contour_mode_check()
{
    Domain d(disc());
    int M = 16, N = 64;
    std::vector<double> r(M * N, 0.0);
    vp_residual_info info;
    check(vp_residual(d.get(), 0.3, 0.02, M, N, r.data(), nullptr, &info), "residual");
    return info.mode_pm1;
}

double rigid_check()
{
    double om, om0, res;
    check(vp_rigid_solve(0.5, 0.0, 16, &om, &om0, nullptr, &res), "rigid");
    double exact = std::abs(om - 1.0 / (2 * (1 - 0.25)));
    check(vp_rigid_solve(0.5, 0.05, 16, &om, &om0, nullptr, &res), "rigid");
    return std::max(exact, res);
}

double patch_area_check()
{
    Domain d(disc());
    vp_patches* p = nullptr;
    check(vp_patches_create(&p), "patches");
    double lam = 0.1, r = std::sqrt(1 - std::exp(-4 * lam)), T = 4 * pi * std::exp(-4 * lam);
    double a0, a1;
    int st = vp_patches_add_circle(p, r, 0, 0.05, 64, 1.0);
    if (st == VP_OK)
        st = vp_patch_diagnostics(d.get(), p, 0, &a0, nullptr, nullptr, nullptr);
    if (st == VP_OK)
        st = vp_patches_evolve(d.get(), p, T / 2000, 100, 1);
    if (st == VP_OK)
        st = vp_patch_diagnostics(d.get(), p, 0, &a1, nullptr, nullptr, nullptr);
    vp_patches_destroy(p);
    check(st, "patch");
    return std::abs(a1 - a0) / a0;
}

double mirror_check()
{
    Domain c(sector(1)), s(disc());
    double lev;
    check(vp_critical_level(c.get(), &lev), "critical_level");
    vp_orbit* o = nullptr;
    check(vp_orbit_trace(c.get(), lev + 0.3, 64, &o), "orbit");
    vp_orbit_info info;
    vp_orbit_get_info(o, &info);
    double x, y;
    vp_orbit_sample(o, 0, &x, &y);
    vp_orbit_destroy(o);
    vp_patches* p = nullptr;
    check(vp_patches_create(&p), "patches");
    double refl[4] = {0, 0, 1, 0}, dev = 0;
    int st = vp_patches_add_circle(p, x, y, 0.05, 64, 1.0);
    if (st == VP_OK)
        st = vp_verify_duplicated(s.get(), p, refl, 1, info.period / 4000, 40, &dev);
    vp_patches_destroy(p);
    check(st, "verify");
    return dev;
}

}  // namespace

int cmd_selftest(const Common& c, const std::string& hash)
{
    std::vector<Check> checks = {
        {"disc orbit radius and period", 1e-6, orbit_check},
        {"period at the critical point", 1e-8, critical_period_check},
        {"disc monodromy trace", 1e-6, [] { return monodromy_check(false); }},
        {"det and structure along the path", 1e-8, [] { return monodromy_check(true); }},
        {"Liouville residual order (|ratio - 4|)", 0.3, liouville_order},
        {"Grakhov residual at sector centres", 1e-10, grakhov_check},
        {"disc excluded, square ratio", 1e-12, admissibility_check},
        {"Green identities half-disc/disc", 1e-8, green_identity_check},
        {"sector Robin image sum", 1e-7, sector_robin_check},
        {"modes +-1 of the zero-state functional", 1e-9, contour_mode_check},
        {"rigid solve residual, exact limit", 1e-9, rigid_check},
        {"patch area over 100 steps", 1e-7, patch_area_check},
        {"mirrored pair deviation", 1e-8, mirror_check},
    };
    Output out(c.out);
    out.line("# vpatch selftest config_hash=" + hash);
    out.line("check,value,tol,result");
    int failed = 0;
    for (auto& ck : checks) {
        double v;
        std::string err;
        try {
            v = ck.run();
        } catch (const std::exception& e) {
            v = NAN;
            err = e.what();
        }
        bool ok = v < ck.tol;
        failed += !ok;
        out.line(quote(ck.name) + "," + num(v) + "," + num(ck.tol) + "," + (ok ? "PASS" : "FAIL"));
        if (!err.empty())
            std::cerr << "error: check=\"" << ck.name << "\" message=\"" << err << "\"\n";
    }
    out.line(std::string("summary,") + std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
             ",," + (failed ? "FAIL" : "PASS"));
    return failed ? 1 : 0;
}

}  // namespace cli

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "admissibility.hpp"
#include "duplication.hpp"
#include "gen.hpp"
#include "monodromy.hpp"

using namespace vp;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

PotentialField field(MapPtr m) { return PotentialField{std::move(m)}; }

MapPtr sym_hexagon()
{
    PolygonSpec s;
    double t[3] = {0.3, 1.4, 2.2}, mu[3] = {0.3, 0.4, 0.3};
    for (int h = 0; h < 2; ++h)
        for (int k = 0; k < 3; ++k) {
            s.theta.push_back(t[k] + h * pi);
            s.mu.push_back(mu[k]);
        }
    return make_sym_polygon(s);
}

std::vector<MapPtr> all_families()
{
    return {make_disc(),     make_ellipse(2.0), make_rectangle(0.6), make_regular_polygon(5),
            make_sector(1),  make_sector(2),    sym_hexagon()};
}

// least-squares slope of log r against log eps
double loglog_slope(const std::vector<double>& eps, const std::vector<double>& r)
{
    double n = eps.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < eps.size(); ++i) {
        double x = std::log(eps[i]), y = std::log(r[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double disc_radius(double lam) { return std::sqrt(1 - std::exp(-4 * lam)); }
double disc_period(double lam) { return 4 * pi * std::exp(-4 * lam); }

// ---------------------------------------------------------------------------

Outcome disc_exactness()
{
    auto t0 = std::chrono::steady_clock::now();
    auto f = field(make_disc());
    double worst = 0;
    for (double lam : {0.1, 0.3, 0.5, 1.0}) {
        auto o = trace_orbit(f, lam, 64);
        double rad = disc_radius(lam);
        for (auto& p : o.samples)
            worst = std::max(worst, std::abs(std::abs(p) - rad) / rad);
        worst = std::max(worst, std::abs(o.period - disc_period(lam)) / disc_period(lam));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst < 1e-6 && secs < 5, fmt("max rel err %.2e (tol 1e-6), %.2f s (limit 5 s)", worst, secs)};
}

Outcome period_limits()
{
    auto f = field(make_disc());
    double Tc = period_at_critical(f);
    // quadratic extrapolation to lambda = 0 from three traced periods
    double h = 0.005, T1 = period(f, h), T2 = period(f, 2 * h), T3 = period(f, 3 * h);
    double extrap = 3 * T1 - 3 * T2 + T3;
    double e1 = std::abs(Tc - extrap) / Tc, e0 = std::abs(Tc - 4 * pi) / (4 * pi);
    double e2 = 0;
    for (double lam : {0.5, 1.0, 2.0})
        e2 = std::max(e2, std::abs(boundary_period_asymptote(f, lam) - period(f, lam)) / period(f, lam));
    auto fe = field(make_ellipse(2.0));
    double Te = period(fe, 2.0), e3 = std::abs(boundary_period_asymptote(fe, 2.0) - Te) / Te;
    bool ok = e0 < 1e-10 && e1 < 1e-3 && e2 < 1e-6 && e3 < 0.1;
    return {ok, fmt("|T_crit/4pi - 1| %.1e, extrapolation %.1e (tol 1e-3), disc asymptote %.1e (tol 1e-6), "
                    "ellipse a=2 lambda=2 %.1e (tol 0.1)",
                    e0, e1, e2, e3)};
}

Outcome monodromy_closed_form()
{
    auto f = field(make_disc());
    double worst = 0;
    for (int i = 1; i <= 10; ++i) {
        double lam = 0.045 * i;
        auto r = monodromy_matrix(f, trace_orbit(f, lam, 256));
        worst = std::max(worst, std::abs(r.trace - 2 * std::cos(pi * std::sqrt(3.0) * (std::exp(4 * lam) - 1))));
    }
    double l1 = disc_resonance(1), l2 = disc_resonance(2);
    double at = monodromy_matrix(f, trace_orbit(f, l1, 256)).trace_gap;
    double mid = monodromy_matrix(f, trace_orbit(f, 0.5 * (l1 + l2), 256)).trace_gap;
    bool ok = worst < 1e-6 && at < 1e-5 && mid > 1e-2;
    return {ok, fmt("max |Tr - closed form| %.2e (tol 1e-6), gap at lambda=%.8f %.1e (tol 1e-5), midway %.3f (> 1e-2)",
                    worst, l1, at, mid)};
}

Outcome structural_invariants()
{
    double det_w = 0, str_w = 0;
    int runs = 0;
    for (auto& m : all_families()) {
        auto f = field(m);
        double lc = critical_level(f);
        for (double off : {0.1, 0.4, 0.8}) {
            auto r = monodromy_matrix(f, trace_orbit(f, lc + off, 256));
            det_w = std::max(det_w, r.path_det_drift);
            str_w = std::max(str_w, r.path_structure_gap);
            ++runs;
        }
    }
    return {det_w < 1e-8 && str_w < 1e-8,
            fmt("%d integrations over 7 domains: max |det - 1| %.1e, max structure gap %.1e (tol 1e-8)", runs, det_w,
                str_w)};
}

Outcome liouville_order()
{
    Gen g(2024);
    double lo = 1e9, hi = 0;
    int pts = 0;
    for (auto m : {make_disc(), make_ellipse(2.0), make_rectangle(0.6), make_sector(2)}) {
        for (int i = 0; i < 20; ++i) {
            cplx z = m->f_inverse(g.in_disc(0.7));
            double h = 0.02 * boundary_delta(*m, z);
            double ratio = liouville_residual(*m, z, h) / liouville_residual(*m, z, h / 2);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            ++pts;
        }
    }
    return {lo >= 3.7 && hi <= 4.3, fmt("%d points, halving ratio in [%.4f, %.4f] (band 4 +- 0.3)", pts, lo, hi)};
}

Outcome critical_points()
{
    double grak = 0;
    for (int m : {1, 2, 4}) {
        cplx xi = std::pow(2 * m + std::sqrt(4.0 * m * m + 1), -0.5 / m) * std::polar(1.0, pi / (2 * m));
        grak = std::max(grak, grakhov_residual(*make_sector(m), xi));
    }
    Gen g(7);
    double spread = 0;
    for (auto& m : all_families()) {
        auto pts = m->boundary_points(400);
        double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
        for (auto& p : pts) {
            x0 = std::min(x0, p.real());
            x1 = std::max(x1, p.real());
            y0 = std::min(y0, p.imag());
            y1 = std::max(y1, p.imag());
        }
        std::vector<cplx> found;
        for (int s = 0; s < 3; ++s) {
            cplx seed = g.in_box(x0, x1, y0, y1, [&](cplx z) { return m->contains(z) && boundary_delta(*m, z) > 0.05; });
            found.push_back(find_critical_point(*m, seed));
        }
        for (auto& c : found)
            spread = std::max(spread, std::abs(c - found[0]));
    }
    return {grak < 1e-10 && spread < 1e-8,
            fmt("max Grakhov residual %.1e (tol 1e-10), max seed spread %.1e over 7 domains (tol 1e-8)", grak, spread)};
}

Outcome admissibility_forms()
{
    bool ok = std::abs(ellipse_g(0.0) - 1.0) < 1e-15;
    double prev = ellipse_g(0.0);
    for (int i = 1; i < 100; ++i) {
        double v = ellipse_g(0.99 * i / 99);
        ok = ok && v > prev;
        prev = v;
    }
    bool g_ok = ok;
    auto G = rectangle_excluded_ratios(50);
    bool G_ok = std::abs(G[0] - 1.0) < 1e-14;
    for (size_t i = 1; i < G.size(); ++i)
        G_ok = G_ok && G[i] < G[i - 1];
    double margin = 0;
    bool excluded = true;
    for (auto m : {make_disc(), make_regular_polygon(3), make_regular_polygon(4), make_regular_polygon(6)}) {
        auto r = corollary_check(*m);
        excluded = excluded && !r.verdict;
        margin = std::max(margin, r.forbidden_set_distance);
    }
    double rect = 0;
    for (double aspect : {0.3, 0.6, 0.9}) {
        auto r = corollary_check(*make_rectangle(aspect));
        rect = std::max(rect, std::abs(r.schwarzian_abs - 2 * std::abs(std::cos(2 * rectangle_theta1(aspect)))));
    }
    bool pass = g_ok && G_ok && excluded && margin < 1e-12 && rect < 1e-6;
    return {pass, fmt("g(0)=1 and increasing: %s, G_1=1 and decreasing: %s, disc/polygons excluded with margin %.1e, "
                      "rectangle |S| err %.1e (tol 1e-6)",
                      g_ok ? "yes" : "no", G_ok ? "yes" : "no", margin, rect)};
}

Outcome duplication_identities()
{
    auto a = green_identity_residual(*make_sector(1), *make_disc(), Reflection{0.0, 1.0}, 100, 11);
    auto b = green_identity_residual(*make_sector(2), *make_sector(1), Reflection{0.0, cplx(0, 1)}, 100, 12);
    double green_w = std::max({a.first, a.second, b.first, b.second});
    Gen g(13);
    double robin_w = 0;
    for (int m : {1, 2, 3, 4}) {
        auto s = make_sector(m);
        for (int i = 0; i < 20; ++i) {
            cplx z = s->f_inverse(g.in_disc(0.9));
            robin_w = std::max(robin_w, std::abs(sector_robin_images(m, z) - robin(*s, z)));
        }
    }
    return {green_w < 1e-8 && robin_w < 1e-7,
            fmt("Green identities %.1e on %d+%d pairs (tol 1e-8), sector Robin image sum %.1e (tol 1e-7)", green_w,
                a.pairs, b.pairs, robin_w)};
}

Outcome contour_asymptotics()
{
    const std::vector<double> eps = {0.04, 0.02, 0.01};
    const int M = 16, N = 64;
    double modes = 0, s0 = 1e9, s1 = 1e9, s2 = 1e9;
    std::string where;
    for (int dom = 0; dom < 2; ++dom) {
        auto f = field(dom == 0 ? make_disc() : make_ellipse(2.0));
        double lam = dom == 0 ? 0.3 : critical_level(f) + 0.3;
        auto o = trace_orbit(f, lam, 256);
        std::vector<double> r0, r1, r2;
        for (double e : eps) {
            TorusState z;
            z.eps = e;
            z.lambda = lam;
            z.M = M;
            z.N = N;
            z.r.assign(size_t(M) * N, 0.0);
            auto g0 = eval_residual(f, o, z);
            modes = std::max(modes, g0.mode_pm1);
            auto fo = leading_forcing(*f.map, o, e, M, N);
            double w = 0;
            for (size_t i = 0; i < fo.size(); ++i)
                w = std::max(w, std::abs(g0.values[i] - fo[i]));
            r0.push_back(w);
            r1.push_back(eval_residual(f, o, approx_solution(f, o, e, false, M, N)).max_norm);
            r2.push_back(eval_residual(f, o, approx_solution(f, o, e, true, M, N)).max_norm);
        }
        double a = loglog_slope(eps, r0), b = loglog_slope(eps, r1), c = loglog_slope(eps, r2);
        s0 = std::min(s0, a);
        s1 = std::min(s1, b);
        s2 = std::min(s2, c);
        where += fmt("%s%s slopes %.2f/%.2f/%.2f", dom ? "; " : "", dom ? "ellipse" : "disc", a, b, c);
    }
    bool ok = modes < 1e-9 && s0 >= 2.8 && s1 >= 3.7 && s2 >= 4.5;
    return {ok, fmt("modes +-1 %.1e (tol 1e-9), %s (need 2.8/3.7/4.5)", modes, where.c_str())};
}

Outcome rigid_rotation()
{
    auto z = rigid_solve(0.5, 0.0);
    bool exact = z.omega == 1.0 / (2 * (1 - 0.25)) && rigid_solve(0.2, 0.0).omega == 1.0 / (2 * (1 - 0.04));
    std::string ratios;
    bool halves = true;
    for (double q : {0.2, 0.5}) {
        double prev = 0;
        for (double e : {0.05, 0.025, 0.0125}) {
            auto r = rigid_solve(q, e);
            double d = std::abs(r.omega - r.omega0);
            if (prev > 0) {
                double ratio = prev / d;
                halves = halves && std::abs(ratio - 2) <= 0.6;
                ratios += fmt(" %.2f", ratio);
            }
            prev = d;
        }
    }
    // solved patch evolved for one revolution, compared with the initial shape in the rotating frame
    auto d = make_disc();
    double drift = 0;
    for (double q : {0.2, 0.5}) {
        double e = 0.05;
        auto r = rigid_solve(q, e);
        Patch P = rigid_patch(q, e, r.coeffs, 128);
        double Trev = 2 * pi / r.omega;
        const int steps = 4000;
        auto fr = evolve_patch(*d, P, Trev / steps, steps);
        Patch Q = fr.back().patches[0];
        cplx back = std::polar(1.0, -r.omega * fr.back().t);
        for (auto& x : Q.nodes)
            x *= back;
        drift = std::max(drift, boundary_gap(P, Q) / e);
    }
    bool ok = exact && halves && drift < 1e-4;
    return {ok, fmt("exact at eps=0: %s; |Omega-Omega0| ratio per halving:%s (band 2 +- 0.6); co-rotating drift/eps "
                    "%.1e (tol 1e-4)",
                    exact ? "yes" : "no", ratios.c_str(), drift)};
}

Outcome patch_conservation()
{
    auto d = make_disc();
    auto f = field(make_disc());
    const double lam = 0.1;
    const int M = 40;
    auto o = trace_orbit(f, lam, M);
    struct Run {
        double eps;
        int nodes, steps;
    };
    double area = 0, energy = 0;
    std::vector<double> dev, gap;
    for (Run run : {Run{0.1, 128, 2000}, Run{0.05, 256, 2000}, Run{0.025, 128, 4000}}) {
        Patch P = circular_patch(o.samples[0], run.eps, run.nodes);
        EvolveOptions eo;
        eo.record_every = run.steps / M;
        auto fr = evolve_patch(*d, P, o.period / run.steps, run.steps, eo);
        double dv = 0;
        for (size_t j = 0; j < fr.size(); ++j)
            dv = std::max(dv, std::abs(patch_centroid(fr[j].patches[0]) - o.samples[j % M]));
        dev.push_back(dv);
        gap.push_back(boundary_gap(P, fr.back().patches[0]));
        if (run.eps == 0.05) {
            auto d0 = diagnostics(*d, P), d1 = diagnostics(*d, fr.back().patches[0]);
            area = std::abs(d1.area - d0.area) / d0.area;
            energy = std::abs(d1.energy - d0.energy) / std::abs(d0.energy);
        }
    }
    double ratio = dev[0] / dev[1];
    bool monotone = gap[0] > gap[1] && gap[1] > gap[2];
    bool ok = area < 1e-6 && energy < 1e-3 && std::abs(ratio - 4) <= 1.2 && monotone;
    return {ok, fmt("area drift %.1e (tol 1e-6), energy drift %.1e (tol 1e-3), centroid deviation %.2e -> %.2e "
                    "ratio %.1f (band 4 +- 1.2), return gap %.2e %.2e %.2e %s",
                    area, energy, dev[0], dev[1], ratio, gap[0], gap[1], gap[2],
                    monotone ? "decreasing" : "not decreasing")};
}

Outcome reflection_equivariance()
{
    auto f = field(make_sector(1));
    auto o = trace_orbit(f, critical_level(f) + 0.3, 64);
    Patch P = circular_patch(o.samples[0], 0.05, 128);
    auto cfg = duplicate({P}, {Reflection{0.0, 1.0}});
    auto chk = verify_duplicated_dynamics(*make_disc(), cfg, o.period / 4000, 400);
    return {chk.max_deviation < 1e-5, fmt("half-disc pair over 0.1 T: max deviation %.1e (tol 1e-5)", chk.max_deviation)};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all = {
        {"disc exactness", disc_exactness},
        {"period limits", period_limits},
        {"monodromy closed form", monodromy_closed_form},
        {"structural ODE invariants", structural_invariants},
        {"Liouville PDE order", liouville_order},
        {"critical points", critical_points},
        {"admissibility closed forms", admissibility_forms},
        {"duplication identities", duplication_identities},
        {"contour residual asymptotics", contour_asymptotics},
        {"rigid rotation", rigid_rotation},
        {"patch evolution conservation", patch_conservation},
        {"reflection equivariance", reflection_equivariance},
    };
    int failed = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = all[i].run();
        } catch (const std::exception& e) {
            r = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !r.pass;
        std::printf("criterion %2zu %-30s %s  %s [%.1f s]\n", i + 1, all[i].name, r.pass ? "PASS" : "FAIL",
                    r.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}

#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <vector>

namespace cli {

namespace {

constexpr double pi = std::numbers::pi;

struct Orbit {
    vp_orbit* o = nullptr;
    Orbit(const vp_domain* d, double lambda, int samples) { check(vp_orbit_trace(d, lambda, samples, &o), "orbit"); }
    ~Orbit() { vp_orbit_destroy(o); }
    Orbit(const Orbit&) = delete;
    Orbit& operator=(const Orbit&) = delete;
    vp_orbit_info info() const
    {
        vp_orbit_info i;
        check(vp_orbit_get_info(o, &i), "orbit");
        return i;
    }
    std::pair<double, double> at(int j) const
    {
        double x, y;
        check(vp_orbit_sample(o, j, &x, &y), "orbit");
        return {x, y};
    }
};

struct Patches {
    vp_patches* p = nullptr;
    Patches() { check(vp_patches_create(&p), "patches"); }
    explicit Patches(vp_patches* q) : p(q) {}
    ~Patches() { vp_patches_destroy(p); }
    Patches(const Patches&) = delete;
    Patches& operator=(const Patches&) = delete;
};

bool pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void need_positive(double v, const char* name)
{
    if (!(v > 0))
        throw usage_error(std::string(name) + " must be positive");
}

}  // namespace

int cmd_robin(const DomainArgs& da, const RobinArgs& a, const Common& c, const std::string& hash)
{
    if (a.n < 2)
        throw usage_error("--n must be at least 2");
    Domain d(da);
    std::vector<double> b(2 * 512);
    check(vp_domain_boundary_points(d.get(), 512, b.data()), "boundary");
    double x0 = b[0], x1 = b[0], y0 = b[1], y1 = b[1];
    for (int j = 0; j < 512; ++j) {
        x0 = std::min(x0, b[2 * j]);
        x1 = std::max(x1, b[2 * j]);
        y0 = std::min(y0, b[2 * j + 1]);
        y1 = std::max(y1, b[2 * j + 1]);
    }
    Output out(c.out);
    CsvWriter csv(out, "robin", hash, {"x", "y", "robin", "conformal_radius", "grad_re", "grad_im"});
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            double x = x0 + (x1 - x0) * (i + 0.5) / a.n;
            double y = y0 + (y1 - y0) * (j + 0.5) / a.n;
            int inside = 0;
            check(vp_domain_contains(d.get(), x, y, &inside), "contains");
            if (!inside)
                continue;
            double r, cr, gx, gy;
            int st = vp_robin(d.get(), x, y, &r);
            if (st == VP_ERR_PROXIMITY)
                continue;
            check(st, "robin");
            check(vp_conformal_radius(d.get(), x, y, &cr), "conformal_radius");
            check(vp_robin_grad(d.get(), x, y, &gx, &gy), "robin_grad");
            csv.row(std::vector<double>{x, y, r, cr, gx, gy});
        }
    double cx, cy, lev;
    check(vp_domain_xi0(d.get(), &cx, &cy), "xi0");
    check(vp_critical_level(d.get(), &lev), "critical_level");
    std::cerr << "xi0 = " << num(cx) << "," << num(cy) << " critical_level = " << num(lev) << "\n";
    return 0;
}

int cmd_orbit(const DomainArgs& da, const OrbitArgs& a, const Common& c, const std::string& hash)
{
    if (a.samples < 8)
        throw usage_error("--samples must be at least 8");
    Domain d(da);
    Orbit o(d.get(), a.lambda, a.samples);
    auto info = o.info();
    Output out(c.out);
    CsvWriter csv(out, "orbit", hash, {"j", "phi", "x", "y", "period", "omega", "area", "h_drift", "closure"});
    for (int j = 0; j < info.samples; ++j) {
        auto [x, y] = o.at(j);
        csv.row(std::vector<double>{double(j), 2 * pi * j / info.samples, x, y, info.period, info.omega, info.area,
                                    info.h_drift, info.closure});
    }
    return 0;
}

int cmd_period_scan(const DomainArgs& da, const RangeArgs& a, const Common& c, const std::string& hash)
{
    if (a.n < 1 || !(a.hi >= a.lo))
        throw usage_error("need --n >= 1 and lambda-max >= lambda-min");
    Domain d(da);
    std::vector<double> lam(a.n), T(a.n), dT(a.n), asym(a.n);
    parallel_for(a.n, c.jobs, [&](int i) {
        lam[i] = a.n == 1 ? a.lo : a.lo + (a.hi - a.lo) * i / (a.n - 1);
        check(vp_period(d.get(), lam[i], &T[i]), "period");
        check(vp_period_derivative(d.get(), lam[i], &dT[i]), "period_derivative");
        check(vp_boundary_period_asymptote(d.get(), lam[i], &asym[i]), "asymptote");
    });
    Output out(c.out);
    CsvWriter csv(out, "period-scan", hash, {"lambda", "period", "dperiod", "boundary_asymptote"});
    for (int i = 0; i < a.n; ++i)
        csv.row(std::vector<double>{lam[i], T[i], dT[i], asym[i]});
    return 0;
}

int cmd_monodromy(const DomainArgs& da, const RangeArgs& a, const Common& c, const std::string& hash)
{
    if (a.n < 1 || !(a.hi >= a.lo))
        throw usage_error("need --n >= 1 and lambda-max >= lambda-min");
    need_positive(a.threshold, "--threshold");
    Domain d(da);
    vp_scan* s = nullptr;
    check(vp_scan_run(d.get(), a.lo, a.hi, a.n, a.threshold, c.jobs, !a.no_refine, &s), "scan");
    std::unique_ptr<vp_scan, void (*)(vp_scan*)> hold(s, vp_scan_destroy);
    bool disc = d.is_disc();
    std::vector<std::string> cols = {"lambda",    "period",  "dperiod",         "trace_re", "trace_im",
                                     "trace_gap", "verdict", "period_critical", "refined",  "failed"};
    if (disc)
        cols.push_back("closed_form_trace");
    Output out(c.out);
    CsvWriter csv(out, "monodromy", hash, cols);
    int n = vp_scan_size(s);
    for (int i = 0; i < n; ++i) {
        vp_scan_record r;
        check(vp_scan_get(s, i, &r), "scan");
        std::vector<double> row = {r.lambda,    r.period,  r.dperiod,         r.trace_re, r.trace_im,
                                   r.trace_gap, double(r.verdict), double(r.period_critical), double(r.refined),
                                   double(r.failed)};
        if (disc)
            row.push_back(vp_disc_trace(r.lambda));
        csv.row(row);
    }
    int verdict;
    double min_dT, min_gap, worst;
    check(vp_scan_summary(s, &verdict, &min_dT, &min_gap, &worst), "scan");
    std::cerr << "verdict = " << (verdict ? "pass" : "fail") << " min_abs_dperiod = " << num(min_dT)
              << " min_trace_gap = " << num(min_gap) << " worst_lambda = " << num(worst) << "\n";
    return 0;
}

int cmd_admissibility(const DomainArgs& da, double tol, const Common& c, const std::string& hash)
{
    need_positive(tol, "--tol");
    Domain d(da);
    vp_admissibility r;
    check(vp_corollary_check(d.get(), tol, &r), "admissibility");
    Output out(c.out);
    Report rep(out, "admissibility", hash);
    rep.put("domain", d.describe());
    rep.put("schwarzian_re", r.schwarzian_re);
    rep.put("schwarzian_im", r.schwarzian_im);
    rep.put("schwarzian_abs", r.schwarzian_abs);
    rep.put("forbidden_set_distance", r.distance);
    rep.put("nearest_n", long(r.nearest_n));
    rep.put("n1_hit", std::string(r.n1_hit ? "true" : "false"));
    rep.put("verdict", std::string(r.verdict ? "admissible" : "excluded"));
    return 0;
}

int cmd_residual(const DomainArgs& da, const ContourArgs& a, const Common& c, const std::string& hash)
{
    if (!pow2(a.M) || !pow2(a.N))
        throw usage_error("--M and --N must be powers of two");
    need_positive(a.eps, "--eps");
    Domain d(da);
    std::vector<double> r(size_t(a.M) * a.N, 0.0), g(r.size());
    if (a.state != "zero")
        check(vp_approx_solution(d.get(), a.lambda, a.eps, a.state == "corrected", a.M, a.N, r.data()), "approx");
    vp_residual_info info;
    check(vp_residual(d.get(), a.lambda, a.eps, a.M, a.N, r.data(), g.data(), &info), "residual");
    if (!c.out.empty()) {
        Output out(c.out);
        CsvWriter csv(out, "residual", hash, {"phi", "theta", "value"});
        for (int j = 0; j < a.M; ++j)
            for (int k = 0; k < a.N; ++k)
                csv.row(std::vector<double>{2 * pi * j / a.M, 2 * pi * k / a.N, g[size_t(j) * a.N + k]});
    }
    Output so("");
    Report rep(so, "residual", hash);
    rep.put("state", a.state);
    rep.put("max_norm", info.max_norm);
    rep.put("l2_norm", info.l2_norm);
    rep.put("mode_pm1", info.mode_pm1);
    rep.put("tail", info.tail);
    rep.put("accuracy_warning", std::string(info.accuracy_warning ? "true" : "false"));
    return 0;
}

int cmd_approx(const DomainArgs& da, const ContourArgs& a, const Common& c, const std::string& hash)
{
    if (!pow2(a.M) || !pow2(a.N))
        throw usage_error("--M and --N must be powers of two");
    need_positive(a.eps, "--eps");
    Domain d(da);
    std::vector<double> r(size_t(a.M) * a.N);
    check(vp_approx_solution(d.get(), a.lambda, a.eps, a.correction, a.M, a.N, r.data()), "approx");
    Output out(c.out);
    CsvWriter csv(out, "approx", hash, {"j", "k", "phi", "theta", "r"});
    for (int j = 0; j < a.M; ++j)
        for (int k = 0; k < a.N; ++k)
            csv.row(std::vector<double>{double(j), double(k), 2 * pi * j / a.M, 2 * pi * k / a.N,
                                        r[size_t(j) * a.N + k]});
    return 0;
}

int cmd_patch(const DomainArgs& da, const PatchArgs& a, const Common& c, const std::string& hash)
{
    need_positive(a.eps, "--eps");
    if (a.nodes < 16 || a.steps_per_period < 1 || a.periods < 1 || a.record_every < 1)
        throw usage_error("need --nodes >= 16 and positive step counts");
    Domain d(da);
    Orbit o(d.get(), a.lambda, 256);
    auto info = o.info();
    auto [px, py] = o.at(0);
    Patches init, cur;
    check(vp_patches_add_circle(init.p, px, py, a.eps, a.nodes, 1.0), "patch");
    check(vp_patches_add_circle(cur.p, px, py, a.eps, a.nodes, 1.0), "patch");
    double dt = info.period / a.steps_per_period;
    int total = a.steps_per_period * a.periods;

    double area0, cx0, cy0, e0;
    check(vp_patch_diagnostics(d.get(), cur.p, 0, &area0, &cx0, &cy0, &e0), "diagnostics");
    Output out(c.out);
    CsvWriter csv(out, "patch", hash, {"step", "t", "area", "cx", "cy", "energy"});
    csv.row(std::vector<double>{0, 0, area0, cx0, cy0, e0});
    double max_area = 0, max_energy = 0;
    for (int done = 0; done < total;) {
        int chunk = std::min(a.record_every, total - done);
        check(vp_patches_evolve(d.get(), cur.p, dt, chunk, c.jobs), "evolve");
        done += chunk;
        double ar, cx, cy, e;
        check(vp_patch_diagnostics(d.get(), cur.p, 0, &ar, &cx, &cy, &e), "diagnostics");
        max_area = std::max(max_area, std::abs(ar - area0) / area0);
        max_energy = std::max(max_energy, std::abs(e - e0) / std::abs(e0));
        csv.row(std::vector<double>{double(done), done * dt, ar, cx, cy, e});
    }
    double gap;
    check(vp_patches_gap(cur.p, 0, init.p, 0, &gap), "gap");
    std::cerr << "period = " << num(info.period) << " area_drift = " << num(max_area)
              << " energy_drift = " << num(max_energy) << " return_gap = " << num(gap) << "\n";
    return 0;
}

int cmd_rigid(const RigidArgs& a, const Common& c, const std::string& hash)
{
    if (a.modes < 2)
        throw usage_error("--modes must be at least 2");
    double om, om0, res;
    std::vector<double> coeffs(a.modes - 1);
    check(vp_rigid_solve(a.q, a.eps, a.modes, &om, &om0, coeffs.data(), &res), "rigid");
    Output so(c.out);
    Report rep(so, "rigid", hash);
    rep.put("omega", om);
    rep.put("omega0", om0);
    rep.put("omega_minus_omega0", om - om0);
    rep.put("residual", res);
    for (int n = 2; n <= a.modes; ++n)
        rep.put("a_" + std::to_string(n), coeffs[n - 2]);
    return 0;
}

int cmd_duplicate(const DuplicateArgs& a, const Common& c, const std::string& hash)
{
    bool half = a.cell == "half-disc";
    vp_domain *cell_raw = nullptr, *star_raw = nullptr;
    check(vp_domain_sector(half ? 1 : 2, &cell_raw), "domain");
    Domain cell(cell_raw);
    if (half)
        check(vp_domain_disc(&star_raw), "domain");
    else
        check(vp_domain_sector(1, &star_raw), "domain");
    Domain star(star_raw);
    double refl[4] = {0, 0, half ? 1.0 : 0.0, half ? 0.0 : 1.0};

    double first, second, sym;
    check(vp_green_identity(cell.get(), star.get(), refl, a.samples, a.seed, &first, &second, &sym), "green_identity");
    Output so(c.out);
    Report rep(so, "duplicate", hash);
    rep.put("cell", a.cell);
    rep.put("first_identity", first);
    rep.put("second_identity", second);
    rep.put("symmetry", sym);
    if (a.evolve) {
        need_positive(a.eps, "--eps");
        double lev, T;
        check(vp_critical_level(cell.get(), &lev), "critical_level");
        double lambda = lev + a.level_offset;
        Orbit o(cell.get(), lambda, 256);
        T = o.info().period;
        auto [px, py] = o.at(0);
        Patches base;
        check(vp_patches_add_circle(base.p, px, py, a.eps, a.nodes, 1.0), "patch");
        double dev;
        check(vp_verify_duplicated(star.get(), base.p, refl, 1, a.fraction * T / a.steps, a.steps, &dev), "verify");
        rep.put("lambda", lambda);
        rep.put("period", T);
        rep.put("mirror_deviation", dev);
    }
    return 0;
}

}  // namespace cli

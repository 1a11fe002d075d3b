#include "vpatch/vpatch.h"

#include <cstring>
#include <exception>
#include <string>

#include "admissibility.hpp"
#include "contour.hpp"
#include "duplication.hpp"
#include "errors.hpp"
#include "monodromy.hpp"
#include "specialfn.hpp"

struct vp_domain {
    vp::MapPtr map;
};

struct vp_orbit {
    vp::PeriodicOrbit orbit;
};

struct vp_scan {
    vp::ScanReport report;
};

struct vp_patches {
    std::vector<vp::Patch> patches;
};

namespace {

thread_local std::string last_error;

template <class F>
int guard(F&& fn)
{
    try {
        fn();
        return VP_OK;
    } catch (const vp::error& e) {
        last_error = e.what();
        return int(e.code());
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return VP_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return VP_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown exception";
        return VP_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what)
{
    if (!p)
        vp::fail(vp::errc::invalid_argument, std::string(what) + ": null pointer");
}

vp::PotentialField field(const vp_domain* d)
{
    need(d, "domain");
    return vp::PotentialField{d->map};
}

int wrap_map(vp_domain** out, vp::MapPtr (*make)())
{
    return guard([&] {
        need(out, "out");
        *out = new vp_domain{make()};
    });
}

std::vector<vp::Reflection> read_reflections(const double* refl, int n)
{
    if (n < 0 || (n > 0 && !refl))
        vp::fail(vp::errc::invalid_argument, "reflections: bad array");
    std::vector<vp::Reflection> out;
    for (int i = 0; i < n; ++i)
        out.push_back({{refl[4 * i], refl[4 * i + 1]}, {refl[4 * i + 2], refl[4 * i + 3]}});
    return out;
}

}  // namespace

extern "C" {

const char* vp_last_error(void) { return last_error.c_str(); }

const char* vp_status_name(int status)
{
    if (status < 0 || status > VP_ERR_INTERNAL)
        return "unknown";
    return vp::errc_name(vp::errc(status));
}

int vp_agm(double a, double b, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::agm(a, b);
    });
}

int vp_elliptic_K(double k, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::elliptic_K(k);
    });
}

int vp_jacobi(double u, double k, double* sn, double* cn, double* dn)
{
    return guard([&] {
        need(sn, "sn");
        need(cn, "cn");
        need(dn, "dn");
        if (!(k >= 0 && k <= 1))
            vp::fail(vp::errc::domain, "jacobi: modulus outside [0, 1]");
        vp::jacobi_real(u, k, std::sqrt((1 - k) * (1 + k)), *sn, *cn, *dn);
    });
}

int vp_gauss_legendre(int n, double* nodes, double* weights)
{
    return guard([&] {
        need(nodes, "nodes");
        need(weights, "weights");
        auto q = vp::gauss_legendre(n);
        std::copy(q.nodes.begin(), q.nodes.end(), nodes);
        std::copy(q.weights.begin(), q.weights.end(), weights);
    });
}

int vp_domain_disc(vp_domain** out) { return wrap_map(out, vp::make_disc); }

int vp_domain_ellipse(double a, vp_domain** out)
{
    return guard([&] {
        need(out, "out");
        *out = new vp_domain{vp::make_ellipse(a)};
    });
}

int vp_domain_rectangle(double aspect, vp_domain** out)
{
    return guard([&] {
        need(out, "out");
        *out = new vp_domain{vp::make_rectangle(aspect)};
    });
}

int vp_domain_regular_polygon(int m, vp_domain** out)
{
    return guard([&] {
        need(out, "out");
        *out = new vp_domain{vp::make_regular_polygon(m)};
    });
}

int vp_domain_sector(int m, vp_domain** out)
{
    return guard([&] {
        need(out, "out");
        *out = new vp_domain{vp::make_sector(m)};
    });
}

int vp_domain_sym_polygon(int n, const double* theta, const double* mu, double alpha_re, double alpha_im,
                          double beta_re, double beta_im, vp_domain** out)
{
    return guard([&] {
        need(out, "out");
        need(theta, "theta");
        need(mu, "mu");
        if (n < 3)
            vp::fail(vp::errc::invalid_argument, "sym_polygon: need at least three vertices");
        vp::PolygonSpec spec;
        spec.theta.assign(theta, theta + n);
        spec.mu.assign(mu, mu + n);
        spec.alpha = {alpha_re, alpha_im};
        spec.beta = {beta_re, beta_im};
        *out = new vp_domain{vp::make_sym_polygon(spec)};
    });
}

int vp_domain_affine(const vp_domain* base, double scale, double shift_re, double shift_im, vp_domain** out)
{
    return guard([&] {
        need(base, "base");
        need(out, "out");
        *out = new vp_domain{vp::make_affine(base->map, scale, {shift_re, shift_im})};
    });
}

int vp_domain_normalized(const vp_domain* base, double x, double y, vp_domain** out)
{
    return guard([&] {
        need(base, "base");
        need(out, "out");
        *out = new vp_domain{vp::make_normalized(base->map, {x, y})};
    });
}

void vp_domain_destroy(vp_domain* d) { delete d; }

int vp_domain_describe(const vp_domain* d, char* buf, int len)
{
    return guard([&] {
        need(d, "domain");
        need(buf, "buf");
        if (len <= 0)
            vp::fail(vp::errc::invalid_argument, "describe: empty buffer");
        std::string s = d->map->describe();
        size_t n = std::min(s.size(), size_t(len - 1));
        std::memcpy(buf, s.data(), n);
        buf[n] = 0;
    });
}

int vp_domain_contains(const vp_domain* d, double x, double y, int* inside)
{
    return guard([&] {
        need(d, "domain");
        need(inside, "inside");
        *inside = d->map->contains({x, y}) ? 1 : 0;
    });
}

int vp_domain_phi(const vp_domain* d, double x, double y, double* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        vp::Jet3 j = d->map->phi_jet({x, y});
        vp::cplx v[4] = {j.value(), j.d1(), j.d2(), j.d3()};
        for (int i = 0; i < 4; ++i) {
            out[2 * i] = v[i].real();
            out[2 * i + 1] = v[i].imag();
        }
    });
}

int vp_domain_f_inverse(const vp_domain* d, double u, double v, double* x, double* y)
{
    return guard([&] {
        need(d, "domain");
        need(x, "x");
        need(y, "y");
        vp::cplx z = d->map->f_inverse({u, v});
        *x = z.real();
        *y = z.imag();
    });
}

int vp_domain_schwarzian_F(const vp_domain* d, double u, double v, double* re, double* im)
{
    return guard([&] {
        need(d, "domain");
        need(re, "re");
        need(im, "im");
        vp::cplx s = d->map->schwarzian_of_F({u, v});
        *re = s.real();
        *im = s.imag();
    });
}

int vp_domain_xi0(const vp_domain* d, double* x, double* y)
{
    return guard([&] {
        need(d, "domain");
        need(x, "x");
        need(y, "y");
        vp::cplx z = d->map->xi0();
        *x = z.real();
        *y = z.imag();
    });
}

int vp_domain_boundary_length(const vp_domain* d, double* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        *out = d->map->boundary_length();
    });
}

int vp_domain_boundary_points(const vp_domain* d, int n, double* xy)
{
    return guard([&] {
        need(d, "domain");
        need(xy, "xy");
        if (n < 1)
            vp::fail(vp::errc::invalid_argument, "boundary_points: n < 1");
        auto pts = d->map->boundary_points(n);
        if (int(pts.size()) != n)
            vp::fail(vp::errc::internal, "boundary_points: wrong count");
        for (int j = 0; j < n; ++j) {
            xy[2 * j] = pts[j].real();
            xy[2 * j + 1] = pts[j].imag();
        }
    });
}

int vp_green(const vp_domain* d, double zx, double zy, double wx, double wy, double* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        *out = vp::green(*d->map, {zx, zy}, {wx, wy});
    });
}

int vp_robin(const vp_domain* d, double x, double y, double* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        *out = vp::robin(*d->map, {x, y});
    });
}

int vp_robin_grad(const vp_domain* d, double x, double y, double* re, double* im)
{
    return guard([&] {
        need(d, "domain");
        need(re, "re");
        need(im, "im");
        vp::cplx g = vp::robin_grad(*d->map, {x, y});
        *re = g.real();
        *im = g.imag();
    });
}

int vp_conformal_radius(const vp_domain* d, double x, double y, double* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        *out = vp::conformal_radius(*d->map, {x, y});
    });
}

int vp_liouville_residual(const vp_domain* d, double x, double y, double h, double* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        *out = vp::liouville_residual(*d->map, {x, y}, h);
    });
}

int vp_grakhov_residual(const vp_domain* d, double x, double y, double* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        *out = vp::grakhov_residual(*d->map, {x, y});
    });
}

int vp_critical_point(const vp_domain* d, double x0, double y0, double* x, double* y, double* residual)
{
    return guard([&] {
        need(d, "domain");
        need(x, "x");
        need(y, "y");
        double res = 0;
        vp::cplx c = vp::find_critical_point(*d->map, {x0, y0}, &res);
        *x = c.real();
        *y = c.imag();
        if (residual)
            *residual = res;
    });
}

int vp_critical_level(const vp_domain* d, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::critical_level(field(d));
    });
}

int vp_orbit_trace(const vp_domain* d, double lambda, int samples, vp_orbit** out)
{
    return guard([&] {
        need(out, "out");
        *out = new vp_orbit{vp::trace_orbit(field(d), lambda, samples)};
    });
}

void vp_orbit_destroy(vp_orbit* o) { delete o; }

int vp_orbit_get_info(const vp_orbit* o, vp_orbit_info* out)
{
    return guard([&] {
        need(o, "orbit");
        need(out, "out");
        const auto& p = o->orbit;
        *out = {p.lambda, p.period,     p.omega, p.area, p.center.real(), p.center.imag(), p.h_drift, p.closure,
                int(p.samples.size())};
    });
}

int vp_orbit_sample(const vp_orbit* o, int j, double* x, double* y)
{
    return guard([&] {
        need(o, "orbit");
        need(x, "x");
        need(y, "y");
        if (j < 0 || j >= int(o->orbit.samples.size()))
            vp::fail(vp::errc::invalid_argument, "orbit_sample: index out of range");
        *x = o->orbit.samples[j].real();
        *y = o->orbit.samples[j].imag();
    });
}

int vp_period(const vp_domain* d, double lambda, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::period(field(d), lambda);
    });
}

int vp_period_derivative(const vp_domain* d, double lambda, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::period_derivative(field(d), lambda);
    });
}

int vp_period_at_critical(const vp_domain* d, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::period_at_critical(field(d));
    });
}

int vp_boundary_period_asymptote(const vp_domain* d, double lambda, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::boundary_period_asymptote(field(d), lambda);
    });
}

int vp_monodromy_compute(const vp_orbit* o, const vp_domain* d, vp_monodromy* out)
{
    return guard([&] {
        need(o, "orbit");
        need(out, "out");
        auto r = vp::monodromy_matrix(field(d), o->orbit);
        vp::cplx m[4] = {r.M.a, r.M.b, r.M.c, r.M.d};
        for (int i = 0; i < 4; ++i) {
            out->m[2 * i] = m[i].real();
            out->m[2 * i + 1] = m[i].imag();
        }
        out->trace_re = r.trace.real();
        out->trace_im = r.trace.imag();
        out->trace_gap = r.trace_gap;
        out->det_drift = r.det_drift;
        out->structure_gap = r.structure_gap;
        out->path_det_drift = r.path_det_drift;
        out->path_structure_gap = r.path_structure_gap;
        out->steps = r.steps;
    });
}

double vp_disc_trace(double lambda) { return vp::disc_trace(lambda); }
double vp_disc_resonance(int k) { return vp::disc_resonance(k); }

int vp_scan_run(const vp_domain* d, double lo, double hi, int n, double threshold, int jobs, int refine, vp_scan** out)
{
    return guard([&] {
        need(out, "out");
        vp::ScanOptions opt;
        opt.threshold = threshold;
        opt.jobs = jobs;
        opt.refine = refine != 0;
        *out = new vp_scan{vp::hypothesis_scan(field(d), lo, hi, n, opt)};
    });
}

void vp_scan_destroy(vp_scan* s) { delete s; }

int vp_scan_size(const vp_scan* s) { return s ? int(s->report.records.size()) : 0; }

int vp_scan_get(const vp_scan* s, int i, vp_scan_record* out)
{
    return guard([&] {
        need(s, "scan");
        need(out, "out");
        if (i < 0 || i >= int(s->report.records.size()))
            vp::fail(vp::errc::invalid_argument, "scan_get: index out of range");
        const auto& r = s->report.records[i];
        *out = {r.lambda,         r.period,    r.dperiod, r.trace.real(), r.trace.imag(), r.trace_gap, r.verdict,
                r.refined,        r.period_critical, !r.error.empty()};
    });
}

int vp_scan_summary(const vp_scan* s, int* verdict, double* min_abs_dperiod, double* min_trace_gap, double* worst_lambda)
{
    return guard([&] {
        need(s, "scan");
        if (verdict)
            *verdict = s->report.verdict;
        if (min_abs_dperiod)
            *min_abs_dperiod = s->report.min_abs_dperiod;
        if (min_trace_gap)
            *min_trace_gap = s->report.min_trace_gap;
        if (worst_lambda)
            *worst_lambda = s->report.worst_lambda;
    });
}

int vp_corollary_check(const vp_domain* d, double tol, vp_admissibility* out)
{
    return guard([&] {
        need(d, "domain");
        need(out, "out");
        auto r = vp::corollary_check(*d->map, tol);
        *out = {r.schwarzian.real(), r.schwarzian.imag(), r.schwarzian_abs, r.forbidden_set_distance,
                r.nearest_n,         r.n1_hit,            r.verdict};
    });
}

int vp_ellipse_g(double k, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::ellipse_g(k);
    });
}

int vp_rectangle_G(int n, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::rectangle_G(n);
    });
}

int vp_rectangle_check(double ratio, int n_max, double tol, double* distance, int* nearest_n, int* verdict)
{
    return guard([&] {
        auto r = vp::rectangle_check(ratio, n_max, tol);
        if (distance)
            *distance = r.distance;
        if (nearest_n)
            *nearest_n = r.nearest_n;
        if (verdict)
            *verdict = r.verdict;
    });
}

int vp_residual(const vp_domain* d, double lambda, double eps, int M, int N, const double* r, double* values,
                vp_residual_info* info)
{
    return guard([&] {
        need(r, "r");
        auto f = field(d);
        auto orbit = vp::trace_orbit(f, lambda, M);
        vp::TorusState st;
        st.eps = eps;
        st.lambda = lambda;
        st.M = M;
        st.N = N;
        st.r.assign(r, r + size_t(M) * N);
        auto res = vp::eval_residual(f, orbit, st);
        if (values)
            std::copy(res.values.begin(), res.values.end(), values);
        if (info)
            *info = {res.max_norm, res.l2_norm, res.mode_pm1, res.tail, res.accuracy_warning};
    });
}

int vp_approx_solution(const vp_domain* d, double lambda, double eps, int with_correction, int M, int N,
                       double* r_out)
{
    return guard([&] {
        need(r_out, "r_out");
        auto f = field(d);
        auto orbit = vp::trace_orbit(f, lambda, M);
        auto st = vp::approx_solution(f, orbit, eps, with_correction != 0, M, N);
        std::copy(st.r.begin(), st.r.end(), r_out);
    });
}

int vp_patches_create(vp_patches** out)
{
    return guard([&] {
        need(out, "out");
        *out = new vp_patches;
    });
}

void vp_patches_destroy(vp_patches* p) { delete p; }

int vp_patches_add_circle(vp_patches* p, double x, double y, double eps, int nodes, double sign)
{
    return guard([&] {
        need(p, "patches");
        auto c = vp::circular_patch({x, y}, eps, nodes);
        c.sign = sign;
        p->patches.push_back(std::move(c));
    });
}

int vp_patches_add_nodes(vp_patches* p, const double* xy, int nodes, double eps, double sign)
{
    return guard([&] {
        need(p, "patches");
        need(xy, "xy");
        if (nodes < 8 || eps <= 0)
            vp::fail(vp::errc::invalid_argument, "add_nodes: need at least 8 nodes and eps > 0");
        vp::Patch q;
        q.eps = eps;
        q.sign = sign;
        for (int j = 0; j < nodes; ++j)
            q.nodes.emplace_back(xy[2 * j], xy[2 * j + 1]);
        p->patches.push_back(std::move(q));
    });
}

int vp_patches_count(const vp_patches* p) { return p ? int(p->patches.size()) : 0; }

int vp_patches_size(const vp_patches* p, int i)
{
    if (!p || i < 0 || i >= int(p->patches.size()))
        return 0;
    return int(p->patches[i].nodes.size());
}

int vp_patches_get(const vp_patches* p, int i, double* xy, double* eps, double* sign)
{
    return guard([&] {
        need(p, "patches");
        if (i < 0 || i >= int(p->patches.size()))
            vp::fail(vp::errc::invalid_argument, "patches_get: index out of range");
        const auto& q = p->patches[i];
        if (xy)
            for (size_t j = 0; j < q.nodes.size(); ++j) {
                xy[2 * j] = q.nodes[j].real();
                xy[2 * j + 1] = q.nodes[j].imag();
            }
        if (eps)
            *eps = q.eps;
        if (sign)
            *sign = q.sign;
    });
}

int vp_patches_evolve(const vp_domain* d, vp_patches* p, double dt, int steps, int jobs)
{
    return guard([&] {
        need(d, "domain");
        need(p, "patches");
        vp::EvolveOptions opt;
        opt.jobs = jobs;
        auto frames = vp::evolve_patches(*d->map, p->patches, dt, steps, opt);
        p->patches = frames.back().patches;
    });
}

int vp_patches_gap(const vp_patches* a, int i, const vp_patches* b, int j, double* gap)
{
    return guard([&] {
        need(a, "a");
        need(b, "b");
        need(gap, "gap");
        if (i < 0 || i >= int(a->patches.size()) || j < 0 || j >= int(b->patches.size()))
            vp::fail(vp::errc::invalid_argument, "patches_gap: index out of range");
        *gap = vp::boundary_gap(a->patches[i], b->patches[j]);
    });
}

int vp_patch_diagnostics(const vp_domain* d, const vp_patches* p, int i, double* area, double* cx, double* cy,
                         double* energy)
{
    return guard([&] {
        need(d, "domain");
        need(p, "patches");
        if (i < 0 || i >= int(p->patches.size()))
            vp::fail(vp::errc::invalid_argument, "diagnostics: index out of range");
        auto r = vp::diagnostics(*d->map, p->patches[i], energy != nullptr);
        if (area)
            *area = r.area;
        if (cx)
            *cx = r.centroid.real();
        if (cy)
            *cy = r.centroid.imag();
        if (energy)
            *energy = r.energy;
    });
}

int vp_rigid_solve(double q, double eps, int modes, double* omega, double* omega0, double* coeffs, double* residual)
{
    return guard([&] {
        vp::RigidOptions opt;
        opt.modes = modes;
        auto r = vp::rigid_solve(q, eps, opt);
        if (omega)
            *omega = r.omega;
        if (omega0)
            *omega0 = r.omega0;
        if (coeffs)
            std::copy(r.coeffs.begin(), r.coeffs.end(), coeffs);
        if (residual)
            *residual = r.residual;
    });
}

int vp_reflect_point(double zx, double zy, double wx, double wy, double x, double y, double* rx, double* ry)
{
    return guard([&] {
        need(rx, "rx");
        need(ry, "ry");
        vp::cplx r = vp::reflect_point({{zx, zy}, {wx, wy}}, {x, y});
        *rx = r.real();
        *ry = r.imag();
    });
}

int vp_patches_duplicate(const vp_patches* base, const double* refl, int nrefl, vp_patches** out)
{
    return guard([&] {
        need(base, "base");
        need(out, "out");
        auto cfg = vp::duplicate(base->patches, read_reflections(refl, nrefl));
        *out = new vp_patches{std::move(cfg.patches)};
    });
}

int vp_green_identity(const vp_domain* d, const vp_domain* dstar, const double* refl, int samples, unsigned seed,
                      double* first, double* second, double* symmetry)
{
    return guard([&] {
        need(d, "domain");
        need(dstar, "dstar");
        auto s = read_reflections(refl, 1);
        auto r = vp::green_identity_residual(*d->map, *dstar->map, s[0], samples, seed);
        if (first)
            *first = r.first;
        if (second)
            *second = r.second;
        if (symmetry)
            *symmetry = r.symmetry;
    });
}

int vp_sector_robin_images(int m, double x, double y, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = vp::sector_robin_images(m, {x, y});
    });
}

int vp_verify_duplicated(const vp_domain* dstar, const vp_patches* base, const double* refl, int nrefl, double dt,
                         int steps, double* deviation)
{
    return guard([&] {
        need(dstar, "dstar");
        need(base, "base");
        need(deviation, "deviation");
        auto cfg = vp::duplicate(base->patches, read_reflections(refl, nrefl));
        *deviation = vp::verify_duplicated_dynamics(*dstar->map, cfg, dt, steps).max_deviation;
    });
}

}  // extern "C"

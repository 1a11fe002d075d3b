#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "contour.hpp"
#include "errors.hpp"
#include "specialfn.hpp"
#include "spectral.hpp"

namespace vp {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

inline cplx recip(cplx w) { return std::conj(w) / std::norm(w); }

struct PatchCache {
    std::vector<cplx> dz;       // z'(alpha)
    std::vector<cplx> phi, d1;  // Phi and Phi' at the nodes
    std::vector<cplx> half_ratio;  // Phi'' / (2 Phi')
    cplx c;
};

PatchCache make_cache(const ConformalMap& map, const Patch& p)
{
    PatchCache pc;
    int n = int(p.nodes.size());
    pc.dz = spectral_derivative(p.nodes);
    pc.phi.resize(n);
    pc.d1.resize(n);
    pc.half_ratio.resize(n);
    pc.c = 0.0;
    for (int j = 0; j < n; ++j) {
        Jet3 jt = map.phi_jet(p.nodes[j]);
        pc.phi[j] = jt.c[0];
        pc.d1[j] = jt.d1();
        pc.half_ratio[j] = jt.d2() / (2.0 * jt.d1());
        pc.c += p.nodes[j];
    }
    pc.c /= double(n);
    return pc;
}

template <class Fn>
void parallel_for(int n, int jobs, Fn fn)
{
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++)
                fn(i);
        });
    for (auto& th : pool)
        th.join();
}

// (i s / (pi eps^2)) conj(int_D dz G(x, zeta) dA) for x outside the patch
cplx far_velocity(const Patch& q, const PatchCache& qc, cplx phx, cplx d1x)
{
    int n = int(q.nodes.size());
    cplx hol = 0.0, anti = 0.0;
    for (int j = 0; j < n; ++j) {
        cplx w = std::conj(q.nodes[j] - qc.c) * qc.dz[j];
        hol += w * d1x / (phx - qc.phi[j]);
        anti += std::conj(q.nodes[j] - qc.c) * std::conj(d1x) * qc.phi[j] / (1.0 - std::conj(phx) * qc.phi[j]) *
                qc.dz[j];
    }
    double h = 2 * pi / n;
    cplx Ih = hol * h / (2.0 * I);
    cplx Ia = std::conj(anti * h / (2.0 * I));
    cplx integral = 0.5 * (Ih + Ia);
    return I * q.sign / (pi * q.eps * q.eps) * std::conj(integral);
}

}  // namespace

Patch patch_from_slice(cplx p, double eps, const std::vector<double>& r_slice, int nodes)
{
    std::vector<double> r = int(r_slice.size()) == nodes ? r_slice : trig_resample(r_slice, nodes);
    Patch P;
    P.eps = eps;
    P.nodes.resize(nodes);
    for (int k = 0; k < nodes; ++k) {
        double R = std::sqrt(1 + 2 * eps * r[k]);
        P.nodes[k] = p + eps * R * std::polar(1.0, 2 * pi * k / nodes);
    }
    return P;
}

Patch circular_patch(cplx p, double eps, int nodes) { return patch_from_slice(p, eps, std::vector<double>(nodes, 0.0), nodes); }

std::vector<std::vector<cplx>> patch_velocities(const ConformalMap& map, const std::vector<Patch>& patches, int jobs)
{
    std::vector<PatchCache> cache;
    for (auto& p : patches)
        cache.push_back(make_cache(map, p));
    std::vector<std::vector<cplx>> vel(patches.size());
    for (size_t a = 0; a < patches.size(); ++a) {
        const Patch& P = patches[a];
        const PatchCache& pc = cache[a];
        int n = int(P.nodes.size());
        std::vector<double> W = log_sine_weights(n);
        vel[a].assign(n, 0.0);
        double h = 2 * pi / n;
        std::vector<double> logsin(n, 0.0);
        for (int d = 1; d < n; ++d)
            logsin[d] = std::log(std::abs(2 * std::sin(pi * d / n)));
        std::vector<cplx> wt(n);
        for (int j = 0; j < n; ++j)
            wt[j] = std::conj(P.nodes[j] - pc.c) * pc.dz[j];
        parallel_for(n, jobs, [&](int i) {
            cplx zi = P.nodes[i];
            cplx ulog = 0.0;
            cplx hol = 0.0, anti = 0.0;
            cplx phx = pc.phi[i], d1x = pc.d1[i], cphx = std::conj(phx);
            for (int j = 0; j < n; ++j) {
                int d = i >= j ? i - j : i - j + n;
                double S;
                cplx A;
                if (d == 0) {
                    S = std::log(std::abs(pc.dz[i]));
                    A = pc.half_ratio[i];
                } else {
                    cplx dz = zi - P.nodes[j];
                    double nz = std::norm(dz);
                    S = 0.5 * std::log(nz) - logsin[d];
                    A = d1x * recip(phx - pc.phi[j]) - std::conj(dz) / nz;
                }
                ulog += (W[d] + S / n) * pc.dz[j];
                hol += wt[j] * A;
                anti += wt[j] * pc.phi[j] * recip(1.0 - cphx * pc.phi[j]);
            }
            anti *= std::conj(d1x);
            cplx u = -P.sign / (2 * pi * P.eps * P.eps) * 2.0 * pi * ulog;
            cplx Ih = hol * h / (2.0 * I);
            cplx Ia = std::conj(anti * h / (2.0 * I));
            u += I * P.sign / (pi * P.eps * P.eps) * std::conj(0.5 * (Ih + Ia));
            for (size_t b = 0; b < patches.size(); ++b)
                if (b != a)
                    u += far_velocity(patches[b], cache[b], phx, d1x);
            vel[a][i] = u;
        });
    }
    return vel;
}

std::vector<cplx> induced_velocity(const ConformalMap& map, const std::vector<Patch>& patches,
                                   const std::vector<cplx>& points)
{
    std::vector<PatchCache> cache;
    for (auto& p : patches)
        cache.push_back(make_cache(map, p));
    std::vector<cplx> u(points.size(), 0.0);
    for (size_t i = 0; i < points.size(); ++i) {
        Jet3 jt = map.phi_jet(points[i]);
        for (size_t b = 0; b < patches.size(); ++b)
            u[i] += far_velocity(patches[b], cache[b], jt.c[0], jt.d1());
    }
    return u;
}

double patch_area(const Patch& p)
{
    std::vector<cplx> dz = spectral_derivative(p.nodes);
    double s = 0;
    for (size_t j = 0; j < dz.size(); ++j)
        s += std::imag(std::conj(p.nodes[j]) * dz[j]);
    return 0.5 * s * 2 * pi / dz.size();
}

cplx patch_centroid(const Patch& p)
{
    std::vector<cplx> dz = spectral_derivative(p.nodes);
    cplx s = 0.0;
    for (size_t j = 0; j < dz.size(); ++j)
        s += std::norm(p.nodes[j]) * dz[j];
    s *= 2 * pi / dz.size();
    return s / (2.0 * I * patch_area(p));
}

double patch_energy(const ConformalMap& map, const Patch& p, int radial)
{
    int n = int(p.nodes.size());
    std::vector<cplx> dz = spectral_derivative(p.nodes);
    // log part through the boundary identity with F(d) = d^2 (log d - 1) / 4
    double h = 2 * pi / n;
    double slog = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            double d = std::abs(p.nodes[i] - p.nodes[j]);
            double F = 0.25 * d * d * (std::log(d) - 1);
            slog += F * std::real(dz[i] * std::conj(dz[j]));
        }
    slog *= -h * h;

    // regular part on a fan rule around the node mean
    int na = std::max(16, n / 4);
    std::vector<cplx> zs = int(p.nodes.size()) == na ? p.nodes : trig_resample(p.nodes, na);
    std::vector<cplx> dzs = spectral_derivative(zs);
    cplx c = 0.0;
    for (cplx z : zs)
        c += z;
    c /= double(na);
    const QuadratureRule& gl = gauss_legendre_cached(radial);
    std::vector<cplx> pts, ph, d1;
    std::vector<double> wts;
    for (int a = 0; a < na; ++a) {
        cplx w = zs[a] - c;
        double jac = std::imag(std::conj(w) * dzs[a]);
        for (int k = 0; k < radial; ++k) {
            double s = 0.5 * (gl.nodes[k] + 1);
            cplx z = c + s * w;
            Jet3 jt = map.phi_jet(z);
            pts.push_back(z);
            ph.push_back(jt.c[0]);
            d1.push_back(jt.d1());
            wts.push_back(0.5 * gl.weights[k] * s * jac * (2 * pi / na));
        }
    }
    double sK = 0;
    size_t m = pts.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            cplx dd = (i == j || pts[i] == pts[j]) ? d1[i] : (ph[i] - ph[j]) / (pts[i] - pts[j]);
            double K = std::log(std::abs(dd / (1.0 - ph[i] * std::conj(ph[j]))));
            sK += wts[i] * wts[j] * K;
        }
    double e = p.eps;
    return 0.5 * (slog + sK) / (2 * pi * e * e * e * e);
}

PatchDiagnostics diagnostics(const ConformalMap& map, const Patch& p, bool with_energy)
{
    PatchDiagnostics d;
    d.area = patch_area(p);
    d.centroid = patch_centroid(p);
    if (with_energy)
        d.energy = patch_energy(map, p);
    return d;
}

namespace {

double one_sided_gap(const Patch& a, const Patch& b)
{
    int dense = 16 * int(a.nodes.size());
    std::vector<cplx> c = trig_resample(a.nodes, dense);
    double worst = 0;
    for (cplx x : b.nodes) {
        int best = 0;
        double bd = 1e300;
        for (int j = 0; j < dense; ++j) {
            double d = std::norm(c[j] - x);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        double dist = std::sqrt(bd);
        for (int o : {-1, 0}) {
            cplx p = c[(best + o + dense) % dense], q = c[(best + o + 1) % dense];
            cplx e = q - p;
            double t = std::clamp(std::real(std::conj(e) * (x - p)) / std::norm(e), 0.0, 1.0);
            dist = std::min(dist, std::abs(p + t * e - x));
        }
        worst = std::max(worst, dist);
    }
    return worst;
}

}  // namespace

double boundary_gap(const Patch& a, const Patch& b) { return std::max(one_sided_gap(a, b), one_sided_gap(b, a)); }

void check_simple(const Patch& p)
{
    int n = int(p.nodes.size());
    auto cross = [](cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); };
    for (int i = 0; i < n; ++i) {
        cplx a = p.nodes[i], b = p.nodes[(i + 1) % n];
        double xmin = std::min(a.real(), b.real()), xmax = std::max(a.real(), b.real());
        double ymin = std::min(a.imag(), b.imag()), ymax = std::max(a.imag(), b.imag());
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1)
                continue;
            cplx c = p.nodes[j], d = p.nodes[(j + 1) % n];
            if (std::max(c.real(), d.real()) < xmin || std::min(c.real(), d.real()) > xmax ||
                std::max(c.imag(), d.imag()) < ymin || std::min(c.imag(), d.imag()) > ymax)
                continue;
            double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
            double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
            if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)))
                fail(errc::topology, "patch boundary self-intersects");
        }
    }
}

namespace {

using Field = std::vector<std::vector<cplx>>;

// exact flow of the self induction linearized about a circle plus a strain S acting from the
// positive modes: c_k -> e^{i W t} c_k for k >= 1, and for k <= 0
// c_k -> c_k + conj(c_{2-k}) (e^{-i W t} - 1) + S conj(c_{-k}) (e^{-i W t} - 1) / (-i W)
struct LinearModel {
    double W = 0;
    cplx S;
};

std::vector<cplx> kelvin_flow(const std::vector<cplx>& x, const LinearModel& L, double tau)
{
    double W = L.W;
    int n = int(x.size());
    std::vector<cplx> c = fft(x);
    std::vector<cplx> out = c;
    cplx e = std::polar(1.0, W * tau);
    for (int i = 0; i < n; ++i) {
        int k = freq_of(i, n);
        if (k >= 1) {
            out[i] = e * c[i];
        } else {
            int p = 2 - k;
            if (p < n / 2)
                out[i] += std::conj(c[p]) * (std::conj(e) - 1.0);
            if (k < 0 && -k < n / 2)
                out[i] += L.S * std::conj(c[-k]) * (std::conj(e) - 1.0) / cplx(0.0, -W);
        }
    }
    std::vector<cplx> r = ifft(out);
    return r;
}

Field propagate(const Field& x, const std::vector<LinearModel>& L, double tau)
{
    Field r(x.size());
    for (size_t a = 0; a < x.size(); ++a)
        r[a] = kelvin_flow(x[a], L[a], tau);
    return r;
}

// the same linear operator applied to x
Field kelvin_apply(const Field& x, const std::vector<LinearModel>& L)
{
    Field r(x.size());
    for (size_t a = 0; a < x.size(); ++a) {
        int n = int(x[a].size());
        double W = L[a].W;
        std::vector<cplx> c = fft(x[a]), out(n, 0.0);
        const cplx I(0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            int k = freq_of(i, n);
            if (k >= 1)
                out[i] = I * W * c[i];
            else {
                if (2 - k < n / 2)
                    out[i] = -I * W * std::conj(c[2 - k]);
                if (k < 0 && -k < n / 2)
                    out[i] += L[a].S * std::conj(c[-k]);
            }
        }
        r[a] = ifft(out);
    }
    return r;
}

// B of the least squares fit u ~ u0 + A (z - m) + B conj(z - m)
cplx strain_fit(const std::vector<cplx>& z, const std::vector<cplx>& u)
{
    cplx m = 0.0, um = 0.0;
    for (size_t j = 0; j < z.size(); ++j) {
        m += z[j];
        um += u[j];
    }
    m /= double(z.size());
    um /= double(z.size());
    double dd = 0;
    cplx cc = 0.0, rhs1 = 0.0, rhs2 = 0.0;
    for (size_t j = 0; j < z.size(); ++j) {
        cplx d = z[j] - m, v = u[j] - um;
        dd += std::norm(d);
        cc += std::conj(d) * std::conj(d);
        rhs1 += std::conj(d) * v;
        rhs2 += d * v;
    }
    cplx det = dd * dd - cc * std::conj(cc);
    return (dd * rhs2 - std::conj(cc) * rhs1) / det;
}

Field axpy(const Field& x, double h, const Field& k)
{
    Field r = x;
    for (size_t a = 0; a < r.size(); ++a)
        for (size_t i = 0; i < r[a].size(); ++i)
            r[a][i] += h * k[a][i];
    return r;
}

}  // namespace

std::vector<PatchFrame> evolve_patches(const ConformalMap& map, std::vector<Patch> patches, double dt, int steps,
                                       const EvolveOptions& opt)
{
    std::vector<PatchFrame> frames;
    frames.push_back({0.0, patches});
    size_t np = patches.size();
    std::vector<LinearModel> lin(np);
    for (size_t a = 0; a < np; ++a)
        lin[a].W = patches[a].sign / (2 * patches[a].eps * patches[a].eps);
    auto velocity = [&](const Field& z) {
        std::vector<Patch> ps = patches;
        for (size_t a = 0; a < np; ++a)
            ps[a].nodes = z[a];
        return patch_velocities(map, ps, opt.jobs);
    };
    auto remove_linear = [&](const Field& z, Field u) {
        Field lz = kelvin_apply(z, lin);
        for (size_t a = 0; a < np; ++a)
            for (size_t i = 0; i < u[a].size(); ++i)
                u[a][i] -= lz[a][i];
        return u;
    };
    auto nonlinear = [&](const Field& z) { return remove_linear(z, velocity(z)); };
    Field z(np);
    for (size_t a = 0; a < np; ++a)
        z[a] = patches[a].nodes;
    // Lawson RK4 with the linearized self induction as integrating factor
    double h = dt;
    for (int s = 0; s < steps; ++s) {
        Field u0 = velocity(z);
        for (size_t a = 0; a < np; ++a) {
            lin[a].S = 0.0;
            Field self = kelvin_apply({z[a]}, {lin[a]});
            std::vector<cplx> rest(u0[a].size());
            for (size_t i = 0; i < rest.size(); ++i)
                rest[i] = u0[a][i] - self[0][i];
            lin[a].S = strain_fit(z[a], rest);
        }
        Field k1 = remove_linear(z, u0);
        Field k2 = nonlinear(propagate(axpy(z, 0.5 * h, k1), lin, 0.5 * h));
        Field zh = propagate(z, lin, 0.5 * h);
        Field k3 = nonlinear(axpy(zh, 0.5 * h, k2));
        Field k4 = nonlinear(axpy(propagate(z, lin, h), h, propagate(k3, lin, 0.5 * h)));
        Field e1 = propagate(k1, lin, h);
        Field e23 = propagate(axpy(k2, 1.0, k3), lin, 0.5 * h);
        Field zn = propagate(z, lin, h);
        for (size_t a = 0; a < np; ++a)
            for (size_t i = 0; i < z[a].size(); ++i)
                zn[a][i] += h / 6 * (e1[a][i] + 2.0 * e23[a][i] + k4[a][i]);
        z = std::move(zn);
        for (size_t a = 0; a < np; ++a) {
            patches[a].nodes = z[a];
            for (cplx v : z[a])
                if (!map.contains(v))
                    fail(errc::domain, "evolve_patch: node left the domain");
            if (opt.check_topology && ((s + 1) % 8 == 0 || s + 1 == steps))
                check_simple(patches[a]);
        }
        if ((opt.record_every > 0 && (s + 1) % opt.record_every == 0) || s + 1 == steps)
            frames.push_back({(s + 1) * dt, patches});
    }
    return frames;
}

std::vector<PatchFrame> evolve_patch(const ConformalMap& map, const Patch& patch, double dt, int steps,
                                     const EvolveOptions& opt)
{
    return evolve_patches(map, {patch}, dt, steps, opt);
}

}  // namespace vp

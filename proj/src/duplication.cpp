#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "duplication.hpp"
#include "errors.hpp"
#include "greenrobin.hpp"

namespace vp {

namespace {

cplx unit_direction(const Reflection& s)
{
    cplx d = s.w - s.z;
    if (std::abs(d) == 0 || !std::isfinite(std::abs(d)))
        fail(errc::domain, "reflection: degenerate segment");
    return d / std::abs(d);
}

}  // namespace

cplx reflect_point(const Reflection& s, cplx x)
{
    cplx e = unit_direction(s);
    return s.z + e * e * std::conj(x - s.z);
}

cplx reflect_vector(const Reflection& s, cplx v)
{
    cplx e = unit_direction(s);
    return e * e * std::conj(v);
}

Patch mirror_patch(const Patch& p, const Reflection& s)
{
    Patch m = p;
    m.sign = -p.sign;
    size_t n = p.nodes.size();
    for (size_t j = 0; j < n; ++j)
        m.nodes[j] = reflect_point(s, p.nodes[(n - j) % n]);
    return m;
}

GreenIdentityReport green_identity_residual(const ConformalMap& d, const ConformalMap& dstar, const Reflection& s,
                                            int samples, unsigned seed)
{
    std::vector<cplx> bp = d.boundary_points(512);
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (cplx z : bp) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    auto draw = [&] {
        for (;;) {
            cplx z(ux(rng), uy(rng));
            if (d.contains(z))
                return z;
        }
    };
    GreenIdentityReport rep;
    double tiny = 1e-6 * d.diameter();
    for (int i = 0; i < samples; ++i) {
        cplx x = draw(), y = draw();
        cplx sx = reflect_point(s, x), sy = reflect_point(s, y);
        if (std::abs(x - y) < tiny || boundary_delta(d, x) < tiny || boundary_delta(d, y) < tiny) {
            ++rep.skipped;
            continue;
        }
        try {
            double gs = green(dstar, x, y), gsr = green(dstar, x, sy), g = green(d, x, y);
            // second identity at x' = Sx in S(D), where G(Sx', y) = G(x, y)
            double gsx = green(dstar, sx, y), gsxr = green(dstar, sx, sy);
            rep.first = std::max(rep.first, std::abs(gs - gsr - g));
            rep.second = std::max(rep.second, std::abs(gsx - gsxr + g));
            rep.symmetry = std::max(rep.symmetry, std::abs(green(dstar, sx, sy) - gs));
            ++rep.pairs;
        } catch (const error& e) {
            if (e.code() != errc::proximity)
                throw;
            ++rep.skipped;
        }
    }
    return rep;
}

double sector_robin_images(int m, cplx z)
{
    if (m < 1)
        fail(errc::invalid_argument, "sector_robin_images: m must be positive");
    if (!(std::abs(z) < 1 && std::arg(z) > 0 && std::arg(z) < std::numbers::pi / m))
        fail(errc::domain, "sector_robin_images: point outside the sector");
    double r = -std::log(1 - std::norm(z)) - std::log(std::abs((z - std::conj(z)) / (1.0 - z * z)));
    for (int k = 1; k < m; ++k) {
        cplx w = std::polar(1.0, 2 * std::numbers::pi * k / m);
        r += green_disc(z, w * z) - green_disc(z, w * std::conj(z));
    }
    return r;
}

MultiPatchConfig duplicate(const std::vector<Patch>& base, const std::vector<Reflection>& reflections)
{
    MultiPatchConfig cfg;
    cfg.reflections = reflections;
    for (size_t i = 0; i < base.size(); ++i)
        cfg.members.push_back({int(i), 1.0, {}});
    for (size_t r = 0; r < reflections.size(); ++r) {
        size_t n = cfg.members.size();
        for (size_t i = 0; i < n; ++i) {
            PatchImage im = cfg.members[i];
            im.sign = -im.sign;
            im.reflections.push_back(int(r));
            cfg.members.push_back(im);
        }
    }
    cfg.patches = assemble(cfg, base);
    return cfg;
}

std::vector<Patch> assemble(const MultiPatchConfig& cfg, const std::vector<Patch>& base)
{
    std::vector<Patch> out;
    for (const PatchImage& im : cfg.members) {
        if (im.base < 0 || size_t(im.base) >= base.size())
            fail(errc::invalid_argument, "assemble: member refers to a missing base patch");
        Patch p = base[im.base];
        for (int r : im.reflections)
            p = mirror_patch(p, cfg.reflections[r]);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<MultiPatchConfig> duplicate_patches(const std::vector<PatchFrame>& base,
                                                const std::vector<Reflection>& reflections, const ConformalMap* cell)
{
    std::vector<MultiPatchConfig> out;
    for (const PatchFrame& f : base) {
        if (cell)
            for (const Patch& p : f.patches)
                for (cplx z : p.nodes)
                    if (!cell->contains(z))
                        fail(errc::domain, "duplicate_patches: base trajectory leaves the cell");
        out.push_back(duplicate(f.patches, reflections));
    }
    return out;
}

DuplicationCheck verify_duplicated_dynamics(const ConformalMap& dstar, const MultiPatchConfig& cfg, double dt,
                                            int steps, const EvolveOptions& opt)
{
    DuplicationCheck res;
    res.frames = evolve_patches(dstar, cfg.patches, dt, steps, opt);
    size_t nbase = 0;
    for (const PatchImage& im : cfg.members)
        if (im.reflections.empty())
            nbase = std::max(nbase, size_t(im.base) + 1);
    for (const PatchFrame& f : res.frames) {
        std::vector<Patch> base(f.patches.begin(), f.patches.begin() + nbase);
        std::vector<Patch> images = assemble(cfg, base);
        for (size_t i = 0; i < images.size(); ++i)
            for (size_t j = 0; j < images[i].nodes.size(); ++j)
                res.max_deviation = std::max(res.max_deviation, std::abs(images[i].nodes[j] - f.patches[i].nodes[j]));
    }
    return res;
}

double velocity_equivariance(const ConformalMap& dstar, const std::vector<Patch>& patches, const Reflection& s,
                             const std::vector<cplx>& points)
{
    std::vector<cplx> all = points;
    for (cplx x : points)
        all.push_back(reflect_point(s, x));
    std::vector<cplx> u = induced_velocity(dstar, patches, all);
    size_t n = points.size();
    double worst = 0;
    for (size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(u[n + i] - reflect_vector(s, u[i])));
    return worst;
}

}  // namespace vp

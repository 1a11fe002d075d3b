#include "greenrobin.hpp"

#include <cmath>

#include "errors.hpp"

namespace vp {

double green(const ConformalMap& map, cplx z, cplx w)
{
    if (z == w)
        fail(errc::pole, "green: coincident points");
    return green_disc(map.phi(z), map.phi(w));
}

double green_regular(const ConformalMap& map, cplx z, cplx w)
{
    cplx pz = map.phi(z), pw = map.phi(w);
    cplx dd;
    if (std::abs(z - w) < 1e-6 * map.diameter()) {
        cplx m = 0.5 * (z + w);
        Jet3 j = map.phi_jet(m);
        cplx h = z - w;
        dd = j.d1() + j.d3() / 24.0 * h * h;
    } else {
        dd = (pz - pw) / (z - w);
    }
    return std::log(std::abs(dd / (1.0 - pz * std::conj(pw))));
}

double robin(const ConformalMap& map, cplx z)
{
    Jet3 j = map.phi_jet(z);
    return std::log(std::abs(j.c[1]) / (1.0 - std::norm(j.c[0])));
}

double conformal_radius(const ConformalMap& map, cplx z) { return std::exp(-robin(map, z)); }

cplx robin_grad(const ConformalMap& map, cplx z)
{
    Jet3 j = map.phi_jet(z);
    cplx p = j.c[0], d1 = j.d1(), d2 = j.d2();
    return d2 / (2.0 * d1) + d1 * std::conj(p) / (1.0 - std::norm(p));
}

double hamiltonian(const PotentialField& f, cplx z) { return f.gamma / (4.0 * std::numbers::pi) * robin(*f.map, z); }

double liouville_residual(const ConformalMap& map, cplx z, double h)
{
    const cplx I(0.0, 1.0);
    cplx pts[4] = {z + h, z - h, z + I * h, z - I * h};
    for (cplx p : pts)
        if (!map.contains(p))
            fail(errc::proximity, "liouville_residual: stencil leaves the domain");
    double r0 = robin(map, z);
    double lap = 0;
    for (cplx p : pts)
        lap += robin(map, p);
    lap = (lap - 4.0 * r0) / (h * h);
    return std::abs(lap - 4.0 * std::exp(2.0 * r0));
}

double grakhov_residual(const ConformalMap& map, cplx z)
{
    Jet3 j = map.phi_jet(z);
    return 2.0 * std::abs(robin_grad(map, z)) / std::abs(j.c[1]);
}

double boundary_delta(const ConformalMap& map, cplx z) { return map.boundary_distance(z); }

cplx find_critical_point(const ConformalMap& map, cplx seed, double* residual)
{
    if (!map.contains(seed))
        fail(errc::domain, "find_critical_point: seed is not interior");
    const cplx I(0.0, 1.0);
    auto grad = [&](cplx z) {
        cplx g = robin_grad(map, z);
        return cplx(2.0 * g.real(), -2.0 * g.imag());  // (R_x, R_y)
    };
    cplx z = seed;
    cplx g = grad(z);
    for (int it = 0; it < 100; ++it) {
        if (std::abs(g) < 2e-10 || std::abs(robin_grad(map, z)) < 1e-12) {
            if (residual)
                *residual = std::abs(robin_grad(map, z));
            return z;
        }
        double h = 1e-6 * std::min(map.diameter(), map.boundary_distance(z));
        cplx gx = (grad(z + h) - grad(z - h)) / (2 * h);
        cplx gy = (grad(z + I * h) - grad(z - I * h)) / (2 * h);
        double a = gx.real(), b = gy.real(), c = gx.imag(), d = gy.imag();
        double det = a * d - b * c;
        if (det == 0.0)
            fail(errc::convergence, "find_critical_point: singular Hessian");
        double sx = -(d * g.real() - b * g.imag()) / det;
        double sy = -(-c * g.real() + a * g.imag()) / det;
        cplx step(sx, sy);
        bool ok = false;
        for (int k = 0; k < 40; ++k) {
            cplx zn = z + step;
            if (map.contains(zn) && map.boundary_distance(zn) > 0) {
                cplx gn = grad(zn);
                if (std::abs(gn) < std::abs(g)) {
                    z = zn;
                    g = gn;
                    ok = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!ok) {
            double r = std::abs(robin_grad(map, z));
            if (r < 1e-10) {
                if (residual)
                    *residual = r;
                return z;
            }
            fail(errc::convergence, "find_critical_point: stagnated with |d_z R| = " + std::to_string(r));
        }
    }
    double r = std::abs(robin_grad(map, z));
    if (residual)
        *residual = r;
    if (r > 1e-10)
        fail(errc::convergence, "find_critical_point: no convergence, |d_z R| = " + std::to_string(r));
    return z;
}

}  // namespace vp

#include "pointvortex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "errors.hpp"
#include "spectral.hpp"

namespace vp {

namespace {

constexpr double pi = std::numbers::pi;

// Dormand-Prince 5(4) on a complex state plus an extra real component
struct State {
    cplx z;
    double t;
};

using Rhs = std::function<State(const State&)>;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms)
{
    State r = y;
    for (auto& [c, k] : terms) {
        r.z += h * c * k->z;
        r.t += h * c * k->t;
    }
    return r;
}

struct DpStep {
    State y5;
    double err;
};

DpStep dp_step(const Rhs& f, const State& y, double h, const State& k1, State& k7, double tol)
{
    State k2 = f(axpy(y, h, {{1.0 / 5, &k1}}));
    State k3 = f(axpy(y, h, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}));
    State k4 = f(axpy(y, h, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}));
    State k5 = f(axpy(y, h, {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2}, {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}}));
    State k6 = f(axpy(y, h,
                      {{9017.0 / 3168, &k1}, {-355.0 / 33, &k2}, {46732.0 / 5247, &k3}, {49.0 / 176, &k4},
                       {-5103.0 / 18656, &k5}}));
    State y5 = axpy(y, h,
                    {{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4}, {-2187.0 / 6784, &k5},
                     {11.0 / 84, &k6}});
    k7 = f(y5);
    const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
    cplx ez = h * (e1 * k1.z + e3 * k3.z + e4 * k4.z + e5 * k5.z + e6 * k6.z + e7 * k7.z);
    double et = h * (e1 * k1.t + e3 * k3.t + e4 * k4.t + e5 * k5.t + e6 * k6.t + e7 * k7.t);
    double sc = tol * (1.0 + std::max(std::abs(y.z), std::abs(y5.z)));
    double st = tol * (1.0 + std::max(std::abs(y.t), std::abs(y5.t)));
    double err = std::max({std::abs(ez.real()) / sc, std::abs(ez.imag()) / sc, std::abs(et) / st});
    return {y5, err};
}

struct Integrator {
    Rhs f;
    double tol;
    double h;
    double err_prev = 1e-4;

    // one accepted step of size at most hmax; returns the step taken
    double advance(State& y, State& k1, double hmax, const std::function<bool(const State&)>& valid)
    {
        for (int tries = 0; tries < 200; ++tries) {
            double hs = std::min(h, hmax);
            State k7;
            DpStep s;
            bool ok = true;
            try {
                s = dp_step(f, y, hs, k1, k7, tol);
                ok = valid(s.y5);
            } catch (const error& e) {
                if (e.code() != errc::domain && e.code() != errc::proximity)
                    throw;
                ok = false;
            }
            if (!ok) {
                h = 0.25 * hs;
                continue;
            }
            if (s.err <= 1.0) {
                double fac = 0.9 * std::pow(std::max(s.err, 1e-12), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
                fac = std::clamp(fac, 0.2, 5.0);
                if (hs == h || fac < 1)
                    h = hs * fac;
                err_prev = std::max(s.err, 1e-4);
                y = s.y5;
                k1 = k7;
                return hs;
            }
            h = hs * std::max(0.2, 0.9 * std::pow(s.err, -0.2));
        }
        fail(errc::accuracy, "orbit integration: step size underflow");
    }
};

}  // namespace

cplx vortex_velocity(const PotentialField& f, cplx z)
{
    return cplx(0.0, f.gamma / (2 * pi)) * std::conj(robin_grad(*f.map, z));
}

cplx orbit_center(const PotentialField& f)
{
    cplx c = f.map->xi0();
    if (grakhov_residual(*f.map, c) > 1e-10)
        c = find_critical_point(*f.map, c);
    return c;
}

double critical_level(const PotentialField& f) { return hamiltonian(f, orbit_center(f)); }

PeriodicOrbit trace_orbit(const PotentialField& f, double lambda, int M, const OrbitOptions& opt)
{
    const ConformalMap& map = *f.map;
    if (M < 4)
        fail(errc::invalid_argument, "trace_orbit: need at least 4 samples");
    cplx c = orbit_center(f);
    double hmin = hamiltonian(f, c);
    if (!(lambda > hmin))
        fail(errc::domain, "trace_orbit: level is not above the critical value");

    // seed on the ray c + s, s > 0
    const cplx dir = 1.0;
    double sb_lo = 0, sb_hi = map.diameter();
    for (int it = 0; it < 200; ++it) {
        double s = 0.5 * (sb_lo + sb_hi);
        if (map.contains(c + s * dir))
            sb_lo = s;
        else
            sb_hi = s;
    }
    auto H_on_ray = [&](double s) {
        try {
            return hamiltonian(f, c + s * dir);
        } catch (const error& e) {
            if (e.code() == errc::proximity || e.code() == errc::domain)
                return 1e300;
            throw;
        }
    };
    double lo = 0, hi = sb_lo;
    if (H_on_ray(hi) < lambda)
        fail(errc::domain, "trace_orbit: level set does not cross the seed ray");
    for (int it = 0; it < 300 && hi - lo > 1e-16 * map.diameter(); ++it) {
        double s = 0.5 * (lo + hi);
        if (H_on_ray(s) < lambda)
            lo = s;
        else
            hi = s;
    }
    cplx seed = c + 0.5 * (lo + hi) * dir;

    Rhs rhs = [&](const State& y) { return State{vortex_velocity(f, y.z), 1.0}; };
    auto valid = [&](const State& y) { return map.contains(y.z) && map.boundary_distance(y.z) > 0; };
    auto section = [&](cplx z) { return std::imag((z - c) * std::conj(dir)); };

    cplx v0 = vortex_velocity(f, seed);
    double orient = std::imag(v0 * std::conj(dir));
    if (orient == 0.0)
        fail(errc::domain, "trace_orbit: seed velocity tangent to the section");
    double sgn = orient > 0 ? 1.0 : -1.0;

    double speed = std::abs(v0);
    double scale = std::max(std::abs(seed - c), 1e-3);
    Integrator in{rhs, opt.tol, 1e-3 * scale / speed};
    State y{seed, 0.0};
    State k1 = rhs(y);
    double period = -1;
    cplx zend;
    double tcap = 1e6 * scale / speed;
    bool left = false;
    for (int n = 0; n < opt.max_steps; ++n) {
        State yp = y;
        State k1p = k1;
        in.advance(y, k1, 1e300, valid);
        double s0 = section(yp.z), s1 = section(y.z);
        if (!left && sgn * s1 > 0)
            left = true;
        if (left && sgn * s0 < 0 && sgn * s1 >= 0 && std::real((y.z - c) * std::conj(dir)) > 0) {
            // switch to the section coordinate as independent variable and step to s = 0
            auto hrhs = [&](const State& q) {
                cplx v = vortex_velocity(f, q.z);
                double ds = std::imag(v * std::conj(dir));
                return State{v / ds, 1.0 / ds};
            };
            State q = yp;
            double ss = section(q.z);
            // a few steps for safety
            const int sub = 4;
            double hs = -ss / sub;
            for (int k = 0; k < sub; ++k) {
                State a1 = hrhs(q);
                State k7;
                DpStep st = dp_step(hrhs, q, hs, a1, k7, opt.tol);
                q = st.y5;
            }
            period = q.t;
            zend = q.z;
            break;
        }
        if (y.t > tcap)
            break;
        (void)k1p;
    }
    if (period <= 0)
        fail(errc::nonclosure, "trace_orbit: no return to the section");

    PeriodicOrbit o;
    o.lambda = lambda;
    o.period = period;
    o.omega = 2 * pi / period;
    o.center = c;
    o.closure = std::abs(zend - seed);

    // second pass landing on t_j = j T / M
    o.samples.resize(M);
    o.samples[0] = seed;
    Integrator in2{rhs, opt.tol, 1e-3 * scale / speed};
    y = {seed, 0.0};
    k1 = rhs(y);
    double tcur = 0;
    for (int j = 1; j < M; ++j) {
        double tj = period * j / M;
        while (tj - tcur > 1e-14 * period) {
            double h = in2.advance(y, k1, tj - tcur, valid);
            tcur += h;
            if (std::abs(tj - tcur) < 1e-14 * period)
                tcur = tj;
        }
        o.samples[j] = y.z;
    }
    double drift = 0;
    for (cplx p : o.samples)
        drift = std::max(drift, std::abs(hamiltonian(f, p) - lambda));
    o.h_drift = drift;
    if (drift > 1e-6)
        fail(errc::accuracy, "trace_orbit: Hamiltonian drift " + std::to_string(drift));
    o.area = area_enclosed(o.samples);
    return o;
}

double area_enclosed(const std::vector<cplx>& s)
{
    std::vector<cplx> c = fourier_coefficients(s);
    int n = int(c.size());
    double a = 0;
    for (int i = 0; i < n; ++i) {
        int k = freq_of(i, n);
        if (2 * std::abs(k) == n)
            continue;
        a += k * std::norm(c[i]);
    }
    return pi * a;
}

double area_enclosed(const PeriodicOrbit& o) { return area_enclosed(o.samples); }

double period(const PotentialField& f, double lambda, const OrbitOptions& opt)
{
    return trace_orbit(f, lambda, 8, opt).period;
}

double period_derivative(const PotentialField& f, double lambda, const OrbitOptions& opt)
{
    double h = 1e-3 * std::abs(lambda) + 1e-4;
    auto D = [&](double hh) { return (period(f, lambda + hh, opt) - period(f, lambda - hh, opt)) / (2 * hh); };
    return (4 * D(0.5 * h) - D(h)) / 3;
}

double period_at_critical(const PotentialField& f)
{
    cplx c = orbit_center(f);
    Jet3 j = f.map->phi_jet(c);
    double a = std::norm(j.d1());
    double b = std::abs(j.d3() / (2.0 * j.d1()));
    if (!(a > b))
        fail(errc::domain, "period_at_critical: critical point is not elliptic");
    return 4 * pi * pi / (f.gamma * std::sqrt(a * a - b * b));
}

double boundary_period_asymptote(const PotentialField& f, double lambda)
{
    double L = f.map->boundary_length();
    return 2 * pi * L / f.gamma * std::exp(-4 * pi * lambda / f.gamma);
}

}  // namespace vp

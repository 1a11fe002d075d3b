#include "admissibility.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"
#include "greenrobin.hpp"
#include "specialfn.hpp"

namespace vp {

namespace {
constexpr double pi = std::numbers::pi;

double forbidden_value(int n, double c) { return c * std::sqrt(1.0 - 1.0 / (double(n) * n)); }
}  // namespace

ForbiddenDistance forbidden_distance(double s, double c)
{
    ForbiddenDistance best{std::abs(s - c), 0};
    // the values increase with n, so only the neighbours of the continuous solution matter
    int lo = 1;
    if (s > 0 && s < c) {
        double x = s / c;
        double nstar = 1.0 / std::sqrt((1.0 - x) * (1.0 + x));
        if (nstar < 1e9)
            lo = std::max(1, int(std::floor(nstar)) - 1);
        else
            lo = 0;
    }
    if (lo > 0) {
        for (int n = lo; n <= lo + 3; ++n) {
            double d = std::abs(s - forbidden_value(n, c));
            if (d < best.distance)
                best = {d, n};
        }
    }
    if (s <= 0) {
        double d = std::abs(s);
        if (d <= best.distance)
            best = {d, 1};
    }
    return best;
}

AdmissibilityReport corollary_check(const ConformalMap& map, double tol)
{
    cplx c = map.xi0();
    Jet3 j = map.phi_jet(c);
    if (std::abs(j.c[0]) > 1e-8 || std::abs(j.c[1].imag()) > 1e-8 * std::abs(j.c[1]) || j.c[1].real() <= 0)
        fail(errc::precondition, "corollary_check: map is not normalised at xi0");
    if (grakhov_residual(map, c) > 1e-8)
        fail(errc::precondition, "corollary_check: xi0 is not a critical point of the Robin function");
    AdmissibilityReport r;
    r.schwarzian = map.schwarzian_of_F(0.0);
    r.schwarzian_abs = std::abs(r.schwarzian);
    ForbiddenDistance d = forbidden_distance(r.schwarzian_abs, 2.0);
    r.forbidden_set_distance = d.distance;
    r.nearest_n = d.nearest_n;
    r.verdict = d.distance > tol;
    r.n1_hit = !r.verdict && d.nearest_n == 1;
    return r;
}

double ellipse_g(double k)
{
    if (!(k >= 0.0 && k < 1.0))
        fail(errc::domain, "ellipse_g: k must lie in [0,1)");
    if (k == 0.0)
        return 1.0;
    double inner;  // ((1+k^2) - (pi/2K)^2) / (2k)
    if (k <= 0.5) {
        // K = (pi/2) S with S = 1 + s1; (1+k^2) - 1/S^2 = (2 s1 + s1^2 + k^2 (1+s1)^2) / S^2
        double k2 = k * k, c = 1.0, p = 1.0, s1 = 0.0;
        for (int n = 1; n < 60; ++n) {
            c *= (2.0 * n - 1) / (2.0 * n);
            p *= k2;
            double t = c * c * p;
            s1 += t;
            if (t < 1e-18 * s1)
                break;
        }
        double S = 1.0 + s1;
        inner = (2 * s1 + s1 * s1 + k2 * S * S) / (S * S) / (2 * k);
    } else {
        double q = pi / (2 * elliptic_K(k));
        inner = ((1 + k * k) - q * q) / (2 * k);
    }
    double arg = 1.0 - inner * inner;
    if (!(arg > 0))
        fail(errc::domain, "ellipse_g: outer root argument is not positive");
    return 1.0 / std::sqrt(arg);
}

std::vector<EllipseExcluded> ellipse_excluded_ratios(int n_max)
{
    if (n_max < 1)
        fail(errc::invalid_argument, "ellipse_excluded_ratios: n_max must be positive");
    std::vector<EllipseExcluded> out;
    out.push_back({1, 0.0, 1.0});
    for (int n = 2; n <= n_max; ++n) {
        // bisection in t with k = sin t
        double lo = 0, hi = 0.5 * pi;
        while (hi - lo > 1e-15) {
            double t = 0.5 * (lo + hi);
            double k = std::sin(t);
            if (k >= 1.0 || ellipse_g(k) > n)
                hi = t;
            else
                lo = t;
        }
        double t = 0.5 * (lo + hi);
        out.push_back({n, std::sin(t), ellipse_axis_from_modulus(std::sin(t), std::cos(t))});
    }
    return out;
}

double rectangle_G(int n)
{
    if (n < 1)
        fail(errc::invalid_argument, "rectangle_G: n must be positive");
    double r = std::sqrt(1.0 - 1.0 / (double(n) * n));
    double x = std::sqrt(0.5 * (1 + r));
    double xp = std::sqrt(0.5 * (1.0 / (double(n) * n)) / (1 + r));
    return modulus_ratio(x, xp);
}

std::vector<double> rectangle_excluded_ratios(int n_max)
{
    if (n_max < 1)
        fail(errc::invalid_argument, "rectangle_excluded_ratios: n_max must be positive");
    std::vector<double> g;
    for (int n = 1; n <= n_max; ++n)
        g.push_back(rectangle_G(n));
    return g;
}

RectangleCheck rectangle_check(double ratio, int n_max, double tol)
{
    if (!(ratio > 0 && ratio <= 1))
        fail(errc::domain, "rectangle_check: ratio must lie in (0,1]");
    RectangleCheck r{std::numeric_limits<double>::infinity(), 0, false};
    for (int n = 1; n <= n_max; ++n) {
        double d = std::abs(ratio - rectangle_G(n));
        if (d < r.distance)
            r = {d, n, false};
    }
    r.verdict = r.distance > tol;
    return r;
}

SymPolygonReport sym_polygon_sum(const PolygonSpec& spec, double tol)
{
    spec.validate();
    if (!spec.symmetric(1e-12))
        fail(errc::precondition, "sym_polygon_sum: spec is not centrally symmetric");
    size_t h = spec.theta.size() / 2;
    double s = 0;
    for (size_t k = 0; k < h; ++k)
        s += spec.mu[k] * std::cos(2 * spec.theta[k]);
    ForbiddenDistance d = forbidden_distance(std::abs(s), 1.0);
    return {s, d.distance, d.nearest_n, d.distance > tol};
}

}  // namespace vp

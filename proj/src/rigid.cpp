#include <cmath>
#include <numbers>

#include "contour.hpp"
#include "contour_detail.hpp"
#include "errors.hpp"
#include "specialfn.hpp"
#include "spectral.hpp"

namespace vp {

namespace {

constexpr double pi = std::numbers::pi;

void check_q(double q)
{
    if (!(std::abs(q) < 1))
        fail(errc::domain, "rigid: q must lie in (-1, 1)");
    if (std::abs(q) < 1e-12)
        fail(errc::domain, "rigid: q = 0 is the centred disc, the functional divides by eps q");
}

// sine coefficients s_n of g on n = 1..modes
std::vector<double> sine_coeffs(const std::vector<double>& g, int modes)
{
    int n = int(g.size());
    std::vector<cplx> c = fft(std::vector<cplx>(g.begin(), g.end()));
    std::vector<double> s(modes + 1, 0.0);
    for (int k = 1; k <= modes && k < n / 2; ++k)
        s[k] = -2.0 * c[k].imag() / n;
    return s;
}

}  // namespace

std::vector<double> rigid_r_grid(const std::vector<double>& coeffs, int grid)
{
    std::vector<double> r(grid, 0.0);
    for (int k = 0; k < grid; ++k) {
        double th = 2 * pi * k / grid;
        for (size_t i = 0; i < coeffs.size(); ++i)
            r[k] += coeffs[i] * std::cos((i + 2) * th);
    }
    return r;
}

std::vector<double> rigid_functional(double q, double eps, double omega, const std::vector<double>& r_grid,
                                     const RigidOptions& opt)
{
    check_q(q);
    int n = int(r_grid.size());
    if (n < 8 || (n & (n - 1)))
        fail(errc::invalid_argument, "rigid_functional: grid must be a power of two >= 8");
    double omega0 = 1 / (2 * (1 - q * q));
    std::vector<double> G(n);
    if (eps == 0) {
        // limit: -(Omega - Omega0) sin(theta) plus the linearized self induction on r
        std::vector<cplx> c = fft(std::vector<cplx>(r_grid.begin(), r_grid.end()));
        std::vector<cplx> out(n, 0.0);
        for (int i = 0; i < n; ++i) {
            int k = freq_of(i, n);
            if (std::abs(k) >= 2 && std::abs(k) < n / 2)
                out[i] = c[i] * cplx(0.0, -0.5 * (std::abs(k) - 1) * (k > 0 ? 1 : -1));
        }
        std::vector<cplx> lr = ifft(out);
        for (int k = 0; k < n; ++k)
            G[k] = -(omega - omega0) * std::sin(2 * pi * k / n) + lr[k].real();
        return G;
    }
    double eq = eps * q;
    std::vector<double> R(n), rc(n);
    for (int k = 0; k < n; ++k) {
        double a = 1 + 2 * eq * r_grid[k];
        if (a <= 0)
            fail(errc::domain, "rigid_functional: 1 + 2 eps q r must stay positive");
        R[k] = std::sqrt(a);
        rc[k] = R[k] * std::cos(2 * pi * k / n);
    }
    if (eps * (*std::max_element(R.begin(), R.end())) + std::abs(q) >= 1)
        fail(errc::domain, "rigid_functional: patch leaves the unit disc");

    std::vector<double> dr = spectral_derivative(r_grid);
    std::vector<double> drc = spectral_derivative(rc);
    std::vector<double> self = detail::self_induction(R, log_sine_weights(n));

    // boundary interaction with the image: (1/2pi) int int log|1 - (eps R e^{-i theta} + q)(eps l e^{i eta} + q)| l dl d eta
    const QuadratureRule& gl = gauss_legendre_cached(opt.gl_points);
    int m = int(gl.nodes.size());
    std::vector<cplx> za(size_t(n) * m);
    std::vector<double> wa(za.size());
    for (int e = 0; e < n; ++e) {
        cplx ph = std::polar(1.0, 2 * pi * e / n);
        for (int i = 0; i < m; ++i) {
            double s = 0.5 * (gl.nodes[i] + 1);
            za[size_t(e) * m + i] = eps * s * R[e] * ph + q;
            wa[size_t(e) * m + i] = 0.5 * gl.weights[i] * s * R[e] * R[e] / n;
        }
    }
    std::vector<double> img(n);
    for (int k = 0; k < n; ++k) {
        cplx b = eps * R[k] * std::polar(1.0, -2 * pi * k / n) + q;
        double acc = 0;
        for (size_t a = 0; a < za.size(); ++a)
            acc += wa[a] * std::log(std::norm(1.0 - b * za[a]));
        img[k] = 0.5 * acc;
    }
    std::vector<double> dimg = spectral_derivative(img);

    for (int k = 0; k < n; ++k)
        G[k] = eps * eps * omega * dr[k] + omega * drc[k] - self[k] / eq + dimg[k] / eq;
    return G;
}

RigidResult rigid_solve(double q, double eps, const RigidOptions& opt)
{
    check_q(q);
    if (std::abs(q) > 0.9 + 1e-12)
        fail(errc::domain, "rigid_solve: |q| must not exceed 1 - delta = 0.9");
    if (eps < 0)
        fail(errc::invalid_argument, "rigid_solve: eps must be non-negative");
    if (opt.modes < 2 || 2 * opt.modes >= opt.grid)
        fail(errc::invalid_argument, "rigid_solve: need 2 <= modes < grid / 2");
    RigidResult res;
    res.omega0 = 1 / (2 * (1 - q * q));
    res.omega = res.omega0;
    res.coeffs.assign(opt.modes - 1, 0.0);
    double prev = 1e300;
    for (int it = 0; it <= opt.max_iter; ++it) {
        std::vector<double> G = rigid_functional(q, eps, res.omega, rigid_r_grid(res.coeffs, opt.grid), opt);
        double mx = 0;
        for (double v : G)
            mx = std::max(mx, std::abs(v));
        res.residual = mx;
        res.iterations = it;
        if (mx < opt.tol)
            return res;
        if (it == opt.max_iter || mx > 10 * prev)
            break;
        prev = mx;
        // inverse of the linearization at eps = 0: sin -> -Omega_hat, sin(n theta) -> cos(n theta) (n - 1) / 2
        std::vector<double> s = sine_coeffs(G, opt.modes);
        res.omega += s[1];
        for (int k = 2; k <= opt.modes; ++k)
            res.coeffs[k - 2] -= 2 * s[k] / (k - 1);
    }
    fail(errc::convergence, "rigid_solve: quasi-Newton stagnated at residual " + std::to_string(res.residual));
}

Patch rigid_patch(double q, double eps, const std::vector<double>& coeffs, int nodes)
{
    check_q(q);
    std::vector<double> r = rigid_r_grid(coeffs, nodes);
    Patch P;
    P.eps = eps;
    P.nodes.resize(nodes);
    for (int k = 0; k < nodes; ++k) {
        double a = 1 + 2 * eps * q * r[k];
        if (a <= 0)
            fail(errc::domain, "rigid_patch: 1 + 2 eps q r must stay positive");
        P.nodes[k] = q + eps * std::sqrt(a) * std::polar(1.0, 2 * pi * k / nodes);
    }
    return P;
}

}  // namespace vp

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "contour.hpp"
#include "contour_detail.hpp"
#include "errors.hpp"
#include "local_expansion.hpp"
#include "specialfn.hpp"
#include "spectral.hpp"

namespace vp {

namespace {

constexpr double pi = std::numbers::pi;

template <class Fn>
void for_slices(int M, int jobs, Fn fn)
{
    jobs = std::max(1, std::min(jobs, M));
    if (jobs == 1) {
        for (int j = 0; j < M; ++j)
            fn(j);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int j = next++; j < M; j = next++)
                fn(j);
        });
    for (auto& th : pool)
        th.join();
}

bool pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> column(const std::vector<double>& g, int M, int N, int k)
{
    std::vector<double> c(M);
    for (int j = 0; j < M; ++j)
        c[j] = g[size_t(j) * N + k];
    return c;
}

}  // namespace

namespace detail {

// d_theta Psi_1 on one slice through the boundary identity with the log-sine split
std::vector<double> self_induction(const std::vector<double>& R, const std::vector<double>& W)
{
    int N = int(R.size());
    std::vector<double> Rp = spectral_derivative(R);
    std::vector<cplx> z(N);
    std::vector<double> th(N), sn(N), cs(N);
    for (int k = 0; k < N; ++k) {
        th[k] = 2 * pi * k / N;
        z[k] = R[k] * std::polar(1.0, th[k]);
    }
    for (int d = 0; d < N; ++d) {
        sn[d] = std::sin(2 * pi * d / N);
        cs[d] = std::cos(2 * pi * d / N);
    }
    std::vector<double> out(N);
    for (int k = 0; k < N; ++k) {
        double acc = 0;
        for (int m = 0; m < N; ++m) {
            int d = (k - m + N) % N;
            double s = sn[d], c = cs[d];
            double f = Rp[k] * (Rp[m] * s - R[m] * c) + R[k] * (Rp[m] * c + R[m] * s);
            double Ls;
            if (d == 0)
                Ls = 0.5 * std::log(Rp[k] * Rp[k] + R[k] * R[k]);
            else
                Ls = std::log(std::abs(z[k] - z[m]) / std::abs(2 * std::sin(pi * d / N)));
            acc += (W[d] + Ls / N) * f;
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace detail

using detail::self_induction;

Residual make_residual(int M, int N, std::vector<double> values)
{
    Residual r;
    r.M = M;
    r.N = N;
    r.values = std::move(values);
    double mx = 0, l2 = 0;
    for (double v : r.values) {
        mx = std::max(mx, std::abs(v));
        l2 += v * v;
    }
    r.max_norm = mx;
    r.l2_norm = std::sqrt(l2 / r.values.size());
    double pm1 = 0, tail = 0;
    for (int j = 0; j < M; ++j) {
        std::vector<cplx> row(r.values.begin() + size_t(j) * N, r.values.begin() + size_t(j + 1) * N);
        auto c = fourier_coefficients(row);
        for (int i = 0; i < N; ++i) {
            int n = freq_of(i, N);
            if (std::abs(n) == 1)
                pm1 = std::max(pm1, std::abs(c[i]));
            if (std::abs(n) >= N / 4)
                tail = std::max(tail, std::abs(c[i]));
        }
    }
    r.mode_pm1 = pm1;
    r.tail = mx > 0 ? tail / mx : 0;
    r.accuracy_warning = r.tail > 1e-8;
    return r;
}

cplx w2(const ConformalMap& map, cplx p)
{
    cplx d = robin_grad(map, p);
    return d * d + schwarzian_of_phi(map, p) / 3.0;
}

std::vector<cplx> orbit_grid(const PeriodicOrbit& orbit, int M)
{
    if (int(orbit.samples.size()) == M)
        return orbit.samples;
    return trig_resample(orbit.samples, M);
}

std::vector<double> leading_g(const ConformalMap& map, const PeriodicOrbit& orbit, int M, int N)
{
    std::vector<cplx> p = orbit_grid(orbit, M);
    std::vector<double> g(size_t(M) * N);
    for (int j = 0; j < M; ++j) {
        cplx w = w2(map, p[j]);
        for (int k = 0; k < N; ++k)
            g[size_t(j) * N + k] = std::real(w * std::polar(1.0, 4 * pi * k / N));
    }
    return g;
}

std::vector<double> leading_forcing(const ConformalMap& map, const PeriodicOrbit& orbit, double eps, int M, int N)
{
    std::vector<cplx> p = orbit_grid(orbit, M);
    std::vector<double> g(size_t(M) * N);
    for (int j = 0; j < M; ++j) {
        cplx w = w2(map, p[j]);
        for (int k = 0; k < N; ++k)
            g[size_t(j) * N + k] = -0.5 * eps * eps * std::imag(w * std::polar(1.0, 4 * pi * k / N));
    }
    return g;
}

std::vector<double> exact_G0(const PotentialField& f, const PeriodicOrbit& orbit, double eps, int M, int N)
{
    const ConformalMap& map = *f.map;
    std::vector<cplx> p = orbit_grid(orbit, M);
    std::vector<double> out(size_t(M) * N);
    for (int j = 0; j < M; ++j) {
        LocalExpansion le(map, p[j], eps, 1.0);
        cplx dR = robin_grad(map, p[j]);
        cplx phi0 = le.value(0.0);
        std::vector<double> h(N);
        for (int k = 0; k < N; ++k) {
            cplx e = std::polar(1.0, 2 * pi * k / N);
            double K = std::log(std::abs(le.divdiff(e, 0.0))) - std::log(std::abs(1.0 - le.value(e) * std::conj(phi0)));
            h[k] = 0.5 * K - 0.5 * eps * std::real(dR * e);
        }
        std::vector<double> d = spectral_derivative(h);
        std::copy(d.begin(), d.end(), out.begin() + size_t(j) * N);
    }
    return out;
}

Residual eval_residual(const PotentialField& f, const PeriodicOrbit& orbit, const TorusState& st,
                       const ResidualOptions& opt)
{
    const ConformalMap& map = *f.map;
    const int M = st.M, N = st.N;
    const double eps = st.eps;
    if (!pow2(M) || !pow2(N))
        fail(errc::invalid_argument, "eval_residual: grid sizes must be powers of two");
    if (!(eps > 0 && eps < 0.2))
        fail(errc::domain, "eval_residual: eps must lie in (0, 0.2)");
    if (int(st.r.size()) != M * N)
        fail(errc::invalid_argument, "eval_residual: state size mismatch");
    std::vector<cplx> p = orbit_grid(orbit, M);
    std::vector<double> W = log_sine_weights(N);
    const QuadratureRule& gl = gauss_legendre_cached(opt.gl_points);
    const int Ne = N / 2;

    std::vector<double> out(size_t(M) * N);
    for_slices(M, opt.jobs, [&](int j) {
        std::vector<double> R(N);
        double Rmax = 0;
        for (int k = 0; k < N; ++k) {
            double a = 1 + 2 * eps * st.at(j, k);
            if (!(a > 0))
                fail(errc::domain, "eval_residual: 1 + 2 eps r must stay positive");
            R[k] = std::sqrt(a);
            Rmax = std::max(Rmax, R[k]);
        }
        LocalExpansion le(map, p[j], eps, Rmax);
        cplx dR = robin_grad(map, p[j]);

        std::vector<double> d1 = self_induction(R, W);

        // boundary interaction term: tensor rule over (s, eta)
        std::vector<cplx> zb(N), pb(N);
        for (int k = 0; k < N; ++k) {
            zb[k] = R[k] * std::polar(1.0, 2 * pi * k / N);
            pb[k] = le.value(zb[k]);
        }
        int na = Ne * int(gl.nodes.size());
        std::vector<cplx> za(na), pa(na);
        std::vector<double> wa(na);
        for (int m = 0; m < Ne; ++m) {
            double Rm = R[2 * m];
            cplx e = std::polar(1.0, 2 * pi * (2 * m) / N);
            for (size_t i = 0; i < gl.nodes.size(); ++i) {
                double s = 0.5 * (gl.nodes[i] + 1);
                int a = m * int(gl.nodes.size()) + int(i);
                za[a] = s * Rm * e;
                pa[a] = le.value(za[a]);
                wa[a] = (1.0 / Ne) * 0.5 * gl.weights[i] * s * Rm * Rm;
            }
        }
        std::vector<double> psi2(N);
        for (int k = 0; k < N; ++k) {
            double acc = 0;
            for (int a = 0; a < na; ++a) {
                cplx h = zb[k] - za[a];
                cplx dd = std::norm(h) > 0.09 ? (pb[k] - pa[a]) / (eps * h) : le.divdiff(zb[k], za[a]);
                double K = 0.5 * std::log(std::norm(dd) / std::norm(1.0 - pb[k] * std::conj(pa[a])));
                acc += wa[a] * K;
            }
            psi2[k] = acc;
        }
        std::vector<double> d2 = spectral_derivative(psi2);

        std::vector<double> tr(N);
        for (int k = 0; k < N; ++k)
            tr[k] = std::real(dR * zb[k]);
        std::vector<double> dtr = spectral_derivative(tr);

        for (int k = 0; k < N; ++k)
            out[size_t(j) * N + k] = -0.5 * eps * dtr[k] + d1[k] + d2[k];
    });

    // transport term eps^3 omega d_phi r
    for (int k = 0; k < N; ++k) {
        std::vector<double> c = column(st.r, M, N, k);
        std::vector<double> dc = spectral_derivative(c);
        for (int j = 0; j < M; ++j)
            out[size_t(j) * N + k] += eps * eps * eps * orbit.omega * dc[j];
    }
    return make_residual(M, N, std::move(out));
}

TorusState approx_solution(const PotentialField& f, const PeriodicOrbit& orbit, double eps, bool with_correction,
                           int M, int N, const ResidualOptions&)
{
    if (!pow2(M) || !pow2(N))
        fail(errc::invalid_argument, "approx_solution: grid sizes must be powers of two");
    TorusState st;
    st.eps = eps;
    st.lambda = orbit.lambda;
    st.M = M;
    st.N = N;
    st.r.assign(size_t(M) * N, 0.0);

    std::vector<double> G0 = exact_G0(f, orbit, eps, M, N);
    std::vector<double> g = leading_g(*f.map, orbit, M, N);
    std::vector<double> B1(size_t(M) * N, 0.0);
    if (with_correction) {
        for (int k = 0; k < N; ++k) {
            std::vector<double> dc = spectral_derivative(column(g, M, N, k));
            for (int j = 0; j < M; ++j)
                B1[size_t(j) * N + k] = -orbit.omega * dc[j];
        }
        for (int j = 0; j < M; ++j) {
            std::vector<double> sq(N);
            for (int k = 0; k < N; ++k)
                sq[k] = g[size_t(j) * N + k] * g[size_t(j) * N + k];
            std::vector<double> d = spectral_derivative(sq);
            for (int k = 0; k < N; ++k)
                B1[size_t(j) * N + k] -= 0.75 * d[k];
        }
    }
    double scale = 0;
    for (double v : G0)
        scale = std::max(scale, std::abs(v));
    for (int j = 0; j < M; ++j) {
        std::vector<double> row(G0.begin() + size_t(j) * N, G0.begin() + size_t(j + 1) * N);
        double dropped = 0;
        std::vector<double> r0 = inverse_dtheta_minus_hilbert(row, &dropped);
        if (dropped > 1e-9 * std::max(1.0, scale))
            fail(errc::structure, "approx_solution: forcing has content on modes 0, +-1");
        std::vector<double> r1(N, 0.0);
        if (with_correction) {
            std::vector<double> brow(B1.begin() + size_t(j) * N, B1.begin() + size_t(j + 1) * N);
            r1 = inverse_dtheta_minus_hilbert(brow, &dropped);
            if (dropped > 1e-9)
                fail(errc::structure, "approx_solution: correction forcing has content on modes 0, +-1");
        }
        for (int k = 0; k < N; ++k) {
            // argument of G is eps * r_eps with r_eps = r0 + eps r1
            double r0v = -2.0 / (eps * eps) * r0[k];
            double r1v = -2.0 * eps * r1[k];
            st.at(j, k) = eps * (r0v + eps * r1v);
        }
    }
    return st;
}

Residual rescaled_functional(const PotentialField& f, const PeriodicOrbit& orbit, const TorusState& r_eps,
                             const std::vector<double>& rho, double mu, const ResidualOptions& opt)
{
    TorusState st = r_eps;
    double eps = st.eps;
    double s = std::pow(eps, 1 + mu);
    if (!rho.empty()) {
        if (rho.size() != st.r.size())
            fail(errc::invalid_argument, "rescaled_functional: rho size mismatch");
        for (size_t i = 0; i < rho.size(); ++i)
            st.r[i] += s * rho[i];
    }
    Residual r = eval_residual(f, orbit, st, opt);
    double c = std::pow(eps, -(2 + mu));
    for (double& v : r.values)
        v *= c;
    return make_residual(r.M, r.N, std::move(r.values));
}

}  // namespace vp

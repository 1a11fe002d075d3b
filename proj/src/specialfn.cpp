#include "specialfn.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "errors.hpp"

namespace vp {

double agm(double a, double b)
{
    if (!(a > 0) || !(b > 0))
        fail(errc::domain, "agm: arguments must be positive");
    for (int i = 0; i < 64; ++i) {
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * a)
            break;
    }
    return 0.5 * (a + b);
}

double elliptic_K(double k, double kprime)
{
    if (!(k >= 0) || !(k < 1) || !(kprime > 0))
        fail(errc::domain, "elliptic_K: modulus must lie in [0,1)");
    return std::numbers::pi / (2.0 * agm(1.0, kprime));
}

double elliptic_K(double k)
{
    if (!(k >= 0) || !(k < 1))
        fail(errc::domain, "elliptic_K: modulus must lie in [0,1)");
    return elliptic_K(k, std::sqrt((1.0 - k) * (1.0 + k)));
}

void jacobi_real(double u, double k, double kprime, double& sn, double& cn, double& dn)
{
    if (k == 0.0) {
        sn = std::sin(u);
        cn = std::cos(u);
        dn = 1.0;
        return;
    }
    if (kprime == 0.0) {
        sn = std::tanh(u);
        cn = 1.0 / std::cosh(u);
        dn = cn;
        return;
    }
    // reduce to [-2K, 2K] using the 4K period
    double K = elliptic_K(k, kprime);
    double p = 4.0 * K;
    u = u - p * std::round(u / p);

    // descending Landen sequence
    std::array<double, 32> a{}, c{};
    a[0] = 1.0;
    c[0] = k;
    double b = kprime;
    int n = 0;
    while (std::abs(c[n]) > 1e-16 && n < 30) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int j = n; j > 0; --j)
        phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
    sn = std::sin(phi);
    cn = std::cos(phi);
    dn = std::sqrt(kprime * kprime + k * k * cn * cn);
}

SnCnDn jacobi_sn_cn_dn(cplx u, double k, double kprime)
{
    if (!(k >= 0) || !(k < 1))
        fail(errc::domain, "jacobi_sn_cn_dn: modulus must lie in [0,1)");
    double x = u.real(), y = u.imag();
    if (k == 0.0) {
        return {std::sin(u), std::cos(u), cplx(1.0, 0.0)};
    }
    double K = elliptic_K(k, kprime);
    double Kp = elliptic_K(kprime, k);
    // poles of sn sit at 2mK + (2n+1)iK'
    double m = std::round(x / (2 * K));
    double nn = std::round((y - Kp) / (2 * Kp));
    cplx pole(2 * m * K, (2 * nn + 1) * Kp);
    if (std::abs(u - pole) < 1e-8 * std::hypot(K, Kp))
        fail(errc::pole, "jacobi_sn_cn_dn: argument too close to a pole");

    double s, c, d, s1, c1, d1;
    jacobi_real(x, k, kprime, s, c, d);
    jacobi_real(y, kprime, k, s1, c1, d1);
    double den = c1 * c1 + k * k * s * s * s1 * s1;
    SnCnDn r;
    r.sn = cplx(s * d1, c * d * s1 * c1) / den;
    r.cn = cplx(c * c1, -s * d * s1 * d1) / den;
    r.dn = cplx(d * c1 * d1, -k * k * s * c * s1) / den;
    return r;
}

SnCnDn jacobi_sn_cn_dn(cplx u, double k)
{
    return jacobi_sn_cn_dn(u, k, std::sqrt((1.0 - k) * (1.0 + k)));
}

QuadratureRule gauss_legendre(int n)
{
    if (n < 1 || n > 512)
        fail(errc::domain, "gauss_legendre: n must lie in [1,512]");
    QuadratureRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1)
                p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        q.nodes[n / 2] = 0.0;
    return q;
}

const QuadratureRule& gauss_legendre_cached(int n)
{
    static std::mutex mu;
    static std::array<std::unique_ptr<QuadratureRule>, 513> cache;
    if (n < 1 || n > 512)
        fail(errc::domain, "gauss_legendre: n must lie in [1,512]");
    std::lock_guard<std::mutex> lock(mu);
    if (!cache[n])
        cache[n] = std::make_unique<QuadratureRule>(gauss_legendre(n));
    return *cache[n];
}

}  // namespace vp

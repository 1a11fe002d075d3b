#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "errors.hpp"

namespace vp {

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plans;

fftw_plan get_plan(int n, int sign)
{
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end())
        return it->second;
    fftw_complex* in = fftw_alloc_complex(n);
    fftw_complex* out = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (!p)
        fail(errc::internal, "fftw plan creation failed");
    plans[key] = p;
    return p;
}

std::vector<cplx> run(const std::vector<cplx>& x, int sign)
{
    int n = static_cast<int>(x.size());
    std::vector<cplx> y(n);
    if (n == 0)
        return y;
    fftw_plan p = get_plan(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(x.data())),
                     reinterpret_cast<fftw_complex*>(y.data()));
    return y;
}

std::vector<cplx> to_complex(const std::vector<double>& f)
{
    return std::vector<cplx>(f.begin(), f.end());
}

std::vector<double> real_part(const std::vector<cplx>& f)
{
    std::vector<double> r(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        r[i] = f[i].real();
    return r;
}

}  // namespace

std::vector<cplx> fft(const std::vector<cplx>& x) { return run(x, FFTW_FORWARD); }

std::vector<cplx> ifft(const std::vector<cplx>& X)
{
    auto y = run(X, FFTW_BACKWARD);
    double s = 1.0 / static_cast<double>(X.size());
    for (auto& v : y)
        v *= s;
    return y;
}

std::vector<cplx> spectral_derivative(const std::vector<cplx>& f)
{
    int n = static_cast<int>(f.size());
    auto F = fft(f);
    for (int i = 0; i < n; ++i) {
        int k = freq_of(i, n);
        if (n % 2 == 0 && i == n / 2)
            F[i] = 0;
        else
            F[i] *= cplx(0, k);
    }
    return ifft(F);
}

std::vector<double> spectral_derivative(const std::vector<double>& f)
{
    return real_part(spectral_derivative(to_complex(f)));
}

std::vector<double> hilbert(const std::vector<double>& f)
{
    int n = static_cast<int>(f.size());
    auto F = fft(to_complex(f));
    for (int i = 0; i < n; ++i) {
        int k = freq_of(i, n);
        if (k == 0 || (n % 2 == 0 && i == n / 2))
            F[i] = 0;
        else
            F[i] *= cplx(0, k > 0 ? 1.0 : -1.0);
    }
    return real_part(ifft(F));
}

std::vector<double> inverse_dtheta_minus_hilbert(const std::vector<double>& f, double* dropped)
{
    int n = static_cast<int>(f.size());
    auto F = fft(to_complex(f));
    double d = 0;
    for (int i = 0; i < n; ++i) {
        int k = freq_of(i, n);
        if (std::abs(k) <= 1 || (n % 2 == 0 && i == n / 2)) {
            if (std::abs(k) <= 1)
                d = std::max(d, std::abs(F[i]) / n);
            F[i] = 0;
        } else {
            double s = k > 0 ? 1.0 : -1.0;
            F[i] /= cplx(0, k - s);
        }
    }
    if (dropped)
        *dropped = d;
    return real_part(ifft(F));
}

double low_mode_content(const std::vector<double>& f)
{
    int n = static_cast<int>(f.size());
    auto F = fft(to_complex(f));
    double d = 0;
    for (int i = 0; i < n; ++i)
        if (std::abs(freq_of(i, n)) <= 1)
            d = std::max(d, std::abs(F[i]) / n);
    return d;
}

double mode_pm1_content(const std::vector<double>& f)
{
    int n = static_cast<int>(f.size());
    auto F = fft(to_complex(f));
    return std::max(std::abs(F[1]), std::abs(F[n - 1])) / n;
}

std::vector<double> log_sine_weights(int n)
{
    std::vector<double> w(n);
    for (int k = 0; k < n; ++k) {
        double t = 2.0 * M_PI * k / n;
        double s = 0;
        for (int m = 1; m < n / 2; ++m)
            s += std::cos(m * t) / m;
        s += std::cos(0.5 * n * t) / n;
        w[k] = -s / n;
    }
    return w;
}

std::vector<cplx> trig_resample(const std::vector<cplx>& f, int n_out)
{
    int n = static_cast<int>(f.size());
    auto F = fft(f);
    std::vector<cplx> G(n_out, cplx(0, 0));
    int half = std::min(n, n_out) / 2;
    for (int i = 0; i < n; ++i) {
        int k = freq_of(i, n);
        if (std::abs(k) > half)
            continue;
        cplx v = F[i];
        if (std::abs(k) == half && (std::min(n, n_out) % 2 == 0)) {
            // split the Nyquist coefficient symmetrically
            if (n_out > n) {
                G[half] += 0.5 * v;
                G[n_out - half] += 0.5 * v;
            } else if (n_out == n) {
                G[i] += v;
            } else {
                G[half] += v;
            }
            continue;
        }
        int j = k >= 0 ? k : n_out + k;
        G[j] += v;
    }
    double s = static_cast<double>(n_out) / n;
    for (auto& v : G)
        v *= s;
    return ifft(G);
}

std::vector<double> trig_resample(const std::vector<double>& f, int n_out)
{
    return real_part(trig_resample(to_complex(f), n_out));
}

std::vector<double> dealiased_product(const std::vector<double>& a, const std::vector<double>& b)
{
    int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n)
        fail(errc::invalid_argument, "dealiased_product: size mismatch");
    int m = 3 * n / 2;
    auto ap = trig_resample(a, m);
    auto bp = trig_resample(b, m);
    std::vector<double> c(m);
    for (int i = 0; i < m; ++i)
        c[i] = ap[i] * bp[i];
    // truncate back to n modes
    auto C = fft(to_complex(c));
    std::vector<cplx> D(n, cplx(0, 0));
    for (int i = 0; i < m; ++i) {
        int k = freq_of(i, m);
        if (std::abs(k) >= n / 2)
            continue;
        D[k >= 0 ? k : n + k] = C[i];
    }
    double s = static_cast<double>(n) / m;
    for (auto& v : D)
        v *= s;
    return real_part(ifft(D));
}

std::vector<cplx> fourier_coefficients(const std::vector<cplx>& f)
{
    auto F = fft(f);
    double s = 1.0 / static_cast<double>(f.size());
    for (auto& v : F)
        v *= s;
    return F;
}

}  // namespace vp

#include "monodromy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "errors.hpp"
#include "spectral.hpp"

namespace vp {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

Mat2 gen(cplx u, cplx v) { return {u, v, std::conj(v), std::conj(u)}; }
}  // namespace

GeneratorSamples generator_samples(const PotentialField& f, const PeriodicOrbit& orbit)
{
    GeneratorSamples g;
    double T = orbit.period;
    for (cplx p : orbit.samples) {
        double R = robin(*f.map, p);
        cplx dR = robin_grad(*f.map, p);
        g.u.push_back(-I * T / (4 * pi) * std::exp(2 * R));
        g.v.push_back(I * T / (8 * pi) * dR * dR);
    }
    return g;
}

Mat2 generator(const PotentialField& f, const PeriodicOrbit& orbit, double phi)
{
    GeneratorSamples g = generator_samples(f, orbit);
    auto cu = fourier_coefficients(g.u);
    auto cv = fourier_coefficients(g.v);
    int n = int(cu.size());
    cplx u = 0.0, v = 0.0;
    for (int i = 0; i < n; ++i) {
        int k = freq_of(i, n);
        double w = (2 * std::abs(k) == n) ? 0.5 : 1.0;
        cplx e = std::polar(1.0, k * phi);
        u += w * cu[i] * e;
        v += w * cv[i] * e;
        if (2 * std::abs(k) == n) {
            u += w * cu[i] * std::conj(e);
            v += w * cv[i] * std::conj(e);
        }
    }
    return gen(u, v);
}

MonodromyResult integrate_monodromy(const std::function<Mat2(int)>& A_half, int steps)
{
    double h = 2 * pi / steps;
    Mat2 M = identity2();
    MonodromyResult r;
    for (int k = 0; k < steps; ++k) {
        Mat2 A0 = A_half(2 * k), A1 = A_half(2 * k + 1), A2 = A_half((2 * k + 2) % (2 * steps));
        Mat2 k1 = A0 * M;
        Mat2 k2 = A1 * (M + (0.5 * h) * k1);
        Mat2 k3 = A1 * (M + (0.5 * h) * k2);
        Mat2 k4 = A2 * (M + h * k3);
        M = M + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((k + 1) % 64 == 0 || k + 1 == steps) {
            r.path_det_drift = std::max(r.path_det_drift, std::abs(det(M) - 1.0));
            r.path_structure_gap = std::max(r.path_structure_gap, structure_gap(M));
        }
    }
    r.M = M;
    r.trace = M.a + M.d;
    r.trace_gap = std::abs(r.trace - 2.0);
    r.det_drift = std::abs(det(M) - 1.0);
    r.structure_gap = structure_gap(M);
    r.steps = steps;
    return r;
}

MonodromyResult monodromy_matrix(const PotentialField& f, const PeriodicOrbit& orbit, int min_steps)
{
    if (orbit.samples.size() < 256)
        fail(errc::precondition, "monodromy_matrix: orbit needs at least 256 samples");
    GeneratorSamples g = generator_samples(f, orbit);
    double amax = 0;
    for (size_t i = 0; i < g.u.size(); ++i)
        amax = std::max(amax, std::abs(g.u[i]) + std::abs(g.v[i]));
    int steps = std::max(min_steps, 1);
    while (2 * pi / steps * amax > 0.02)
        steps *= 2;
    while (2 * steps < int(g.u.size()))
        steps *= 2;
    std::vector<cplx> u = trig_resample(g.u, 2 * steps);
    std::vector<cplx> v = trig_resample(g.v, 2 * steps);
    MonodromyResult r = integrate_monodromy([&](int i) { return gen(u[i], v[i]); }, steps);
    if (r.det_drift > 1e-6)
        fail(errc::accuracy, "monodromy_matrix: determinant drift " + std::to_string(r.det_drift));
    return r;
}

SpectralVerdict spectral_check(const Mat2& M, double threshold)
{
    double gap = std::abs(M.a + M.d - 2.0);
    return {gap > threshold, gap};
}

SpectralVerdict spectral_check(const MonodromyResult& r, double threshold) { return spectral_check(r.M, threshold); }

double disc_zeta(double lambda) { return 0.5 * std::expm1(4 * lambda); }
double disc_trace(double lambda) { return 2 * std::cos(2 * pi * std::sqrt(3.0) * disc_zeta(lambda)); }
double disc_resonance(int k) { return 0.25 * std::log1p(2.0 * k / std::sqrt(3.0)); }

ScanRecord scan_point(const PotentialField& f, double lambda, const ScanOptions& opt)
{
    ScanRecord s;
    s.lambda = lambda;
    try {
        PeriodicOrbit o = trace_orbit(f, lambda, opt.samples);
        s.period = o.period;
        if (opt.with_dperiod)
            s.dperiod = period_derivative(f, lambda);
        MonodromyResult m = monodromy_matrix(f, o);
        s.trace = m.trace;
        s.trace_gap = m.trace_gap;
        s.verdict = s.trace_gap > opt.threshold && (!opt.with_dperiod || s.dperiod != 0.0);
    } catch (const error& e) {
        s.error = std::string(errc_name(e.code())) + ": " + e.what();
    }
    return s;
}

namespace {

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

}  // namespace

ScanReport hypothesis_scan(const PotentialField& f, double lo, double hi, int n, const ScanOptions& opt)
{
    if (n < 2 || !(hi > lo))
        fail(errc::invalid_argument, "hypothesis_scan: need n >= 2 and lo < hi");
    ScanReport rep;
    rep.records.resize(n);
    parallel_for(n, opt.jobs, [&](int i) { rep.records[i] = scan_point(f, lo + (hi - lo) * i / (n - 1), opt); });

    if (opt.refine) {
        std::vector<ScanRecord> extra;
        auto& R = rep.records;
        ScanOptions gap_only = opt;
        gap_only.with_dperiod = false;
        for (int i = 1; i + 1 < n; ++i) {
            if (!R[i - 1].error.empty() || !R[i].error.empty() || !R[i + 1].error.empty())
                continue;
            if (R[i].trace_gap <= R[i - 1].trace_gap && R[i].trace_gap <= R[i + 1].trace_gap) {
                // golden-section search for the local minimum of the trace gap
                double a = R[i - 1].lambda, b = R[i + 1].lambda;
                const double gr = 0.5 * (std::sqrt(5.0) - 1);
                double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
                ScanRecord f1 = scan_point(f, x1, gap_only), f2 = scan_point(f, x2, gap_only);
                for (int it = 0; it < 60 && b - a > 1e-13 * (1 + std::abs(a)); ++it) {
                    if (!f1.error.empty() || !f2.error.empty())
                        break;
                    if (f1.trace_gap < f2.trace_gap) {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - gr * (b - a);
                        f1 = scan_point(f, x1, gap_only);
                    } else {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + gr * (b - a);
                        f2 = scan_point(f, x2, gap_only);
                    }
                }
                ScanRecord best = f1.trace_gap < f2.trace_gap ? f1 : f2;
                if (best.error.empty() && best.trace_gap < R[i].trace_gap) {
                    if (opt.with_dperiod) {
                        try {
                            best.dperiod = period_derivative(f, best.lambda);
                        } catch (const error&) {
                        }
                    }
                    best.refined = true;
                    extra.push_back(best);
                }
            }
            if (opt.with_dperiod && R[i].dperiod * R[i + 1].dperiod < 0) {
                // sign change of T': bisection for the degenerate level
                double a = R[i].lambda, b = R[i + 1].lambda, fa = R[i].dperiod;
                for (int it = 0; it < 50; ++it) {
                    double m = 0.5 * (a + b);
                    double fm = period_derivative(f, m);
                    if ((fm < 0) == (fa < 0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                ScanRecord z = scan_point(f, 0.5 * (a + b), opt);
                z.refined = true;
                z.period_critical = true;
                extra.push_back(z);
            }
        }
        for (auto& e : extra) {
            e.verdict = e.error.empty() && !e.period_critical && e.trace_gap > opt.threshold;
            R.push_back(e);
        }
        std::sort(R.begin(), R.end(), [](const ScanRecord& x, const ScanRecord& y) { return x.lambda < y.lambda; });
    }

    rep.min_abs_dperiod = 1e300;
    rep.min_trace_gap = 1e300;
    bool any_error = false;
    for (auto& r : rep.records) {
        if (!r.error.empty()) {
            any_error = true;
            continue;
        }
        if (opt.with_dperiod)
            rep.min_abs_dperiod = std::min(rep.min_abs_dperiod, std::abs(r.dperiod));
        if (r.period_critical)
            rep.min_abs_dperiod = 0;
        if (r.trace_gap < rep.min_trace_gap) {
            rep.min_trace_gap = r.trace_gap;
            rep.worst_lambda = r.lambda;
        }
    }
    rep.verdict = !any_error && rep.min_trace_gap > opt.threshold && (!opt.with_dperiod || rep.min_abs_dperiod > 0);
    return rep;
}

}  // namespace vp

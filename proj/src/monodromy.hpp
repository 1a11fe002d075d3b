#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pointvortex.hpp"

namespace vp {

struct Mat2 {
    cplx a, b, c, d;
};

inline Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
inline Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
inline Mat2 operator*(double s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
inline cplx det(const Mat2& m) { return m.a * m.d - m.b * m.c; }
inline Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }
// max(|d - conj a|, |c - conj b|)
inline double structure_gap(const Mat2& m) { return std::max(std::abs(m.d - std::conj(m.a)), std::abs(m.c - std::conj(m.b))); }

struct MonodromyResult {
    Mat2 M;
    cplx trace;
    double trace_gap = 0;
    double det_drift = 0;
    double structure_gap = 0;
    // worst values sampled along the integration
    double path_det_drift = 0;
    double path_structure_gap = 0;
    int steps = 0;
};

// u, v samples of the generator on the orbit grid
struct GeneratorSamples {
    std::vector<cplx> u, v;
};

GeneratorSamples generator_samples(const PotentialField& f, const PeriodicOrbit& orbit);
// [[u, v], [conj v, conj u]] at phi, by trigonometric interpolation of the samples
Mat2 generator(const PotentialField& f, const PeriodicOrbit& orbit, double phi);

MonodromyResult monodromy_matrix(const PotentialField& f, const PeriodicOrbit& orbit, int min_steps = 4096);
// RK4 with fixed step 2 pi / steps; A is evaluated at 2*steps uniform points in [0, 2 pi)
MonodromyResult integrate_monodromy(const std::function<Mat2(int)>& A_half, int steps);

struct SpectralVerdict {
    bool ok;
    double margin;
};
SpectralVerdict spectral_check(const MonodromyResult& r, double threshold = 1e-4);
SpectralVerdict spectral_check(const Mat2& M, double threshold = 1e-4);

struct ScanRecord {
    double lambda = 0;
    double period = 0;
    double dperiod = 0;
    cplx trace;
    double trace_gap = 0;
    bool verdict = false;
    bool refined = false;          // produced by the refinement pass
    bool period_critical = false;  // located sign change of T'
    std::string error;
};

struct ScanReport {
    std::vector<ScanRecord> records;
    bool verdict = false;
    double min_abs_dperiod = 0;
    double min_trace_gap = 0;
    double worst_lambda = 0;
};

struct ScanOptions {
    double threshold = 1e-4;
    int samples = 256;
    int jobs = 1;
    bool refine = true;
    bool with_dperiod = true;
};

ScanRecord scan_point(const PotentialField& f, double lambda, const ScanOptions& opt);
ScanReport hypothesis_scan(const PotentialField& f, double lo, double hi, int n, const ScanOptions& opt = {});

// disc closed forms
double disc_zeta(double lambda);
double disc_trace(double lambda);
// k-th resonant level of the disc, (1/4) log(1 + 2k/sqrt3)
double disc_resonance(int k);

}  // namespace vp

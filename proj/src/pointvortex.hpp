#pragma once

#include <vector>

#include "greenrobin.hpp"

namespace vp {

struct PeriodicOrbit {
    double lambda = 0;
    double period = 0;
    double omega = 0;
    double area = 0;
    cplx center;                // critical point the orbit winds around
    std::vector<cplx> samples;  // p(phi_j), phi_j = 2 pi j / M
    double h_drift = 0;         // max |H - lambda| over the samples
    double closure = 0;         // |p(T) - p(0)|
};

struct OrbitOptions {
    double tol = 1e-10;
    int max_steps = 2000000;
};

cplx vortex_velocity(const PotentialField& f, cplx z);
// critical point used as orbit centre (xi0 of the map, polished if needed)
cplx orbit_center(const PotentialField& f);
double critical_level(const PotentialField& f);

PeriodicOrbit trace_orbit(const PotentialField& f, double lambda, int M, const OrbitOptions& opt = {});
double period(const PotentialField& f, double lambda, const OrbitOptions& opt = {});
double period_derivative(const PotentialField& f, double lambda, const OrbitOptions& opt = {});
// pi sum n |c_n|^2 over the Fourier coefficients of the samples; positive for counterclockwise orbits
double area_enclosed(const PeriodicOrbit& orbit);
double area_enclosed(const std::vector<cplx>& samples);
double period_at_critical(const PotentialField& f);
double boundary_period_asymptote(const PotentialField& f, double lambda);

}  // namespace vp

#pragma once

#include <vector>

#include "pointvortex.hpp"

namespace vp {

// radial deformation r(phi, theta) on an M x N torus grid, row major in phi
struct TorusState {
    double eps = 0;
    double lambda = 0;
    int M = 0, N = 0;
    std::vector<double> r;

    double& at(int j, int k) { return r[size_t(j) * N + k]; }
    double at(int j, int k) const { return r[size_t(j) * N + k]; }
};

struct Residual {
    int M = 0, N = 0;
    std::vector<double> values;
    double max_norm = 0;
    double l2_norm = 0;
    double mode_pm1 = 0;  // largest |coefficient| on theta modes +-1
    double tail = 0;      // largest |coefficient| on theta modes |n| >= N/4, relative to max_norm
    bool accuracy_warning = false;
};

struct ResidualOptions {
    int gl_points = 32;  // radial Gauss-Legendre nodes for the boundary interaction term
    int jobs = 1;
};

cplx w2(const ConformalMap& map, cplx p);

// orbit resampled to M points in phi
std::vector<cplx> orbit_grid(const PeriodicOrbit& orbit, int M);

// g(phi, theta) = Re{w2(p(phi)) e^{2 i theta}}
std::vector<double> leading_g(const ConformalMap& map, const PeriodicOrbit& orbit, int M, int N);
// -(eps^2/2) Im{w2 e^{2 i theta}}
std::vector<double> leading_forcing(const ConformalMap& map, const PeriodicOrbit& orbit, double eps, int M, int N);

Residual eval_residual(const PotentialField& f, const PeriodicOrbit& orbit, const TorusState& state,
                       const ResidualOptions& opt = {});
// G(0) from the mean value identity: (1/2) d_theta K(p + eps e^{i theta}, p) - (eps/2) d_theta Re{d_z R e^{i theta}}
std::vector<double> exact_G0(const PotentialField& f, const PeriodicOrbit& orbit, double eps, int M, int N);

TorusState approx_solution(const PotentialField& f, const PeriodicOrbit& orbit, double eps, bool with_correction,
                           int M = 64, int N = 128, const ResidualOptions& opt = {});

// F(rho) = eps^{-(2+mu)} G(eps r_eps + eps^{1+mu} rho)
Residual rescaled_functional(const PotentialField& f, const PeriodicOrbit& orbit, const TorusState& r_eps,
                             const std::vector<double>& rho, double mu = 0.5, const ResidualOptions& opt = {});

Residual make_residual(int M, int N, std::vector<double> values);

// ---- vortex patch evolution -------------------------------------------------

struct Patch {
    double eps = 0;
    double sign = 1;
    std::vector<cplx> nodes;  // counterclockwise physical boundary nodes
};

struct PatchDiagnostics {
    double area = 0;
    cplx centroid;
    double energy = 0;
};

struct PatchFrame {
    double t = 0;
    std::vector<Patch> patches;
};

struct EvolveOptions {
    int jobs = 1;
    bool check_topology = true;
    int record_every = 0;  // 0: only the initial and final frames
};

// nodes of the patch p + eps R e^{i theta}, R from r on one phi slice
Patch patch_from_slice(cplx p, double eps, const std::vector<double>& r_slice, int nodes);
Patch circular_patch(cplx p, double eps, int nodes);

// velocity of every node of every patch (map Green function, vorticity sign/eps^2)
std::vector<std::vector<cplx>> patch_velocities(const ConformalMap& map, const std::vector<Patch>& patches,
                                                int jobs = 1);
// velocity induced at arbitrary points by the patches
std::vector<cplx> induced_velocity(const ConformalMap& map, const std::vector<Patch>& patches,
                                   const std::vector<cplx>& points);

std::vector<PatchFrame> evolve_patches(const ConformalMap& map, std::vector<Patch> patches, double dt, int steps,
                                       const EvolveOptions& opt = {});
std::vector<PatchFrame> evolve_patch(const ConformalMap& map, const Patch& patch, double dt, int steps,
                                     const EvolveOptions& opt = {});

double patch_area(const Patch& p);
cplx patch_centroid(const Patch& p);
// (1 / 2 pi eps^4) (1/2) double integral of G over the patch
double patch_energy(const ConformalMap& map, const Patch& p, int radial = 12);
PatchDiagnostics diagnostics(const ConformalMap& map, const Patch& p, bool with_energy = true);
// symmetric distance between two boundary curves (nodes of one against the densified other)
double boundary_gap(const Patch& a, const Patch& b);
// throws topology error if two boundary segments cross
void check_simple(const Patch& p);

// ---- rigid rotation in the disc ----------------------------------------------

struct RigidResult {
    double omega = 0;
    double omega0 = 0;
    std::vector<double> coeffs;  // a_n for n = 2 .. modes, r = sum a_n cos(n theta)
    double residual = 0;
    int iterations = 0;
};

struct RigidOptions {
    int modes = 32;
    int grid = 128;
    int gl_points = 32;
    double tol = 1e-10;
    int max_iter = 60;
};

RigidResult rigid_solve(double q, double eps, const RigidOptions& opt = {});
// the contour functional on the grid for given (Omega, r)
std::vector<double> rigid_functional(double q, double eps, double omega, const std::vector<double>& r_grid,
                                     const RigidOptions& opt = {});
std::vector<double> rigid_r_grid(const std::vector<double>& coeffs, int grid);
// physical patch q + eps gamma, gamma = R e^{i theta}, R = sqrt(1 + 2 eps q r)
Patch rigid_patch(double q, double eps, const std::vector<double>& coeffs, int nodes);

}  // namespace vp

#pragma once

#include <numbers>

#include "conformal.hpp"

namespace vp {

struct PotentialField {
    MapPtr map;
    double gamma = std::numbers::pi;
};

double green(const ConformalMap& map, cplx z, cplx w);
// K(z,w) = G(z,w) - log|z-w|
double green_regular(const ConformalMap& map, cplx z, cplx w);
double robin(const ConformalMap& map, cplx z);
double conformal_radius(const ConformalMap& map, cplx z);
// d_z R
cplx robin_grad(const ConformalMap& map, cplx z);
// H = (gamma / 4 pi) R
double hamiltonian(const PotentialField& f, cplx z);
// |Delta_h R - 4 e^{2R}| with the five point Laplacian
double liouville_residual(const ConformalMap& map, cplx z, double h);
// |F''/F'(w) - 2 conj(w)/(1-|w|^2)| at w = Phi(z), for the map renormalised at z
double grakhov_residual(const ConformalMap& map, cplx z);
cplx find_critical_point(const ConformalMap& map, cplx seed, double* residual = nullptr);
// (1-|Phi|)/|Phi'|, a boundary distance estimate within a factor 4
double boundary_delta(const ConformalMap& map, cplx z);

// disc Green function
inline double green_disc(cplx z, cplx w) { return std::log(std::abs((z - w) / (1.0 - z * std::conj(w)))); }

}  // namespace vp

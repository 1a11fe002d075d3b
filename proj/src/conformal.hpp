#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "jet.hpp"

namespace vp {

using cplx = std::complex<double>;

enum class DomainKind { disc, ellipse, rectangle, regular_polygon, sym_polygon, disc_sector, normalized };

struct PhiDerivs {
    cplx d1, d2, d3;
};

struct PolygonSpec {
    std::vector<double> theta;  // prevertex angles, increasing in [0, 2pi)
    std::vector<double> mu;     // exterior angle fractions, sum 2
    cplx alpha{1.0, 0.0};       // F'(0)
    cplx beta{0.0, 0.0};        // F(0)

    bool convex() const;
    bool symmetric(double tol = 1e-12) const;
    void validate() const;
};

class ConformalMap {
public:
    virtual ~ConformalMap() = default;

    virtual DomainKind kind() const = 0;
    virtual std::string describe() const = 0;

    // Phi: D -> unit disc
    virtual cplx phi(cplx z) const = 0;
    // value and first three derivatives of Phi at z
    virtual Jet3 phi_jet(cplx z) const = 0;
    // F = Phi^{-1}
    virtual cplx f_inverse(cplx w) const = 0;
    // S(F)(w); the default goes through the Phi jet at F(w)
    virtual cplx schwarzian_of_F(cplx w) const;

    virtual bool contains(cplx z) const = 0;
    // point with Phi(xi0) = 0 and Phi'(xi0) > 0
    virtual cplx xi0() const = 0;
    virtual double diameter() const = 0;
    // length of the boundary curve
    virtual double boundary_length() const = 0;
    // points on the boundary, for plotting and guards
    virtual std::vector<cplx> boundary_points(int n) const;

    PhiDerivs phi_derivs(cplx z) const;
    // Koebe-type estimate of the distance to the boundary, (1-|Phi|)/|Phi'|
    double boundary_distance(cplx z) const;
};

using MapPtr = std::shared_ptr<const ConformalMap>;

// Schwarzian of Phi at z
cplx schwarzian_of_phi(const ConformalMap& map, cplx z);

MapPtr make_disc();
MapPtr make_ellipse(double a);
MapPtr make_rectangle(double aspect);
MapPtr make_regular_polygon(int m);
MapPtr make_sym_polygon(const PolygonSpec& spec);
MapPtr make_sector(int m);
// renormalises base so that Phi(c) = 0, Phi'(c) > 0
MapPtr make_normalized(MapPtr base, cplx c);
// the domain scale * D + shift, scale > 0
MapPtr make_affine(MapPtr base, double scale, cplx shift);

// ellipse {x^2/a^2 + y^2 < 1}: modulus k (and k') of the Jacobi map
void ellipse_modulus(double a, double& k, double& kprime);
// inverse relation a(k) = coth(pi G(k) / 4), G(k) = K(k')/K(k)
double ellipse_axis_from_modulus(double k, double kprime);
// G(x) = K(sqrt(1-x^2))/K(x)
double modulus_ratio(double x);
double modulus_ratio(double x, double xprime);

// Schwarz-Christoffel integral F(z) = beta + alpha int_0^z prod (1 - s e^{-i theta_k})^{-mu_k} ds
cplx sc_integral(const PolygonSpec& spec, cplx z);
// image of each prevertex (the polygon vertices)
std::vector<cplx> sc_vertices(const PolygonSpec& spec);
// prevertex angle theta1 of the rectangle with side ratio aspect in (0,1]
double rectangle_theta1(double aspect);
PolygonSpec rectangle_spec(double aspect);
PolygonSpec regular_polygon_spec(int m);

// sector {|z|<1, 0 < arg z < pi/m}
double sector_t(int m);
cplx sector_xi(int m);
double sector_a(int m);
cplx sector_map(int m, cplx z);

}  // namespace vp

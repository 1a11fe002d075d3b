#include "local_expansion.hpp"

#include <cmath>
#include <numbers>

#include "spectral.hpp"

namespace vp {

double sampled_boundary_distance(const ConformalMap& map, cplx p)
{
    double d = 1e300;
    for (cplx b : map.boundary_points(2048))
        d = std::min(d, std::abs(b - p));
    return d;
}

LocalExpansion::LocalExpansion(const ConformalMap& map, cplx p, double eps, double xmax)
    : map_(map), p_(p), eps_(eps)
{
    double rho = 0.75 * sampled_boundary_distance(map, p);
    double ratio = eps * xmax / rho;
    if (!(ratio < 0.85))
        return;
    int nterms = int(std::ceil(std::log(1e-18) / std::log(ratio))) + 2;
    nterms = std::max(4, std::min(nterms, 160));
    int nc = 512;
    std::vector<cplx> v(nc);
    for (int j = 0; j < nc; ++j)
        v[j] = map.phi(p + rho * std::polar(1.0, 2 * std::numbers::pi * j / nc));
    std::vector<cplx> c = fourier_coefficients(v);
    b_.resize(nterms);
    double s = 1.0;
    for (int n = 0; n < nterms; ++n) {
        b_[n] = c[n] * s;
        s *= eps / rho;
    }
    b_[0] = map.phi(p);
    valid_ = true;
}

cplx LocalExpansion::value(cplx x) const
{
    if (!valid_)
        return map_.phi(p_ + eps_ * x);
    cplx s = 0.0;
    for (size_t n = b_.size(); n-- > 0;)
        s = s * x + b_[n];
    return s;
}

cplx LocalExpansion::derivative(cplx x) const
{
    if (!valid_)
        return map_.phi_jet(p_ + eps_ * x).c[1];
    cplx s = 0.0;
    for (size_t n = b_.size(); n-- > 1;)
        s = s * x + double(n) * b_[n];
    return s / eps_;
}

cplx LocalExpansion::divdiff(cplx x, cplx y) const
{
    if (!valid_ || std::abs(x - y) > 0.3)
        return (value(x) - value(y)) / (eps_ * (x - y));
    cplx h = 1.0, yp = 1.0;
    cplx s = b_[1];
    for (size_t n = 2; n < b_.size(); ++n) {
        yp *= y;
        h = x * h + yp;
        s += b_[n] * h;
    }
    return s / eps_;
}

}  // namespace vp

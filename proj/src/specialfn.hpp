#pragma once

#include <complex>
#include <vector>

namespace vp {

using cplx = std::complex<double>;

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

struct SnCnDn {
    cplx sn, cn, dn;
};

double agm(double a, double b);

// K(k); kprime may be passed when it is known more accurately than sqrt(1-k^2)
double elliptic_K(double k);
double elliptic_K(double k, double kprime);

// real argument, 0 <= k <= 1
void jacobi_real(double u, double k, double kprime, double& sn, double& cn, double& dn);

SnCnDn jacobi_sn_cn_dn(cplx u, double k);
SnCnDn jacobi_sn_cn_dn(cplx u, double k, double kprime);

QuadratureRule gauss_legendre(int n);
// shared instance, built once per n
const QuadratureRule& gauss_legendre_cached(int n);

}  // namespace vp

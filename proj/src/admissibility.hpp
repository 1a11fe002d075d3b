#pragma once

#include <vector>

#include "conformal.hpp"

namespace vp {

// distance of s >= 0 to {c sqrt(1 - 1/n^2) : n >= 1} union {c}
struct ForbiddenDistance {
    double distance;
    int nearest_n;  // 0 stands for the accumulation point n = infinity
};
ForbiddenDistance forbidden_distance(double s, double c);

struct AdmissibilityReport {
    cplx schwarzian;  // S(F)(0)
    double schwarzian_abs = 0;
    double forbidden_set_distance = 0;
    int nearest_n = 0;
    bool n1_hit = false;
    bool verdict = false;
};

AdmissibilityReport corollary_check(const ConformalMap& map, double tol = 1e-8);

double ellipse_g(double k);

struct EllipseExcluded {
    int n;
    double k, a;
};
std::vector<EllipseExcluded> ellipse_excluded_ratios(int n_max);

double rectangle_G(int n);
std::vector<double> rectangle_excluded_ratios(int n_max);

struct RectangleCheck {
    double distance;
    int nearest_n;
    bool verdict;
};
RectangleCheck rectangle_check(double ratio, int n_max, double tol = 1e-8);

struct SymPolygonReport {
    double sum;  // sum over one half of mu_k cos(2 theta_k)
    double distance;
    int nearest_n;
    bool verdict;
};
SymPolygonReport sym_polygon_sum(const PolygonSpec& spec, double tol = 1e-8);

}  // namespace vp

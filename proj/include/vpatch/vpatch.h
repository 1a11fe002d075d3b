#ifndef VPATCH_H
#define VPATCH_H

#if defined(__GNUC__)
#define VP_API __attribute__((visibility("default")))
#else
#define VP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* status codes; every call returns one of these */
enum {
    VP_OK = 0,
    VP_ERR_DOMAIN = 1,
    VP_ERR_CONVERGENCE = 2,
    VP_ERR_PROXIMITY = 3,
    VP_ERR_POLE = 4,
    VP_ERR_ACCURACY = 5,
    VP_ERR_NONCLOSURE = 6,
    VP_ERR_STRUCTURE = 7,
    VP_ERR_TOPOLOGY = 8,
    VP_ERR_PRECONDITION = 9,
    VP_ERR_INVALID_ARGUMENT = 10,
    VP_ERR_INTERNAL = 11
};

/* message of the last failed call on this thread */
VP_API const char* vp_last_error(void);
VP_API const char* vp_status_name(int status);

/* special functions */
VP_API int vp_agm(double a, double b, double* out);
VP_API int vp_elliptic_K(double k, double* out);
VP_API int vp_jacobi(double u, double k, double* sn, double* cn, double* dn);
VP_API int vp_gauss_legendre(int n, double* nodes, double* weights);

/* domains: a conformal map Phi onto the unit disc */
typedef struct vp_domain vp_domain;

VP_API int vp_domain_disc(vp_domain** out);
VP_API int vp_domain_ellipse(double a, vp_domain** out);
VP_API int vp_domain_rectangle(double aspect, vp_domain** out);
VP_API int vp_domain_regular_polygon(int m, vp_domain** out);
VP_API int vp_domain_sector(int m, vp_domain** out);
/* n prevertex angles and exterior angle fractions, F'(0) and F(0) */
VP_API int vp_domain_sym_polygon(int n, const double* theta, const double* mu, double alpha_re, double alpha_im,
                          double beta_re, double beta_im, vp_domain** out);
VP_API int vp_domain_affine(const vp_domain* base, double scale, double shift_re, double shift_im, vp_domain** out);
VP_API int vp_domain_normalized(const vp_domain* base, double x, double y, vp_domain** out);
VP_API void vp_domain_destroy(vp_domain* d);

VP_API int vp_domain_describe(const vp_domain* d, char* buf, int len);
VP_API int vp_domain_contains(const vp_domain* d, double x, double y, int* inside);
/* out[0..7] = Phi, Phi', Phi'', Phi''' as (re, im) pairs */
VP_API int vp_domain_phi(const vp_domain* d, double x, double y, double* out);
VP_API int vp_domain_f_inverse(const vp_domain* d, double u, double v, double* x, double* y);
VP_API int vp_domain_schwarzian_F(const vp_domain* d, double u, double v, double* re, double* im);
VP_API int vp_domain_xi0(const vp_domain* d, double* x, double* y);
VP_API int vp_domain_boundary_length(const vp_domain* d, double* out);
/* n boundary points as (x, y) pairs */
VP_API int vp_domain_boundary_points(const vp_domain* d, int n, double* xy);

/* Green and Robin functions */
VP_API int vp_green(const vp_domain* d, double zx, double zy, double wx, double wy, double* out);
VP_API int vp_robin(const vp_domain* d, double x, double y, double* out);
VP_API int vp_robin_grad(const vp_domain* d, double x, double y, double* re, double* im);
VP_API int vp_conformal_radius(const vp_domain* d, double x, double y, double* out);
VP_API int vp_liouville_residual(const vp_domain* d, double x, double y, double h, double* out);
VP_API int vp_grakhov_residual(const vp_domain* d, double x, double y, double* out);
VP_API int vp_critical_point(const vp_domain* d, double x0, double y0, double* x, double* y, double* residual);

/* point vortex orbits */
typedef struct vp_orbit vp_orbit;

typedef struct {
    double lambda;
    double period;
    double omega;
    double area;
    double center_x, center_y;
    double h_drift;
    double closure;
    int samples;
} vp_orbit_info;

VP_API int vp_critical_level(const vp_domain* d, double* out);
VP_API int vp_orbit_trace(const vp_domain* d, double lambda, int samples, vp_orbit** out);
VP_API void vp_orbit_destroy(vp_orbit* o);
VP_API int vp_orbit_get_info(const vp_orbit* o, vp_orbit_info* out);
VP_API int vp_orbit_sample(const vp_orbit* o, int j, double* x, double* y);
VP_API int vp_period(const vp_domain* d, double lambda, double* out);
VP_API int vp_period_derivative(const vp_domain* d, double lambda, double* out);
VP_API int vp_period_at_critical(const vp_domain* d, double* out);
VP_API int vp_boundary_period_asymptote(const vp_domain* d, double lambda, double* out);

/* monodromy */
typedef struct {
    double m[8]; /* a, b, c, d as (re, im) pairs */
    double trace_re, trace_im;
    double trace_gap;
    double det_drift;
    double structure_gap;
    double path_det_drift;
    double path_structure_gap;
    int steps;
} vp_monodromy;

VP_API int vp_monodromy_compute(const vp_orbit* o, const vp_domain* d, vp_monodromy* out);
VP_API double vp_disc_trace(double lambda);
VP_API double vp_disc_resonance(int k);

typedef struct vp_scan vp_scan;

typedef struct {
    double lambda;
    double period;
    double dperiod;
    double trace_re, trace_im;
    double trace_gap;
    int verdict;
    int refined;
    int period_critical;
    int failed;
} vp_scan_record;

VP_API int vp_scan_run(const vp_domain* d, double lo, double hi, int n, double threshold, int jobs, int refine, vp_scan** out);
VP_API void vp_scan_destroy(vp_scan* s);
VP_API int vp_scan_size(const vp_scan* s);
VP_API int vp_scan_get(const vp_scan* s, int i, vp_scan_record* out);
VP_API int vp_scan_summary(const vp_scan* s, int* verdict, double* min_abs_dperiod, double* min_trace_gap, double* worst_lambda);

/* admissibility */
typedef struct {
    double schwarzian_re, schwarzian_im;
    double schwarzian_abs;
    double distance;
    int nearest_n;
    int n1_hit;
    int verdict;
} vp_admissibility;

VP_API int vp_corollary_check(const vp_domain* d, double tol, vp_admissibility* out);
VP_API int vp_ellipse_g(double k, double* out);
VP_API int vp_rectangle_G(int n, double* out);
VP_API int vp_rectangle_check(double ratio, int n_max, double tol, double* distance, int* nearest_n, int* verdict);

/* contour functional on the (phi, theta) torus; r and values are M*N row major in phi */
typedef struct {
    double max_norm;
    double l2_norm;
    double mode_pm1;
    double tail;
    int accuracy_warning;
} vp_residual_info;

VP_API int vp_residual(const vp_domain* d, double lambda, double eps, int M, int N, const double* r, double* values,
                vp_residual_info* info);
VP_API int vp_approx_solution(const vp_domain* d, double lambda, double eps, int with_correction, int M, int N,
                       double* r_out);

/* vortex patches */
typedef struct vp_patches vp_patches;

VP_API int vp_patches_create(vp_patches** out);
VP_API void vp_patches_destroy(vp_patches* p);
VP_API int vp_patches_add_circle(vp_patches* p, double x, double y, double eps, int nodes, double sign);
VP_API int vp_patches_add_nodes(vp_patches* p, const double* xy, int nodes, double eps, double sign);
VP_API int vp_patches_count(const vp_patches* p);
VP_API int vp_patches_size(const vp_patches* p, int i);
VP_API int vp_patches_get(const vp_patches* p, int i, double* xy, double* eps, double* sign);
VP_API int vp_patches_evolve(const vp_domain* d, vp_patches* p, double dt, int steps, int jobs);
/* symmetric distance between boundary i of a and boundary j of b */
VP_API int vp_patches_gap(const vp_patches* a, int i, const vp_patches* b, int j, double* gap);
VP_API int vp_patch_diagnostics(const vp_domain* d, const vp_patches* p, int i, double* area, double* cx, double* cy,
                         double* energy);

/* rigid rotation in the unit disc; coeffs receives a_2 .. a_modes */
VP_API int vp_rigid_solve(double q, double eps, int modes, double* omega, double* omega0, double* coeffs,
                   double* residual);

/* reflections and duplication */
VP_API int vp_reflect_point(double zx, double zy, double wx, double wy, double x, double y, double* rx, double* ry);
/* refl holds (zx, zy, wx, wy) per reflection */
VP_API int vp_patches_duplicate(const vp_patches* base, const double* refl, int nrefl, vp_patches** out);
VP_API int vp_green_identity(const vp_domain* d, const vp_domain* dstar, const double* refl, int samples, unsigned seed,
                      double* first, double* second, double* symmetry);
VP_API int vp_sector_robin_images(int m, double x, double y, double* out);
VP_API int vp_verify_duplicated(const vp_domain* dstar, const vp_patches* base, const double* refl, int nrefl, double dt,
                         int steps, double* deviation);

#ifdef __cplusplus
}
#endif

#endif

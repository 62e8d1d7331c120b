#ifndef CUSP_TORSION_H
#define CUSP_TORSION_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CUSP_API __declspec(dllexport)
#else
#define CUSP_API __attribute__((visibility("default")))
#endif

typedef enum cusp_status {
  CUSP_OK = 0,
  CUSP_ERR_INVALID_ARGUMENT = 1, /* bad shape or range */
  CUSP_ERR_PRECONDITION = 2,     /* e.g. Witt condition fails */
  CUSP_ERR_PARSE = 3,            /* malformed JSON or unreadable file */
  CUSP_ERR_NUMERICAL = 4,        /* non-convergence */
  CUSP_ERR_GUARD_RAIL = 5,       /* truncation or resolution rule violated */
  CUSP_ERR_INTERNAL = 6
} cusp_status;

/* Message of the last failure on the calling thread; empty after success. */
CUSP_API const char* cusp_last_error(void);
CUSP_API const char* cusp_version(void);
/* Worker threads for simulations; n <= 0 restores the default (CUSP_TORSION_THREADS or all cores). */
CUSP_API void cusp_set_threads(int n);
/* Strings returned by the library are released with this. */
CUSP_API void cusp_string_free(char* s);

/* ---- closed-form model quantities ---------------------------------------------------- */

CUSP_API cusp_status cusp_c_const(double q, double* out);
CUSP_API cusp_status cusp_logdet_model(double a, double* out);
CUSP_API cusp_status cusp_at_db(int v, const int* b, size_t nb, int orthogonal, double* out);
CUSP_API cusp_status cusp_at_small(int m, const int* bplus, size_t nbp, const double* jdet, size_t nj, int orthogonal,
                                   double* out);
CUSP_API cusp_status cusp_harmonic_correction(int m, const int* bh, size_t nbh, int orthogonal, double* out);
CUSP_API cusp_status cusp_even_cusp_at(int m, const int* b, size_t nb, double* out);
CUSP_API cusp_status cusp_strint_rhs(double a, double t, double* out);
CUSP_API cusp_status cusp_strint_quadrature(double a, double t, double* out);
/* kind: "P0" or "P1m1" */
CUSP_API cusp_status cusp_rtr_closed(const char* kind, double t, double* out);
CUSP_API cusp_status cusp_wolpert_c1(int reference_route, double* out);
CUSP_API cusp_status cusp_burger_coeff(double v1, double v2, double* out);

typedef struct cusp_cm_defect {
  double log2_term, dimension_term, total;
  double euclidean_log2_term, euclidean_dimension_term, euclidean_total;
} cusp_cm_defect;
CUSP_API cusp_status cusp_cm_defect_eval(int m, const int* b, size_t nb, cusp_cm_defect* out);

typedef struct cusp_small_eig_rate {
  double coefficient;
  int exponent;
} cusp_small_eig_rate;
CUSP_API cusp_status cusp_small_eig_rate_eval(int m, int q, double jnorm_sq, cusp_small_eig_rate* out);

/* Betti profile (opaque) */
typedef struct cusp_profile cusp_profile;
CUSP_API cusp_status cusp_profile_from_json(const char* json_text, cusp_profile** out);
CUSP_API cusp_status cusp_profile_random(uint64_t seed, int m, int mirrored, cusp_profile** out);
CUSP_API cusp_status cusp_profile_to_json(const cusp_profile* p, char** out);
CUSP_API void cusp_profile_free(cusp_profile* p);

typedef struct cusp_assembly_report {
  double at_db, at_small, harmonic_correction, assembly;
  double at_db_orth, at_small_orth, harmonic_correction_orth, assembly_orth; /* NaN unless v is even and the profile is mirrored */
  double rt10_correction, rt10a_correction;
} cusp_assembly_report;
CUSP_API cusp_status cusp_profile_assembly(const cusp_profile* p, cusp_assembly_report* out);

/* ---- combinatorial torsion ----------------------------------------------------------- */

typedef struct cusp_complex cusp_complex;
CUSP_API cusp_status cusp_complex_from_json(const char* json_text, cusp_complex** out);
CUSP_API void cusp_complex_free(cusp_complex* c);
CUSP_API cusp_status cusp_complex_top_degree(const cusp_complex* c, int* out);
/* Writes up to cap Betti numbers; *count receives top_degree + 1. */
CUSP_API cusp_status cusp_complex_betti(const cusp_complex* c, int* betti, size_t cap, size_t* count);

typedef struct cusp_torsion_report {
  double log_torsion, laplacian_term, basis_factor;
} cusp_torsion_report;
/* Torsion with the orthonormal harmonic basis. */
CUSP_API cusp_status cusp_complex_log_torsion(const cusp_complex* c, cusp_torsion_report* out);

CUSP_API cusp_status cusp_milnor_suite(uint64_t seed, int count, double* max_residual);

typedef struct cusp_space cusp_space; /* simplicial complex with flat system and collar data */
/* "s1xs2", "s1xs2-twisted", "torus", "dumbbell" */
CUSP_API cusp_status cusp_space_builtin(const char* name, cusp_space** out);
CUSP_API cusp_status cusp_space_from_json(const char* json_text, cusp_space** out);
CUSP_API void cusp_space_free(cusp_space* s);

typedef struct cusp_cut_report {
  int dimension, cutoff, witt;
  double log_tau_m, log_tau_cut, log_itau_hat, log_tau_link, log_itau_cone, log_tau_h1, log_tau_h2;
  double milnor_cut_residual, milnor_mv_residual;
  double rt3_rhs, rt3_residual;
  double rt10_rhs, rt10_residual, rt10_residual_without_sqrt2, sqrt2_term;
} cusp_cut_report;
CUSP_API cusp_status cusp_space_verify_cut(const cusp_space* s, uint64_t seed, cusp_cut_report* out);

typedef struct cusp_subdivision_report {
  double log_tau, log_tau_subdivided, defect;
} cusp_subdivision_report;
/* part: 0 whole space, 1 cut-open space, 2 link */
CUSP_API cusp_status cusp_space_subdivision(const cusp_space* s, int part, cusp_subdivision_report* out);

/* ---- spectral simulation ------------------------------------------------------------- */

/* half_width <= 0 selects 8 sqrt(t) + 20. */
CUSP_API cusp_status cusp_relative_heat_trace(double a, double t, double half_width, int n, double* out);

typedef struct cusp_relative_logdet {
  double value, spectral_value, target, zero_mode;
} cusp_relative_logdet;
CUSP_API cusp_status cusp_relative_logdet_eval(double a, double half_width, int n, cusp_relative_logdet* out);

typedef struct cusp_renorm_volume {
  double finite_part, slope, per_end_constant, per_end_slope, halving_change, fit_residual;
} cusp_renorm_volume;
CUSP_API cusp_status cusp_renorm_volume_eval(cusp_renorm_volume* out);

/* Free-operator eigenvalue (a = 0) error of the lowest mode against (pi/(2L))^2. */
CUSP_API cusp_status cusp_box_eigen_error(double half_width, int n, double* out);

typedef struct cusp_surface cusp_surface;
/* "symmetric", "asymmetric", "handle", "sphere" */
CUSP_API cusp_status cusp_surface_builtin(const char* name, double eps, cusp_surface** out);
CUSP_API cusp_status cusp_surface_from_json(const char* json_text, double eps, cusp_surface** out);
CUSP_API void cusp_surface_free(cusp_surface* s);
CUSP_API cusp_status cusp_surface_set_eps(cusp_surface* s, double eps);
CUSP_API cusp_status cusp_surface_area(const cusp_surface* s, double* area, double* v1, double* v2);

/* Lowest `count` eigenvalues into values[0..count); k_max < 0 chooses the mode cutoff. */
CUSP_API cusp_status cusp_neck_spectrum(const cusp_surface* s, int count, double h, int k_max, double* values,
                                        int* modes_used);

typedef struct cusp_gap_scan {
  double delta;
  int small, zeros;
} cusp_gap_scan;
CUSP_API cusp_status cusp_gap_scan_eval(const double* ascending, size_t n, cusp_gap_scan* out);

typedef struct cusp_small_eig_fit {
  double delta, slope_through_origin, extrapolated, drift, v1, v2, predicted;
  size_t count;
} cusp_small_eig_fit;
/* lambda1 and small_counts receive one entry per eps, in decreasing eps order. */
CUSP_API cusp_status cusp_small_eig_fit_eval(const cusp_surface* s, const double* eps, size_t n, double h,
                                             cusp_small_eig_fit* out, double* lambda1, int* small_counts);

typedef struct cusp_surface_logdet {
  double logdet, coarse, fine, t_min, h, area;
  int euler, modes;
} cusp_surface_logdet;
/* h <= 0 and t_min_factor <= 0 select the defaults. */
CUSP_API cusp_status cusp_surface_logdet_eval(const cusp_surface* s, double h, double t_min_factor,
                                              cusp_surface_logdet* out);

typedef struct cusp_logdet_fit {
  double c_inv_eps, c_loglog, c_log, c_const, condition;
  int monotone;
} cusp_logdet_fit;
CUSP_API cusp_status cusp_logdet_fit_series(const double* eps, const double* logdet, size_t n, cusp_logdet_fit* out);
CUSP_API cusp_status cusp_sphere_logdet(double radius, double* out);

#ifdef __cplusplus
}
#endif

#endif

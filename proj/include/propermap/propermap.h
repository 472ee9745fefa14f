#ifndef PROPERMAP_PROPERMAP_H
#define PROPERMAP_PROPERMAP_H

/* Proper holomorphic maps of bounded multiply connected planar domains onto
 * the right half plane: Szego/Garabedian kernels, Ahlfors maps, Grunsky maps
 * and their positive combinations.
 *
 * All functions return a pm_status. On failure pm_last_error() describes the
 * problem (thread local, valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * pm_string_free. Curve indices are 1-based; the last curve is outermost.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PROPERMAP_BUILDING_LIBRARY)
#    define PM_API __declspec(dllexport)
#  else
#    define PM_API __declspec(dllimport)
#  endif
#else
#  define PM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pm_status {
  PM_OK = 0,
  PM_ERR_INVALID_ARGUMENT = 1,
  PM_ERR_DOMAIN = 2,
  PM_ERR_INADMISSIBLE_BASE = 3,
  PM_ERR_NUMERICAL = 4,
  PM_ERR_INVALID_COMBINATION = 5,
  PM_ERR_STALE = 6,
  PM_ERR_IO = 7,
  PM_ERR_INTERNAL = 8
} pm_status;

typedef struct pm_domain pm_domain;
typedef struct pm_map pm_map;
typedef struct pm_ahlfors pm_ahlfors;

typedef struct pm_boundary_point {
  int curve; /* 1-based */
  double t;  /* parameter in [0, 2pi) */
} pm_boundary_point;

typedef enum pm_base_kind {
  PM_BASE_AUTO = 0,     /* interior reference point of the domain */
  PM_BASE_INTERIOR = 1, /* x, y */
  PM_BASE_BOUNDARY = 2  /* boundary */
} pm_base_kind;

typedef struct pm_base {
  pm_base_kind kind;
  double x, y;
  pm_boundary_point boundary;
} pm_base;

typedef struct pm_sample {
  double x, y;
  double re, im;           /* F(z) in the right half plane */
  double disc_re, disc_im; /* Cayley image (F - 1)/(F + 1) */
  int near_pole;
  int inside; /* 0: z is not in the domain and the values are NaN */
} pm_sample;

typedef struct pm_thresholds {
  double exclusion;     /* radians skipped around each pole */
  double boundary_real; /* max |Re F| / median |F| on the boundary */
  double pole;          /* max |1/F| next to a pole */
  double period;        /* max |Im period| / median |F| per cycle */
} pm_thresholds;

PM_API const char* pm_version(void);
PM_API const char* pm_last_error(void);
PM_API const char* pm_status_name(pm_status status);
PM_API void pm_string_free(char* s);
PM_API void pm_thresholds_default(pm_thresholds* out);
/* Applies "key=value" to *th. */
PM_API pm_status pm_thresholds_set(pm_thresholds* th, const char* assignment);

/* Domains. nodes = 0 takes "nodes" from the JSON, else 256. */
PM_API pm_status pm_domain_load_json(const char* json, int nodes, pm_domain** out);
PM_API pm_status pm_domain_load_file(const char* path, int nodes, pm_domain** out);
PM_API void pm_domain_free(pm_domain* d);
PM_API int pm_domain_curve_count(const pm_domain* d);
PM_API int pm_domain_nodes(const pm_domain* d);
/* 16 hex digits, valid for the lifetime of the domain. */
PM_API const char* pm_domain_hash(const pm_domain* d);
PM_API pm_status pm_domain_summary_json(const pm_domain* d, char** out);
PM_API pm_status pm_domain_contains(const pm_domain* d, double x, double y, int* inside);
/* xmin, xmax, ymin, ymax */
PM_API pm_status pm_domain_bbox(const pm_domain* d, double out[4]);
PM_API pm_status pm_domain_reference_point(const pm_domain* d, double* x, double* y);
/* max over curves j of |Im(F_j'/F_1')| on the boundary. */
PM_API pm_status pm_domain_double_quotient(const pm_domain* d, double* out);

/* Ahlfors map f_a = S(., a)/L(., a) onto the unit disc. */
PM_API pm_status pm_ahlfors_build(const pm_domain* d, double ax, double ay, pm_ahlfors** out);
PM_API void pm_ahlfors_free(pm_ahlfors* f);
PM_API pm_status pm_ahlfors_eval(const pm_ahlfors* f, double x, double y, double* re, double* im);
PM_API pm_status pm_ahlfors_eval_boundary(const pm_ahlfors* f, pm_boundary_point z, double* re, double* im);
/* Base point, S(a,a), f_a'(a), zeros of S(., a), solver residual and
 * boundary modulus defect. */
PM_API pm_status pm_ahlfors_info_json(const pm_ahlfors* f, char** out);

/* Grunsky map with one marked point per curve, in curve order. base may be
 * NULL (auto). */
PM_API pm_status pm_grunsky_build(const pm_domain* d, const pm_boundary_point* marked, size_t count,
                                  const pm_base* base, pm_map** out);
PM_API void pm_map_free(pm_map* f);
PM_API int pm_map_is_grunsky(const pm_map* f);
PM_API int pm_map_pole_count(const pm_map* f);
PM_API pm_status pm_map_poles(const pm_map* f, pm_boundary_point* out, double* weights, size_t capacity,
                              size_t* count);
/* Canonical coefficients a_j (a_n = 1) of a Grunsky map. */
PM_API pm_status pm_map_coefficients(const pm_map* f, double* out, size_t capacity, size_t* count);
PM_API pm_status pm_map_eval(const pm_map* f, double x, double y, pm_sample* out);
/* xy holds count interleaved (x, y) pairs; evaluated on a worker pool. */
PM_API pm_status pm_map_eval_many(const pm_map* f, const double* xy, size_t count, pm_sample* out);
PM_API pm_status pm_map_eval_boundary(const pm_map* f, pm_boundary_point z, double* re, double* im);
PM_API pm_status pm_map_degree(const pm_map* f, int* degree);
PM_API pm_status pm_map_multiplicity(const pm_map* f, int curve, int* multiplicity);
/* *passed is 1 iff every threshold is met. th may be NULL (defaults). */
PM_API pm_status pm_map_certify(const pm_map* f, const pm_thresholds* th, int* passed, char** report_json);
PM_API pm_status pm_map_to_json(const pm_map* f, char** out);
/* PM_ERR_STALE when the artifact's domain hash differs from d. */
PM_API pm_status pm_map_from_json(const pm_domain* d, const char* json, pm_map** out);

/* sum_k coeffs[k] * maps[k]. On PM_ERR_INVALID_COMBINATION *report_json (if
 * requested) lists the offending weights. */
PM_API pm_status pm_semigroup_combine(const pm_map* const* maps, const double* coeffs, size_t count, pm_map** out,
                                      char** report_json);
PM_API pm_status pm_semigroup_add_point(const pm_map* f, pm_boundary_point beta, double c3, pm_map** out);
PM_API pm_status pm_semigroup_remove_point(const pm_map* f, pm_boundary_point b, pm_map** out, double* c0,
                                           double* c);

/* Second Grunsky map whose poles get distinct values under f (a Grunsky map). */
PM_API pm_status pm_primitive_pair(const pm_map* f, uint64_t seed, pm_map** second, char** certificate_json);

/* Rebuilds the artifact on d (at d's node count), certifies it and compares
 * it with the stored weights and sample values. */
PM_API pm_status pm_verify_json(const pm_domain* d, const char* map_json, const pm_thresholds* th, int* passed,
                                char** report_json);

#ifdef __cplusplus
}
#endif

#endif

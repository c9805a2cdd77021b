/* C interface to the bhd toolkit. All functions return a bhd_status; on
 * failure bhd_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * bhd_string_free. */
#ifndef BHD_BHD_H
#define BHD_BHD_H

#include <stddef.h>
#include <stdint.h>

#if defined(BHD_BUILDING)
#define BHD_API __attribute__((visibility("default")))
#else
#define BHD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bhd_status {
  BHD_OK = 0,
  BHD_E_INVALID_ARGUMENT = 1,
  BHD_E_DIMENSION_MISMATCH = 2,
  BHD_E_DEGENERATE_SPAN = 3,
  BHD_E_UNSUPPORTED_DIMENSION = 4,
  BHD_E_NOT_SIMPLE = 5,
  BHD_E_ZERO_BIVECTOR = 6,
  BHD_E_UNBOUNDED_SECTION = 7,
  BHD_E_INSUFFICIENT_SAMPLES = 8,
  BHD_E_INVALID_ID = 9,
  BHD_E_ILL_CONDITIONED = 10,
  BHD_E_CERTIFICATE_FAILED = 11,
  BHD_E_PARSE = 12,
  BHD_E_INTERNAL = 100
} bhd_status;

typedef struct bhd_body bhd_body;

typedef struct bhd_builtin_params {
  int n;             /* euclid-n */
  double p;          /* complex-lp */
  int k;             /* complex-lp */
  int euclidean_dim; /* product-c-b */
} bhd_builtin_params;

#define BHD_MAX_EPS 16

typedef struct bhd_certify_config {
  double box_halfwidth;
  int grid_n;
  double eps[BHD_MAX_EPS];
  size_t eps_count;
  int extra_planes;
  uint64_t seed;
  double gap_threshold;
} bhd_certify_config;

BHD_API const char* bhd_version(void);
BHD_API const char* bhd_last_error(void);
BHD_API const char* bhd_status_name(bhd_status status);
BHD_API void bhd_string_free(char* s);

/* 0 selects the machine's hardware concurrency. */
BHD_API void bhd_set_threads(unsigned n);

BHD_API void bhd_builtin_params_default(bhd_builtin_params* params);
/* params may be NULL for defaults. */
BHD_API bhd_status bhd_body_builtin(const char* name, const bhd_builtin_params* params, bhd_body** out);
BHD_API bhd_status bhd_body_from_json(const char* json, bhd_body** out);
BHD_API bhd_status bhd_body_from_file(const char* path, bhd_body** out);
BHD_API bhd_status bhd_body_to_json(const bhd_body* body, char** out);
BHD_API void bhd_body_free(bhd_body* body);
BHD_API int bhd_body_dim(const bhd_body* body);
BHD_API bhd_status bhd_minkowski(const bhd_body* body, const double* x, size_t n, double* out);

/* Writes an orthonormal basis of the plane to u and v, each of length n. */
BHD_API bhd_status bhd_parse_plane(const char* spec, int n, double* u, double* v);

/* Section by span(u, v); u and v have length dim(body). radial_samples = 0
 * selects the default. The JSON has area, method and vertices. */
BHD_API bhd_status bhd_section(const bhd_body* body, const double* u, const double* v, size_t radial_samples,
                               char** out_json);
BHD_API bhd_status bhd_section_area(const bhd_body* body, const double* u, const double* v, double* out);

/* Density of a simple multivector given by its lexicographic coordinates.
 * degree 2 uses exact or radial sections; degree dim - 2 with dim in {4, 6}
 * uses Monte Carlo with mc_samples and seed (degree 2 in R^4 picks the exact
 * route unless mc_samples > 0). */
BHD_API bhd_status bhd_density(const bhd_body* body, int degree, const double* coords, size_t len,
                               uint64_t mc_samples, uint64_t seed, char** out_json);

/* params = (a, b, c, d). JSON has gap, area_factor, section_area, w0_area. */
BHD_API bhd_status bhd_contraction_gap(const bhd_body* body, const double params[4], const double* u,
                                       const double* v, char** out_json);

BHD_API void bhd_certify_config_default(bhd_certify_config* config);
/* Writes the certificate JSON even when the certificate fails, in which case
 * BHD_E_CERTIFICATE_FAILED is returned. */
BHD_API bhd_status bhd_certify(const bhd_body* body, const bhd_certify_config* config, int include_runtime,
                               char** out_json);

/* CSV with columns family,eps,lower_bound,exact_area,fitted_c over the
 * given epsilons (>= 4 values in (0, 0.05], spanning a decade). */
BHD_API bhd_status bhd_lemmas_csv(const bhd_body* body, const double* eps, size_t count, char** out_csv);

BHD_API bhd_status bhd_probe(const bhd_body* body, uint64_t trials, uint64_t seed, uint64_t mc_samples,
                             char** out_json);

/* Wraps result_json in the report envelope and serializes every float with
 * 17 significant digits. config_echo_json may be NULL. */
BHD_API bhd_status bhd_report(const char* command, const char* config_echo_json, uint64_t seed, int deterministic,
                              const char* result_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif

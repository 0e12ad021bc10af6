/* germlab: numerical experiments on set-germs at the origin.
 *
 * Every call returns a germlab_status. On failure the message is available
 * from germlab_last_error() (per thread) until the next failing call.
 * Strings returned through char** are owned by the caller and released with
 * germlab_free_string(). Handles are released with their _free function;
 * passing NULL to any _free function is a no-op.
 *
 * Reports are JSON objects of the form
 *   {"analysis": ..., "outcome": "pass"|"fail"|"inconclusive",
 *    "result": {...}, "evidence": {"columns": [...], "rows": [[...]]},
 *    "plots": [...]}
 */
#ifndef GERMLAB_GERMLAB_H
#define GERMLAB_GERMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GERMLAB_API __declspec(dllexport)
#else
#define GERMLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum germlab_status {
  GERMLAB_OK = 0,
  GERMLAB_INVALID_ARGUMENT = 1,
  GERMLAB_SCHEMA = 2,
  GERMLAB_PARSE = 3,
  GERMLAB_DOMAIN = 4,
  GERMLAB_NOT_POPULATED = 5,
  GERMLAB_INTERNAL = 6
} germlab_status;

/* Matches the CLI exit codes 0, 1, 2. Hypotheses-unmet maps to INCONCLUSIVE. */
typedef enum germlab_outcome {
  GERMLAB_PASS = 0,
  GERMLAB_FAIL = 1,
  GERMLAB_INCONCLUSIVE = 2
} germlab_outcome;

typedef struct germlab_schedule germlab_schedule;
typedef struct germlab_germ germlab_germ;
typedef struct germlab_sequence germlab_sequence;
typedef struct germlab_map germlab_map;
typedef struct germlab_dirset germlab_dirset;

#define GERMLAB_DEFAULT_SEED 0x5EEDu

GERMLAB_API const char* germlab_version(void);
GERMLAB_API const char* germlab_last_error(void);
GERMLAB_API void germlab_free_string(char* s);

/* Schedules: t_k = t0 r^k, k = 0..depth-1. */
GERMLAB_API germlab_status germlab_schedule_create(double t0, double r, int depth, germlab_schedule** out);
GERMLAB_API germlab_status germlab_schedule_standard(germlab_schedule** out);
GERMLAB_API germlab_status germlab_schedule_from_json(const char* json, germlab_schedule** out);
GERMLAB_API germlab_status germlab_schedule_to_json(const germlab_schedule* s, char** out);
GERMLAB_API void germlab_schedule_free(germlab_schedule* s);

/* Germs from a SampledGerm document or a generator document. A NULL
 * schedule selects the standard schedule (1, 1/2, 30). */
GERMLAB_API germlab_status germlab_germ_from_json(const char* json, const germlab_schedule* s, int per_shell,
                                                  uint64_t seed, germlab_germ** out);
/* The germ's sample as a SampledGerm document. */
GERMLAB_API germlab_status germlab_germ_to_json(const germlab_germ* g, char** out);
GERMLAB_API int germlab_germ_dim(const germlab_germ* g);
GERMLAB_API germlab_status germlab_germ_distance(const germlab_germ* g, const double* point, size_t n, double* out);
GERMLAB_API void germlab_germ_free(germlab_germ* g);

/* Sequences: a named family with JSON params (NULL for none), or a document
 * {"prefix": [...], "rule": {"name", "params"} | "none"}. */
GERMLAB_API germlab_status germlab_sequence_family(const char* name, const char* params_json,
                                                   germlab_sequence** out);
GERMLAB_API germlab_status germlab_sequence_from_json(const char* json, germlab_sequence** out);
GERMLAB_API germlab_status germlab_sequence_to_json(const germlab_sequence* a, char** out);
GERMLAB_API germlab_status germlab_sequence_value(const germlab_sequence* a, int64_t m, double* out);
GERMLAB_API void germlab_sequence_free(germlab_sequence* a);

/* Maps R^n -> R^m. */
GERMLAB_API germlab_status germlab_map_from_json(const char* json, germlab_map** out);
GERMLAB_API germlab_status germlab_map_to_json(const germlab_map* f, char** out);
GERMLAB_API int germlab_map_dim_in(const germlab_map* f);
GERMLAB_API int germlab_map_dim_out(const germlab_map* f);
GERMLAB_API germlab_status germlab_map_eval(const germlab_map* f, const double* x, size_t n, double* y, size_t m);
GERMLAB_API void germlab_map_free(germlab_map* f);

GERMLAB_API germlab_status germlab_dirset_from_json(const char* json, germlab_dirset** out);
GERMLAB_API germlab_status germlab_dirset_to_json(const germlab_dirset* d, char** out);
GERMLAB_API size_t germlab_dirset_size(const germlab_dirset* d);
GERMLAB_API void germlab_dirset_free(germlab_dirset* d);

/* Analyses. `report` receives the JSON report; `outcome` may be NULL. */

/* window = 0 selects horizon/10. */
GERMLAB_API germlab_status germlab_ssp_sequence(const germlab_sequence* a, int64_t horizon, double tol,
                                                int64_t window, int k_max, char** report, germlab_outcome* outcome);
GERMLAB_API germlab_status germlab_ssp_germ(const germlab_germ* g, const germlab_schedule* s, double eps, double tol,
                                            char** report, germlab_outcome* outcome);
/* `dirset` may be NULL when only the report is wanted. */
GERMLAB_API germlab_status germlab_direction(const germlab_germ* g, const germlab_schedule* s, double eps,
                                             germlab_dirset** dirset, char** report);
/* n_resolutions = 0 selects eps * {16, 8, 4, 2}. */
GERMLAB_API germlab_status germlab_dimension(const germlab_dirset* d, const double* resolutions,
                                             size_t n_resolutions, char** report);
/* anchors: {"points", "values", "L"?, "mode"?}. L <= 0 and mode NULL defer to
 * the document, then to the empirical constant and "inf". grid_json is an
 * array of points or NULL for the default grid. `ext` may be NULL. */
GERMLAB_API germlab_status germlab_extend(const char* anchors_json, double L, const char* mode,
                                          const char* grid_json, germlab_map** ext, char** report);
GERMLAB_API germlab_status germlab_pseudo_derivative(const germlab_map* f, const char* grid_json, double tol,
                                                     int budget, char** report, germlab_outcome* outcome);

/* Harness configuration: {"schedule", "eps", "eps_int", "ssp_tol", "tol",
 * "dphi_tol", "budget", "resolutions"}, all optional; NULL for defaults. */
GERMLAB_API germlab_status germlab_cone_invariance(const germlab_germ* a, const germlab_germ* b,
                                                   const germlab_map* phi, const char* config_json, char** report,
                                                   germlab_outcome* outcome);
GERMLAB_API germlab_status germlab_dimension_equality(const germlab_germ* a, const germlab_germ* b,
                                                      const germlab_map* h, const char* config_json, char** report,
                                                      germlab_outcome* outcome);
GERMLAB_API germlab_status germlab_weak_transversality(const germlab_germ* a, const germlab_germ* b,
                                                       const germlab_map* h, const char* config_json, char** report,
                                                       germlab_outcome* outcome);
/* h may be NULL: predicates only, outcome PASS. */
GERMLAB_API germlab_status germlab_transversality(const germlab_germ* a, const germlab_germ* b, const germlab_map* h,
                                                  const char* config_json, char** report, germlab_outcome* outcome);

/* Named end-to-end examples; names as a JSON array of strings. */
GERMLAB_API germlab_status germlab_demo_names(char** out);
GERMLAB_API germlab_status germlab_demo(const char* name, uint64_t seed, char** report, germlab_outcome* outcome);

/* The report's evidence table as CSV. */
GERMLAB_API germlab_status germlab_report_evidence_csv(const char* report_json, char** csv);

#ifdef __cplusplus
}
#endif

#endif

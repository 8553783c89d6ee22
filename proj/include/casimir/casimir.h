/*
 * C interface to the Casimir/Lifshitz engine.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a casimir_status; on
 * failure casimir_last_error() describes the problem for the calling thread.
 * Handles are immutable after creation and may be shared between threads.
 */
#ifndef CASIMIR_CASIMIR_H
#define CASIMIR_CASIMIR_H

#include <stddef.h>

#if defined(CASIMIR_BUILDING_LIBRARY)
#define CASIMIR_API __attribute__((visibility("default")))
#else
#define CASIMIR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum casimir_status {
  CASIMIR_OK = 0,
  CASIMIR_E_INVALID_ARGUMENT = 1,
  CASIMIR_E_FORMAT = 2,        /* malformed dielectric table */
  CASIMIR_E_EXTRAPOLATION = 3, /* table cannot be extended to low frequency */
  CASIMIR_E_CONVERGENCE = 4,   /* quadrature out of subdivisions */
  CASIMIR_E_TRUNCATION = 5,    /* Matsubara sum hit max_terms; partial result returned */
  CASIMIR_E_IO = 6,
  CASIMIR_E_INTERNAL = 7
} casimir_status;

typedef enum casimir_prescription {
  CASIMIR_POINTWISE = 0,
  CASIMIR_IDEAL_TE_ZERO = 1
} casimir_prescription;

typedef enum casimir_path_kind {
  CASIMIR_PATH_FIXED_Q = 0,
  CASIMIR_PATH_FIXED_P = 1
} casimir_path_kind;

typedef enum casimir_limit_class {
  CASIMIR_TE_VANISHES = 0,
  CASIMIR_TE_IDEAL = 1,
  CASIMIR_INDETERMINATE = 2
} casimir_limit_class;

typedef struct casimir_model casimir_model;
typedef struct casimir_result casimir_result;
typedef struct casimir_trace casimir_trace;

typedef struct casimir_sum_config {
  double term_rel_tol;
  size_t max_terms;
  double quad_rel_tol;
  double quad_abs_tol;
  size_t quad_max_subdivisions;
  double quad_tail_cut;
} casimir_sum_config;

typedef struct casimir_term {
  size_t n;
  double xi; /* rad/s */
  double te; /* Pa */
  double tm; /* Pa */
} casimir_term;

typedef struct casimir_trace_row {
  double xi;
  double gamma0;
  double gamma1;
  double diff;
  double ratio;
  double rte2;
} casimir_trace_row;

CASIMIR_API const char* casimir_version(void);
CASIMIR_API const char* casimir_last_error(void);
CASIMIR_API const char* casimir_status_string(casimir_status status);

/* Physical constants the engine uses (SI). */
CASIMIR_API double casimir_const_hbar(void);
CASIMIR_API double casimir_const_c(void);
CASIMIR_API double casimir_const_kb(void);
CASIMIR_API double casimir_ev_to_rad_per_s(double energy_ev);

/* Dielectric models. Frequencies in rad/s. */
CASIMIR_API casimir_status casimir_model_ideal(casimir_model** out);
CASIMIR_API casimir_status casimir_model_vacuum(casimir_model** out);
CASIMIR_API casimir_status casimir_model_plasma(double omega_p, casimir_model** out);
CASIMIR_API casimir_status casimir_model_drude(double omega_p, double gamma_d, casimir_model** out);
CASIMIR_API casimir_status casimir_model_load_table(const char* path, casimir_model** out);
CASIMIR_API casimir_status casimir_model_parse_table(const char* text, casimir_model** out);
CASIMIR_API void casimir_model_free(casimir_model* model);
CASIMIR_API const char* casimir_model_name(const casimir_model* model);
/* eps(i xi); *is_infinite is set to 1 for the distinguished infinite value. */
CASIMIR_API casimir_status casimir_model_eps(const casimir_model* model, double xi, double* eps,
                                             int* is_infinite);

CASIMIR_API void casimir_sum_config_default(casimir_sum_config* cfg);

/* Parallel plates at gap d (m) and temperature T > 0 (K). cfg may be NULL for defaults.
 * On CASIMIR_E_TRUNCATION *out still receives the partial result. */
CASIMIR_API casimir_status casimir_pressure(const casimir_model* model, double d, double T,
                                            casimir_prescription prescription,
                                            const casimir_sum_config* cfg, casimir_result** out);
CASIMIR_API void casimir_result_free(casimir_result* result);
CASIMIR_API double casimir_result_pressure(const casimir_result* result);
CASIMIR_API double casimir_result_free_energy(const casimir_result* result);
CASIMIR_API double casimir_result_eta(const casimir_result* result);
CASIMIR_API size_t casimir_result_n_used(const casimir_result* result);
CASIMIR_API double casimir_result_est_rel_err(const casimir_result* result);
CASIMIR_API size_t casimir_result_term_count(const casimir_result* result);
CASIMIR_API casimir_status casimir_result_term(const casimir_result* result, size_t index,
                                               casimir_term* term);

CASIMIR_API casimir_status casimir_free_energy(const casimir_model* model, double d, double T,
                                               casimir_prescription prescription,
                                               const casimir_sum_config* cfg, double* out);
CASIMIR_API casimir_status casimir_pressure_t0(const casimir_model* model, double d,
                                               const casimir_sum_config* cfg, double* out);
/* *pfa_valid is 0 when R < 100 d. */
CASIMIR_API casimir_status casimir_pfa_sphere_plate(const casimir_model* model, double radius,
                                                    double d, double T,
                                                    casimir_prescription prescription,
                                                    const casimir_sum_config* cfg, double* force,
                                                    int* pfa_valid);

/* Zero-frequency limit traces. path_param is q (rad/m) or p depending on kind. */
CASIMIR_API casimir_status casimir_trace_limit(const casimir_model* model, casimir_path_kind kind,
                                               double path_param, double xi_start, int decades,
                                               int per_decade, casimir_trace** out);
CASIMIR_API void casimir_trace_free(casimir_trace* trace);
CASIMIR_API size_t casimir_trace_row_count(const casimir_trace* trace);
CASIMIR_API casimir_status casimir_trace_get_row(const casimir_trace* trace, size_t index,
                                             casimir_trace_row* row);
CASIMIR_API casimir_status casimir_trace_classify(const casimir_trace* trace,
                                                  casimir_limit_class* out);
CASIMIR_API const char* casimir_limit_class_name(casimir_limit_class cls);

#ifdef __cplusplus
}
#endif

#endif /* CASIMIR_CASIMIR_H */

/*
 * Copyright 2026 The allometry authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the allometry toolkit: activity samplers, growth-exponent
 * fits, entropy estimators and the parameter sweeps.
 *
 * Conventions
 *  - Every fallible call returns an allo_status; on failure a message is
 *    available from allo_last_error() on the same thread until the next call.
 *  - Objects created by allo_*_create / allo_run_* / allo_*_read are owned by
 *    the caller and released with the matching allo_*_free (NULL is a no-op).
 *  - Strings returned through `char**` are released with allo_string_free.
 *  - Handles are not thread-safe; distinct handles may be used concurrently.
 */
#ifndef ALLOMETRY_ALLOMETRY_H
#define ALLOMETRY_ALLOMETRY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ALLOMETRY_BUILDING)
#    define ALLO_API __declspec(dllexport)
#  else
#    define ALLO_API __declspec(dllimport)
#  endif
#else
#  define ALLO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum allo_status {
    ALLO_OK = 0,
    ALLO_E_BAD_INPUT = 2, /* invalid parameters, malformed data, model domain */
    ALLO_E_NUMERIC = 3,   /* degenerate design/truncation, overflow */
    ALLO_E_IO = 4,        /* file missing, unreadable or unwritable */
    ALLO_E_INTERNAL = 5
} allo_status;

typedef enum allo_family {
    ALLO_NORMAL = 0,
    ALLO_WEIBULL = 1,
    ALLO_POISSON = 2,
    ALLO_GAMMA = 3,
    ALLO_LOGNORMAL = 4,
    ALLO_PARETO = 5
} allo_family;

/* p2 is NaN when absent (Poisson). max_activity is +INFINITY when unbounded. */
typedef struct allo_distribution {
    allo_family family;
    double p1;
    double p2;
    double max_activity;
} allo_distribution;

typedef enum allo_placement {
    ALLO_LOG_UNIFORM_RANDOM = 0,
    ALLO_LOG_SPACED = 1
} allo_placement;

typedef struct allo_grid {
    uint64_t p_min;
    uint64_t p_max;
    uint64_t n_points;
    allo_placement placement;
} allo_grid;

typedef struct allo_sample {
    uint64_t population; /* P */
    double new_tags;     /* T */
    uint64_t task_id;
} allo_sample;

typedef struct allo_scaling_fit {
    double gamma;
    double log_intercept;
    double stderr_gamma;
    double r_squared;
    uint64_t n_points;
} allo_scaling_fit;

typedef enum allo_entropy_mode {
    ALLO_MODE_PAPER = 0,    /* H1 / (N ln N) */
    ALLO_MODE_STANDARD = 1, /* H1 / ln N */
    ALLO_MODE_NONE = 2      /* H1 */
} allo_entropy_mode;

typedef enum allo_estimator {
    ALLO_ESTIMATOR_ANALYTIC = 0,
    ALLO_ESTIMATOR_SHARE = 1
} allo_estimator;

typedef struct allo_entropy_estimate {
    double h1;
    uint64_t n_users;
    double h_rescaled;
    allo_entropy_mode mode;
} allo_entropy_estimate;

typedef struct allo_entropy_point {
    double c;
    double beta;
    double h;
} allo_entropy_point;

typedef struct allo_entropy_model_fit {
    double k1;
    double k2;
    double k3;
    double rms_residual;
    double h_threshold;
} allo_entropy_model_fit;

/* ---- library ------------------------------------------------------------ */

ALLO_API const char* allo_version(void);
ALLO_API const char* allo_last_error(void);
ALLO_API void allo_string_free(char* s);
/* Hex SHA-256 of a file; `out` must hold 65 bytes. */
ALLO_API allo_status allo_file_sha256(const char* path, char* out);
/* Hex SHA-256 of n bytes; `out` must hold 65 bytes. */
ALLO_API allo_status allo_sha256(const void* data, size_t n, char* out);

/* ---- randomness --------------------------------------------------------- */

typedef struct allo_stream allo_stream;

ALLO_API uint64_t allo_mix64(uint64_t z);
ALLO_API uint64_t allo_stream_seed(uint64_t master_seed, uint64_t task_id);
ALLO_API allo_status allo_stream_create(uint64_t master_seed, uint64_t task_id,
                                        allo_stream** out);
ALLO_API uint64_t allo_stream_next(allo_stream* stream);
/* Uniform draw in (0, 1). */
ALLO_API double allo_stream_uniform(allo_stream* stream);
ALLO_API void allo_stream_free(allo_stream* stream);

/* ---- distributions ------------------------------------------------------ */

ALLO_API allo_status allo_distribution_validate(const allo_distribution* spec);
/* Writes n positive draws to `out`. */
ALLO_API allo_status allo_sample_activities(const allo_distribution* spec, size_t n,
                                            allo_stream* stream, double* out);
ALLO_API allo_status allo_analytic_entropy(const allo_distribution* spec, double* out);

/* ---- growth ------------------------------------------------------------- */

ALLO_API allo_status allo_simulate_system(const allo_distribution* spec, uint64_t population,
                                          allo_stream* stream, allo_sample* out);
/* Predicted growth exponent for a power-law activity exponent beta > 1. */
ALLO_API allo_status allo_power_law_gamma(double beta, double* out);

typedef struct allo_scatter allo_scatter;

/* One scatter of n_points systems; a NULL grid selects the default grid. */
ALLO_API allo_status allo_scatter_generate(const allo_distribution* spec, const allo_grid* grid,
                                           uint64_t master_seed, uint64_t task_id,
                                           allo_scatter** out);
ALLO_API allo_status allo_scatter_from_arrays(const uint64_t* population, const double* new_tags,
                                              size_t n, allo_scatter** out);
/* Reads `point_id,P,T` or `P,T`. Rejected rows are listed as diagnostics. */
ALLO_API allo_status allo_scatter_read_csv(const char* path, allo_scatter** out);
ALLO_API size_t allo_scatter_size(const allo_scatter* scatter);
ALLO_API allo_status allo_scatter_get(const allo_scatter* scatter, size_t index, allo_sample* out);
ALLO_API size_t allo_scatter_diagnostic_count(const allo_scatter* scatter);
/* Borrowed string valid for the lifetime of the scatter; NULL if out of range. */
ALLO_API const char* allo_scatter_diagnostic(const allo_scatter* scatter, size_t index);
ALLO_API allo_status allo_scatter_write_csv(const allo_scatter* scatter, const char* path);
ALLO_API allo_status allo_scatter_render_svg(const allo_scatter* scatter,
                                             const allo_scaling_fit* fit, const char* path);
ALLO_API void allo_scatter_free(allo_scatter* scatter);

/* ---- scaling ------------------------------------------------------------ */

ALLO_API allo_status allo_fit_loglog(const allo_scatter* scatter, allo_scaling_fit* out);
ALLO_API allo_status allo_predict(const allo_scaling_fit* fit, uint64_t population, double* out);
ALLO_API allo_status allo_scaling_fit_to_json(const allo_scaling_fit* fit, char** out);

/* ---- entropy ------------------------------------------------------------ */

ALLO_API allo_status allo_share_entropy(const double* activities, size_t n, double* out);
ALLO_API allo_status allo_entropy_model(double c, double beta, double k1, double k2, double k3,
                                        double* out);
ALLO_API allo_status allo_rescale(double h1, uint64_t n_users, allo_entropy_mode mode,
                                  allo_entropy_estimate* out);
ALLO_API allo_status allo_fit_entropy_model(const allo_entropy_point* points, size_t n,
                                            allo_entropy_model_fit* out);
ALLO_API allo_status allo_entropy_model_fit_to_json(const allo_entropy_model_fit* fit, char** out);

/* ---- sweeps ------------------------------------------------------------- */

typedef struct allo_config allo_config;

/* The seven growth sweeps at full size. */
ALLO_API allo_status allo_config_default(allo_config** out);
/* Pareto-1 and LogNormal sweeps only. */
ALLO_API allo_status allo_config_default_hgamma(allo_config** out);
/* Appends the light-tailed reference sweeps (Normal, Weibull, Poisson, Gamma,
 * Pareto-2) that are not already present. */
ALLO_API allo_status allo_config_add_light_tailed(allo_config* config);
/* Applies a JSON document's keys on top of `config`. */
ALLO_API allo_status allo_config_merge_json(allo_config* config, const char* json);
ALLO_API allo_status allo_config_merge_file(allo_config* config, const char* path);
ALLO_API allo_status allo_config_set_seed(allo_config* config, uint64_t seed);
ALLO_API allo_status allo_config_set_threads(allo_config* config, unsigned threads);
ALLO_API allo_status allo_config_set_scale(allo_config* config, double fraction);
ALLO_API allo_status allo_config_set_grid(allo_config* config, const allo_grid* grid);
ALLO_API allo_status allo_config_set_entropy(allo_config* config, allo_estimator estimator,
                                             allo_entropy_mode mode, uint64_t entropy_n);
ALLO_API uint64_t allo_config_seed(const allo_config* config);
ALLO_API allo_status allo_config_grid(const allo_config* config, allo_grid* out);
/* The distribution specs the sweeps visit, cell by cell in run order. */
ALLO_API size_t allo_config_spec_count(const allo_config* config);
ALLO_API allo_status allo_config_spec(const allo_config* config, size_t index, allo_distribution* out);
/* Canonical JSON of the effective configuration (threads excluded). */
ALLO_API allo_status allo_config_to_json(const allo_config* config, char** out);
ALLO_API void allo_config_free(allo_config* config);

typedef struct allo_table1_row {
    const char* label; /* borrowed from the result */
    allo_family family;
    uint64_t n_sims;
    double mean_gamma;
    double sd_gamma;
} allo_table1_row;

typedef struct allo_table1 allo_table1;

ALLO_API allo_status allo_run_table1(const allo_config* config, allo_table1** out);
ALLO_API size_t allo_table1_size(const allo_table1* table);
ALLO_API allo_status allo_table1_get(const allo_table1* table, size_t index, allo_table1_row* out);
/* `family,n_sims,mean_gamma,sd_gamma` */
ALLO_API allo_status allo_table1_write_csv(const allo_table1* table, const char* path);
ALLO_API void allo_table1_free(allo_table1* table);

typedef struct allo_hgamma_point {
    const char* label; /* borrowed from the result */
    allo_distribution spec;
    allo_entropy_estimate entropy;
    double gamma;
} allo_hgamma_point;

typedef struct allo_threshold_report {
    uint64_t n_accelerating; /* heavy-tailed points with gamma > 1.1 */
    uint64_t n_light;        /* points of light-tailed families */
    double min_h_accelerating;
    double max_h_light;
    uint64_t violating_pairs;
    int holds;
} allo_threshold_report;

typedef struct allo_hgamma allo_hgamma;

ALLO_API allo_status allo_run_hgamma(const allo_config* config, allo_hgamma** out);
ALLO_API size_t allo_hgamma_size(const allo_hgamma* result);
ALLO_API allo_status allo_hgamma_get(const allo_hgamma* result, size_t index,
                                     allo_hgamma_point* out);
ALLO_API allo_status allo_hgamma_threshold(const allo_hgamma* result, allo_threshold_report* out);
/* `family,p1,p2,H,gamma` */
ALLO_API allo_status allo_hgamma_write_csv(const allo_hgamma* result, const char* path);
ALLO_API void allo_hgamma_free(allo_hgamma* result);

typedef struct allo_fig2_row {
    double c;
    double beta;
    allo_entropy_estimate entropy;
} allo_fig2_row;

typedef struct allo_fig2 allo_fig2;

ALLO_API allo_status allo_run_fig2(const allo_config* config, allo_fig2** out);
/* Reads `C,beta,H` or `C,beta,N,h1,h_rescaled,mode`; rows carry H only. */
ALLO_API allo_status allo_fig2_read_csv(const char* path, allo_fig2** out);
ALLO_API size_t allo_fig2_size(const allo_fig2* data);
ALLO_API allo_status allo_fig2_get(const allo_fig2* data, size_t index, allo_fig2_row* out);
ALLO_API allo_status allo_fig2_fit(const allo_fig2* data, allo_entropy_model_fit* out);
/* `C,beta,H` */
ALLO_API allo_status allo_fig2_write_csv(const allo_fig2* data, const char* path);
/* `C,beta,N,h1,h_rescaled,mode` */
ALLO_API allo_status allo_fig2_write_entropy_csv(const allo_fig2* data, const char* path);
ALLO_API void allo_fig2_free(allo_fig2* data);

#ifdef __cplusplus
}
#endif

#endif /* ALLOMETRY_ALLOMETRY_H */

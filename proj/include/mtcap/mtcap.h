/* Copyright (c) 2026 The mtcap authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the mtcap library: stochastic-geometry analytics and
 * Monte-Carlo simulation of Poisson-cluster multicast networks.
 *
 * Conventions:
 *   - Every function returns an mtcap_status; MTCAP_OK is 0.  On failure a
 *     human-readable message is available from mtcap_last_error() (the
 *     buffer is thread local and overwritten by the next failing call).
 *   - Objects are opaque handles created and destroyed by this API.
 *   - Strings returned through char** are owned by the caller and must be
 *     released with mtcap_string_free().
 *   - An infinite observation window is requested by passing a
 *     non-positive value (or INFINITY) as `window`.
 */

#ifndef MTCAP_H
#define MTCAP_H

#include <stdint.h>

#if defined(_WIN32)
#define MTCAP_API __declspec(dllexport)
#else
#define MTCAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mtcap_status {
    MTCAP_OK = 0,
    MTCAP_ERR_CONFIG = 2,  /* invalid configuration or input document */
    MTCAP_ERR_NUMERIC = 3, /* quadrature failure or domain violation */
    MTCAP_ERR_BRACKET = 4, /* solver could not bracket the target */
    MTCAP_ERR_ARG = 5,     /* bad argument (null handle, bad name, ...) */
    MTCAP_ERR_IO = 6       /* file system problem */
} mtcap_status;

typedef struct mtcap_config mtcap_config;
typedef struct mtcap_result mtcap_result;

MTCAP_API const char* mtcap_version(void);

/* Message describing the most recent failure on this thread. */
MTCAP_API const char* mtcap_last_error(void);

MTCAP_API void mtcap_string_free(char* text);

/* ---- configuration ---------------------------------------------------- */

/* Parse a config JSON document (fields: d, alpha, beta, s, lambda_t,
 * lambda_r, m, tau, epsilon, optional fading_scale).  Unknown fields are
 * rejected. */
MTCAP_API mtcap_status mtcap_config_parse(const char* json_text, mtcap_config** out);
MTCAP_API mtcap_status mtcap_config_load(const char* path, mtcap_config** out);
MTCAP_API mtcap_status mtcap_config_to_json(const mtcap_config* config, char** out_text);
MTCAP_API void mtcap_config_free(mtcap_config* config);

MTCAP_API mtcap_status mtcap_config_validate(const mtcap_config* config);

/* Derived model quantities: xi = d/alpha, unit-ball volume, cluster volume,
 * mean receivers per cluster.  Null output pointers are skipped. */
MTCAP_API mtcap_status mtcap_derive_params(const mtcap_config* config, double* xi,
                                           double* mu_u, double* mu_r, double* k);

/* ---- elementary model quantities -------------------------------------- */

/* Bounded path loss: distance^-alpha for distance >= 1, else 0. */
MTCAP_API mtcap_status mtcap_path_loss(double distance, double alpha, double* out);

/* CDF of the configured channel power gain. */
MTCAP_API mtcap_status mtcap_fading_cdf(const mtcap_config* config, double x, double* out);

/* ---- shot-noise transforms -------------------------------------------- */

MTCAP_API mtcap_status mtcap_delta1(const mtcap_config* config, double phi, double window,
                                    double* out);
MTCAP_API mtcap_status mtcap_delta2(const mtcap_config* config, double phi, double window,
                                    double* out);

/* E[exp(-phi I)] and E[exp(+phi I)] of the aggregate interference. */
MTCAP_API mtcap_status mtcap_laplace(const mtcap_config* config, double phi, double window,
                                     double* out);
MTCAP_API mtcap_status mtcap_mgf(const mtcap_config* config, double phi, double window,
                                 double* out);

/* ---- connection and outage -------------------------------------------- */

/* Per-attempt connection probability at desired-link distance r (>= 1). */
MTCAP_API mtcap_status mtcap_success_probability(const mtcap_config* config, double r,
                                                 double* out);

/* Connected-receiver intensity bound lambda_r (1 - (1 - p(r))^tau). */
MTCAP_API mtcap_status mtcap_connected_intensity_bound(const mtcap_config* config, double r,
                                                       double* out);

/* Multicast outage probability 1 - exp(-k E_R[(1 - p(R))^tau]). */
MTCAP_API mtcap_status mtcap_outage_analytic(const mtcap_config* config, double* out);

/* Window radius whose neglected interference tail is below bias_tol. */
MTCAP_API mtcap_status mtcap_truncation_radius(const mtcap_config* config, double bias_tol,
                                               double* out);

/* ---- command runner ---------------------------------------------------- */

/* Execute a named command (validate, laplace, success-prob, outage,
 * lambda-max, rate, mtc, sweep, retx-study) with a JSON options document
 * (may be NULL or empty for defaults).  The result handle carries the
 * result JSON document and, for tabular commands, a CSV payload. */
MTCAP_API mtcap_status mtcap_run(const mtcap_config* config, const char* command,
                                 const char* options_json, mtcap_result** out);

/* Borrowed pointers, valid until mtcap_result_free. */
MTCAP_API const char* mtcap_result_json(const mtcap_result* result);
MTCAP_API const char* mtcap_result_csv(const mtcap_result* result); /* NULL when empty */
MTCAP_API void mtcap_result_free(mtcap_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MTCAP_H */

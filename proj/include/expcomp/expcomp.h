/*
 * Copyright 2026 The expcomp Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the expcomp library: finite statistical experiments as
 * column-stochastic matrices, their risks, and their comparison by
 * divisibility and Le Cam deficiency.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an ec_status; on
 * failure ec_last_error() describes the problem (thread-local, valid until
 * the next failing call on the same thread). Output handles are written only
 * on success. Strings returned through char** are released with
 * ec_string_free. Reports are returned as JSON text.
 *
 * Matrices cross the boundary row-major. A transition from X to Y is a
 * |Y| x |X| matrix whose column j is the distribution given label j; a loss
 * is |unknowns| x |actions|.
 */

#ifndef EXPCOMP_EXPCOMP_H_
#define EXPCOMP_EXPCOMP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EXPCOMP_BUILDING)
#    define EXPCOMP_API __declspec(dllexport)
#  else
#    define EXPCOMP_API __declspec(dllimport)
#  endif
#else
#  define EXPCOMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ec_status {
  EC_OK = 0,
  EC_ERR_LABEL = 1,    /* unknown label */
  EC_ERR_SHAPE = 2,    /* mismatched spaces or dimensions */
  EC_ERR_ARGUMENT = 3, /* precondition violated (stochasticity, caps, ...) */
  EC_ERR_SOLVER = 4,   /* linear program failed */
  EC_ERR_PARSE = 5,    /* malformed file */
  EC_ERR_IO = 6,       /* file could not be written */
  EC_ERR_NULL = 7,     /* required pointer argument was NULL */
  EC_ERR_INTERNAL = 8
} ec_status;

typedef struct ec_transition ec_transition;
typedef struct ec_distribution ec_distribution;
typedef struct ec_loss ec_loss;

EXPCOMP_API const char* ec_version(void);
EXPCOMP_API const char* ec_last_error(void);
EXPCOMP_API const char* ec_status_name(ec_status status);
EXPCOMP_API void ec_string_free(char* s);

/* ---- transitions (experiments and decision rules) ---- */

EXPCOMP_API ec_status ec_transition_create(const char* const* source, size_t n_source,
                                           const char* const* target, size_t n_target,
                                           const double* matrix, double tol,
                                           ec_transition** out);
EXPCOMP_API ec_status ec_transition_identity(const char* const* labels, size_t n,
                                             ec_transition** out);
/* The transition onto the one-element set. */
EXPCOMP_API ec_status ec_transition_terminal(const char* const* labels, size_t n,
                                             ec_transition** out);
/* Binary symmetric channel on {"-1", "1"}. */
EXPCOMP_API ec_status ec_transition_bsc(double crossover, ec_transition** out);
/* Experiment file (rows = outcomes). */
EXPCOMP_API ec_status ec_transition_load(const char* path, double tol, ec_transition** out);
/* Rule file (rows = actions). */
EXPCOMP_API ec_status ec_rule_load(const char* path, double tol, ec_transition** out);
/* Serializes as an experiment file, or as a rule file when as_rule != 0. */
EXPCOMP_API ec_status ec_transition_to_json(const ec_transition* t, int as_rule, char** out);
EXPCOMP_API void ec_transition_free(ec_transition* t);

EXPCOMP_API size_t ec_transition_source_size(const ec_transition* t);
EXPCOMP_API size_t ec_transition_target_size(const ec_transition* t);
EXPCOMP_API const char* ec_transition_source_label(const ec_transition* t, size_t i);
EXPCOMP_API const char* ec_transition_target_label(const ec_transition* t, size_t i);
EXPCOMP_API double ec_transition_entry(const ec_transition* t, size_t target_index,
                                       size_t source_index);

/* g after f. */
EXPCOMP_API ec_status ec_transition_compose(const ec_transition* g, const ec_transition* f,
                                            ec_transition** out);
EXPCOMP_API ec_status ec_transition_product(const ec_transition* const* fs, size_t n,
                                            ec_transition** out);
EXPCOMP_API ec_status ec_transition_replicate(const ec_transition* f, size_t n,
                                              ec_transition** out);

/* ---- distributions ---- */

EXPCOMP_API ec_status ec_distribution_create(const char* const* labels, size_t n,
                                             const double* weights, double tol,
                                             ec_distribution** out);
EXPCOMP_API ec_status ec_distribution_uniform(const char* const* labels, size_t n,
                                              ec_distribution** out);
/* Uniform over the unknowns (source) of a transition. */
EXPCOMP_API ec_status ec_distribution_uniform_over_source(const ec_transition* t,
                                                          ec_distribution** out);
EXPCOMP_API ec_status ec_distribution_load(const char* path, double tol,
                                           ec_distribution** out);
EXPCOMP_API ec_status ec_distribution_to_json(const ec_distribution* d, char** out);
EXPCOMP_API ec_status ec_distribution_push(const ec_transition* t, const ec_distribution* d,
                                           ec_distribution** out);
EXPCOMP_API void ec_distribution_free(ec_distribution* d);
EXPCOMP_API size_t ec_distribution_size(const ec_distribution* d);
EXPCOMP_API const char* ec_distribution_label(const ec_distribution* d, size_t i);
EXPCOMP_API double ec_distribution_weight(const ec_distribution* d, size_t i);

/* ---- losses ---- */

EXPCOMP_API ec_status ec_loss_create(const char* const* unknowns, size_t n_unknowns,
                                     const char* const* actions, size_t n_actions,
                                     const double* values, ec_loss** out);
EXPCOMP_API ec_status ec_loss_zero_one(const char* const* labels, size_t n, ec_loss** out);
EXPCOMP_API ec_status ec_loss_log_grid(const char* const* labels, size_t n,
                                       size_t resolution, ec_loss** out);
EXPCOMP_API ec_status ec_loss_load(const char* path, ec_loss** out);
EXPCOMP_API void ec_loss_free(ec_loss* loss);
EXPCOMP_API size_t ec_loss_num_unknowns(const ec_loss* loss);
EXPCOMP_API size_t ec_loss_num_actions(const ec_loss* loss);
EXPCOMP_API const char* ec_loss_action_label(const ec_loss* loss, size_t i);

/* min_a <mu, L_a> for nonnegative mu. */
EXPCOMP_API ec_status ec_entropy(const ec_loss* loss, const double* mu, size_t n, double* out);
/* Canonical offset of a zero-sum coordinate vector. */
EXPCOMP_API ec_status ec_psi(const ec_loss* loss, const double* v, size_t n, double* out);
EXPCOMP_API ec_status ec_canonical_loss(const ec_loss* loss, const char* theta,
                                        const double* v, size_t n, double* out);

/* ---- risks ---- */

/* Writes one value per unknown into out[0..n). */
EXPCOMP_API ec_status ec_risk_profile(const ec_loss* loss, const ec_transition* experiment,
                                      const ec_transition* rule, double* out, size_t n);
EXPCOMP_API ec_status ec_bayes_risk(const ec_loss* loss, const ec_transition* experiment,
                                    const ec_transition* rule, const ec_distribution* prior,
                                    double* out);
EXPCOMP_API ec_status ec_max_risk(const ec_loss* loss, const ec_transition* experiment,
                                  const ec_transition* rule, double* out);
EXPCOMP_API ec_status ec_reverse(const ec_transition* experiment, const ec_distribution* prior,
                                 double cutoff, ec_distribution** marginal,
                                 ec_transition** posterior);
/* Deterministic map from outcomes to their distinct posteriors. */
EXPCOMP_API ec_status ec_posterior_statistic(const ec_transition* experiment,
                                             const ec_distribution* prior, double cutoff,
                                             ec_transition** out);
/* rule may be NULL. */
EXPCOMP_API ec_status ec_min_bayes_risk(const ec_loss* loss, const ec_transition* experiment,
                                        const ec_distribution* prior, double* value,
                                        ec_transition** rule);
/* rule and prior may be NULL. */
EXPCOMP_API ec_status ec_minimax_risk(const ec_loss* loss, const ec_transition* experiment,
                                      double* value, ec_transition** rule,
                                      ec_distribution** least_favorable_prior);
EXPCOMP_API ec_status ec_bias_variance(const ec_loss* loss, const ec_transition* experiment,
                                       const ec_transition* rule, const char* theta,
                                       double* bias, double* variance);
EXPCOMP_API ec_status ec_is_admissible(const ec_loss* loss, const ec_transition* experiment,
                                       const ec_transition* rule, int* out);
EXPCOMP_API ec_status ec_complete_class_json(const ec_loss* loss,
                                             const ec_transition* experiment, size_t cap,
                                             char** out);

/* ---- comparison ---- */

/* witness may be NULL. */
EXPCOMP_API ec_status ec_directed_deficiency(const ec_transition* e, const ec_transition* e2,
                                             const ec_distribution* prior, double* value,
                                             ec_transition** witness);
EXPCOMP_API ec_status ec_deficiency(const ec_transition* e, const ec_transition* e2,
                                    const ec_distribution* prior, double* value);
/* *witness is set only when e divides e2; witness and deficiency may be NULL. */
EXPCOMP_API ec_status ec_divides(const ec_transition* e, const ec_transition* e2, double tol,
                                 int* result, double* deficiency, ec_transition** witness);
EXPCOMP_API ec_status ec_is_sufficient(const ec_transition* e, const ec_transition* f,
                                       const ec_distribution* prior, int* out);
EXPCOMP_API ec_status ec_randomization_check_json(const ec_transition* e,
                                                  const ec_transition* e2,
                                                  const ec_distribution* prior,
                                                  size_t trials, uint64_t seed, char** out);
EXPCOMP_API ec_status ec_metric_check_json(const ec_transition* const* experiments, size_t n,
                                           const ec_distribution* prior, char** out);

/* ---- divergences ---- */

EXPCOMP_API ec_status ec_variational(const ec_distribution* p, const ec_distribution* q,
                                     double* out);
/* phi is "total_variation", "kl" or "chi2"; the result may be +inf. */
EXPCOMP_API ec_status ec_phi_divergence(const char* phi, const ec_distribution* p,
                                        const ec_distribution* q, double* out);
EXPCOMP_API ec_status ec_shannon_entropy(const ec_distribution* p, double* out);
EXPCOMP_API ec_status ec_mutual_information(const ec_transition* experiment,
                                            const ec_distribution* prior, double* out);
EXPCOMP_API ec_status ec_risk_gap(const ec_loss* loss, const ec_transition* experiment,
                                  const ec_distribution* prior, double* out);
/* kind is "variational", "phi", "mutual_information" or "risk_gap"; phi names
 * the divergence for kind "phi" and may be NULL (kl). */
EXPCOMP_API ec_status ec_dpi_check_json(const char* kind, const char* phi, size_t trials,
                                        uint64_t seed, char** out);

/* ---- files ---- */

/* *valid is 1 or 0; *message holds a summary or the first violation. */
EXPCOMP_API ec_status ec_validate_file(const char* path, double tol, int* valid,
                                       char** message);

#ifdef __cplusplus
}
#endif

#endif  /* EXPCOMP_EXPCOMP_H_ */

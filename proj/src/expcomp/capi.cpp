// Copyright 2026 The expcomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "expcomp/expcomp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "expcomp/compare.hpp"
#include "expcomp/core.hpp"
#include "expcomp/divergence.hpp"
#include "expcomp/errors.hpp"
#include "expcomp/io.hpp"
#include "expcomp/loss.hpp"
#include "expcomp/risk.hpp"

struct ec_transition {
  expcomp::Transition value;
};
struct ec_distribution {
  expcomp::Distribution value;
};
struct ec_loss {
  expcomp::LossMatrix value;
};

namespace {

using expcomp::Distribution;
using expcomp::LabeledSet;
using expcomp::LossMatrix;
using expcomp::Matrix;
using expcomp::Transition;
using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

thread_local std::string last_error;

struct NullArgument {};

ec_status fail(ec_status s, const char* what) {
  last_error = what;
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
ec_status guarded(F&& body) {
  try {
    body();
    return EC_OK;
  } catch (const NullArgument&) {
    return fail(EC_ERR_NULL, "required argument is NULL");
  } catch (const expcomp::LabelError& e) {
    return fail(EC_ERR_LABEL, e.what());
  } catch (const expcomp::ShapeError& e) {
    return fail(EC_ERR_SHAPE, e.what());
  } catch (const expcomp::SolverError& e) {
    return fail(EC_ERR_SOLVER, e.what());
  } catch (const expcomp::ParseError& e) {
    return fail(EC_ERR_PARSE, e.what());
  } catch (const expcomp::ArgumentError& e) {
    return fail(EC_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EC_ERR_INTERNAL, e.what());
  }
}

template <class... Ps>
void require(const Ps*... ps) {
  if (((ps == nullptr) || ...)) throw NullArgument{};
}

LabeledSet make_set(const char* const* labels, std::size_t n) {
  if (n > 0) require(labels);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(labels[i]);
    out.emplace_back(labels[i]);
  }
  return LabeledSet(std::move(out));
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ec_transition* wrap(Transition t) { return new ec_transition{std::move(t)}; }
ec_distribution* wrap(Distribution d) { return new ec_distribution{std::move(d)}; }
ec_loss* wrap(LossMatrix l) { return new ec_loss{std::move(l)}; }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(Json(std::vector<double>(m.row(r).begin(), m.row(r).end())));
  }
  return rows;
}

Json distribution_json(const Distribution& d) {
  Json j;
  j["labels"] = d.space().labels();
  j["weights"] = std::vector<double>(d.weights().begin(), d.weights().end());
  return j;
}

}  // namespace

extern "C" {

const char* ec_version(void) { return kVersion; }

const char* ec_last_error(void) { return last_error.c_str(); }

const char* ec_status_name(ec_status status) {
  switch (status) {
    case EC_OK: return "ok";
    case EC_ERR_LABEL: return "label error";
    case EC_ERR_SHAPE: return "shape error";
    case EC_ERR_ARGUMENT: return "argument error";
    case EC_ERR_SOLVER: return "solver error";
    case EC_ERR_PARSE: return "parse error";
    case EC_ERR_IO: return "i/o error";
    case EC_ERR_NULL: return "null argument";
    case EC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ec_string_free(char* s) { std::free(s); }

// ---- transitions ----

ec_status ec_transition_create(const char* const* source, size_t n_source,
                               const char* const* target, size_t n_target,
                               const double* matrix, double tol, ec_transition** out) {
  return guarded([&] {
    require(matrix, out);
    LabeledSet src = make_set(source, n_source);
    LabeledSet tgt = make_set(target, n_target);
    Matrix m(n_target, n_source, std::vector<double>(matrix, matrix + n_target * n_source));
    *out = wrap(Transition(std::move(src), std::move(tgt), std::move(m), tol));
  });
}

ec_status ec_transition_identity(const char* const* labels, size_t n, ec_transition** out) {
  return guarded([&] {
    require(out);
    *out = wrap(Transition::identity(make_set(labels, n)));
  });
}

ec_status ec_transition_terminal(const char* const* labels, size_t n, ec_transition** out) {
  return guarded([&] {
    require(out);
    *out = wrap(Transition::terminal(make_set(labels, n)));
  });
}

ec_status ec_transition_bsc(double crossover, ec_transition** out) {
  return guarded([&] {
    require(out);
    *out = wrap(Transition::binary_symmetric(crossover));
  });
}

ec_status ec_transition_load(const char* path, double tol, ec_transition** out) {
  return guarded([&] {
    require(path, out);
    *out = wrap(expcomp::io::parse_experiment(expcomp::io::read_file(path), tol));
  });
}

ec_status ec_rule_load(const char* path, double tol, ec_transition** out) {
  return guarded([&] {
    require(path, out);
    *out = wrap(expcomp::io::parse_rule(expcomp::io::read_file(path), tol));
  });
}

ec_status ec_transition_to_json(const ec_transition* t, int as_rule, char** out) {
  return guarded([&] {
    require(t, out);
    *out = copy_string(as_rule ? expcomp::io::format_rule(t->value)
                               : expcomp::io::format_experiment(t->value));
  });
}

void ec_transition_free(ec_transition* t) { delete t; }

size_t ec_transition_source_size(const ec_transition* t) {
  return t ? t->value.source().size() : 0;
}

size_t ec_transition_target_size(const ec_transition* t) {
  return t ? t->value.target().size() : 0;
}

const char* ec_transition_source_label(const ec_transition* t, size_t i) {
  if (!t || i >= t->value.source().size()) return nullptr;
  return t->value.source().label(i).c_str();
}

const char* ec_transition_target_label(const ec_transition* t, size_t i) {
  if (!t || i >= t->value.target().size()) return nullptr;
  return t->value.target().label(i).c_str();
}

double ec_transition_entry(const ec_transition* t, size_t target_index, size_t source_index) {
  if (!t || target_index >= t->value.target().size() ||
      source_index >= t->value.source().size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return t->value(target_index, source_index);
}

ec_status ec_transition_compose(const ec_transition* g, const ec_transition* f,
                                ec_transition** out) {
  return guarded([&] {
    require(g, f, out);
    *out = wrap(expcomp::compose(g->value, f->value));
  });
}

ec_status ec_transition_product(const ec_transition* const* fs, size_t n, ec_transition** out) {
  return guarded([&] {
    require(out);
    if (n > 0) require(fs);
    std::vector<Transition> parts;
    for (size_t i = 0; i < n; ++i) {
      require(fs[i]);
      parts.push_back(fs[i]->value);
    }
    *out = wrap(expcomp::product(parts));
  });
}

ec_status ec_transition_replicate(const ec_transition* f, size_t n, ec_transition** out) {
  return guarded([&] {
    require(f, out);
    *out = wrap(expcomp::replicate(f->value, n));
  });
}

// ---- distributions ----

ec_status ec_distribution_create(const char* const* labels, size_t n, const double* weights,
                                 double tol, ec_distribution** out) {
  return guarded([&] {
    require(weights, out);
    *out = wrap(Distribution(make_set(labels, n), std::vector<double>(weights, weights + n), tol));
  });
}

ec_status ec_distribution_uniform(const char* const* labels, size_t n, ec_distribution** out) {
  return guarded([&] {
    require(out);
    *out = wrap(Distribution::uniform(make_set(labels, n)));
  });
}

ec_status ec_distribution_uniform_over_source(const ec_transition* t, ec_distribution** out) {
  return guarded([&] {
    require(t, out);
    *out = wrap(Distribution::uniform(t->value.source()));
  });
}

ec_status ec_distribution_load(const char* path, double tol, ec_distribution** out) {
  return guarded([&] {
    require(path, out);
    *out = wrap(expcomp::io::parse_prior(expcomp::io::read_file(path), tol));
  });
}

ec_status ec_distribution_to_json(const ec_distribution* d, char** out) {
  return guarded([&] {
    require(d, out);
    *out = copy_string(expcomp::io::format_prior(d->value));
  });
}

ec_status ec_distribution_push(const ec_transition* t, const ec_distribution* d,
                               ec_distribution** out) {
  return guarded([&] {
    require(t, d, out);
    *out = wrap(expcomp::push(t->value, d->value));
  });
}

void ec_distribution_free(ec_distribution* d) { delete d; }

size_t ec_distribution_size(const ec_distribution* d) { return d ? d->value.size() : 0; }

const char* ec_distribution_label(const ec_distribution* d, size_t i) {
  if (!d || i >= d->value.size()) return nullptr;
  return d->value.space().label(i).c_str();
}

double ec_distribution_weight(const ec_distribution* d, size_t i) {
  if (!d || i >= d->value.size()) return std::numeric_limits<double>::quiet_NaN();
  return d->value[i];
}

// ---- losses ----

ec_status ec_loss_create(const char* const* unknowns, size_t n_unknowns,
                         const char* const* actions, size_t n_actions, const double* values,
                         ec_loss** out) {
  return guarded([&] {
    require(values, out);
    Matrix m(n_unknowns, n_actions,
             std::vector<double>(values, values + n_unknowns * n_actions));
    *out = wrap(LossMatrix(make_set(unknowns, n_unknowns), make_set(actions, n_actions),
                           std::move(m)));
  });
}

ec_status ec_loss_zero_one(const char* const* labels, size_t n, ec_loss** out) {
  return guarded([&] {
    require(out);
    *out = wrap(LossMatrix::zero_one(make_set(labels, n)));
  });
}

ec_status ec_loss_log_grid(const char* const* labels, size_t n, size_t resolution,
                           ec_loss** out) {
  return guarded([&] {
    require(out);
    *out = wrap(LossMatrix::log_loss_grid(make_set(labels, n), resolution));
  });
}

ec_status ec_loss_load(const char* path, ec_loss** out) {
  return guarded([&] {
    require(path, out);
    *out = wrap(expcomp::io::parse_loss(expcomp::io::read_file(path)));
  });
}

void ec_loss_free(ec_loss* loss) { delete loss; }

size_t ec_loss_num_unknowns(const ec_loss* loss) {
  return loss ? loss->value.unknowns().size() : 0;
}

size_t ec_loss_num_actions(const ec_loss* loss) {
  return loss ? loss->value.actions().size() : 0;
}

const char* ec_loss_action_label(const ec_loss* loss, size_t i) {
  if (!loss || i >= loss->value.actions().size()) return nullptr;
  return loss->value.actions().label(i).c_str();
}

ec_status ec_entropy(const ec_loss* loss, const double* mu, size_t n, double* out) {
  return guarded([&] {
    require(loss, mu, out);
    expcomp::UnnormalizedMeasure m(loss->value.unknowns(), std::vector<double>(mu, mu + n));
    *out = expcomp::entropy(loss->value, m);
  });
}

ec_status ec_psi(const ec_loss* loss, const double* v, size_t n, double* out) {
  return guarded([&] {
    require(loss, v, out);
    *out = expcomp::psi(loss->value, std::span<const double>(v, n));
  });
}

ec_status ec_canonical_loss(const ec_loss* loss, const char* theta, const double* v, size_t n,
                            double* out) {
  return guarded([&] {
    require(loss, theta, v, out);
    *out = expcomp::canonical_loss(loss->value, theta, std::span<const double>(v, n));
  });
}

// ---- risks ----

ec_status ec_risk_profile(const ec_loss* loss, const ec_transition* experiment,
                          const ec_transition* rule, double* out, size_t n) {
  return guarded([&] {
    require(loss, experiment, rule, out);
    const auto p = expcomp::risk_profile(loss->value, experiment->value, rule->value);
    if (n < p.values.size()) throw expcomp::ShapeError("output buffer too small");
    std::copy(p.values.begin(), p.values.end(), out);
  });
}

ec_status ec_bayes_risk(const ec_loss* loss, const ec_transition* experiment,
                        const ec_transition* rule, const ec_distribution* prior, double* out) {
  return guarded([&] {
    require(loss, experiment, rule, prior, out);
    *out = expcomp::bayes_risk(loss->value, experiment->value, rule->value, prior->value);
  });
}

ec_status ec_max_risk(const ec_loss* loss, const ec_transition* experiment,
                      const ec_transition* rule, double* out) {
  return guarded([&] {
    require(loss, experiment, rule, out);
    *out = expcomp::max_risk(loss->value, experiment->value, rule->value);
  });
}

ec_status ec_reverse(const ec_transition* experiment, const ec_distribution* prior,
                     double cutoff, ec_distribution** marginal, ec_transition** posterior) {
  return guarded([&] {
    require(experiment, prior, marginal, posterior);
    auto rev = expcomp::reverse(experiment->value, prior->value, cutoff);
    *marginal = wrap(std::move(rev.marginal));
    *posterior = wrap(std::move(rev.posterior));
  });
}

ec_status ec_posterior_statistic(const ec_transition* experiment, const ec_distribution* prior,
                                 double cutoff, ec_transition** out) {
  return guarded([&] {
    require(experiment, prior, out);
    *out = wrap(expcomp::posterior_statistic(experiment->value, prior->value, cutoff));
  });
}

ec_status ec_min_bayes_risk(const ec_loss* loss, const ec_transition* experiment,
                            const ec_distribution* prior, double* value, ec_transition** rule) {
  return guarded([&] {
    require(loss, experiment, prior, value);
    auto r = expcomp::min_bayes_risk(loss->value, experiment->value, prior->value);
    *value = r.value;
    if (rule) *rule = wrap(std::move(r.rule));
  });
}

ec_status ec_minimax_risk(const ec_loss* loss, const ec_transition* experiment, double* value,
                          ec_transition** rule, ec_distribution** least_favorable_prior) {
  return guarded([&] {
    require(loss, experiment, value);
    auto r = expcomp::minimax_risk(loss->value, experiment->value);
    *value = r.value;
    if (rule) *rule = wrap(std::move(r.rule));
    if (least_favorable_prior) *least_favorable_prior = wrap(std::move(r.least_favorable_prior));
  });
}

ec_status ec_bias_variance(const ec_loss* loss, const ec_transition* experiment,
                           const ec_transition* rule, const char* theta, double* bias,
                           double* variance) {
  return guarded([&] {
    require(loss, experiment, rule, theta, bias, variance);
    const auto bv = expcomp::bias_variance(loss->value, experiment->value, rule->value, theta);
    *bias = bv.bias;
    *variance = bv.variance;
  });
}

ec_status ec_is_admissible(const ec_loss* loss, const ec_transition* experiment,
                           const ec_transition* rule, int* out) {
  return guarded([&] {
    require(loss, experiment, rule, out);
    *out = expcomp::is_admissible(loss->value, experiment->value, rule->value) ? 1 : 0;
  });
}

ec_status ec_complete_class_json(const ec_loss* loss, const ec_transition* experiment,
                                 size_t cap, char** out) {
  return guarded([&] {
    require(loss, experiment, out);
    const auto rep = expcomp::complete_class_check(loss->value, experiment->value, cap);
    const LabeledSet& outcomes = experiment->value.target();
    const LabeledSet& actions = loss->value.actions();
    Json rules = Json::array();
    for (const auto& ra : rep.rules) {
      Json r;
      Json mapping = Json::object();
      for (std::size_t z = 0; z < ra.actions.size(); ++z) {
        mapping[outcomes.label(z)] = actions.label(ra.actions[z]);
      }
      r["rule"] = std::move(mapping);
      r["risk_profile"] = ra.profile;
      r["admissible"] = ra.admissible;
      r["domination_slack"] = ra.domination_slack;
      r["supporting_prior"] = ra.supporting_prior
                                  ? distribution_json(*ra.supporting_prior)
                                  : Json(nullptr);
      rules.push_back(std::move(r));
    }
    Json doc;
    doc["unknowns"] = loss->value.unknowns().labels();
    doc["rules"] = std::move(rules);
    doc["passed"] = rep.passed;
    *out = copy_string(doc.dump());
  });
}

// ---- comparison ----

ec_status ec_directed_deficiency(const ec_transition* e, const ec_transition* e2,
                                 const ec_distribution* prior, double* value,
                                 ec_transition** witness) {
  return guarded([&] {
    require(e, e2, prior, value);
    auto r = expcomp::directed_deficiency(e->value, e2->value, prior->value);
    *value = r.value;
    if (witness) *witness = wrap(std::move(r.witness));
  });
}

ec_status ec_deficiency(const ec_transition* e, const ec_transition* e2,
                        const ec_distribution* prior, double* value) {
  return guarded([&] {
    require(e, e2, prior, value);
    *value = expcomp::deficiency(e->value, e2->value, prior->value);
  });
}

ec_status ec_divides(const ec_transition* e, const ec_transition* e2, double tol, int* result,
                     double* deficiency, ec_transition** witness) {
  return guarded([&] {
    require(e, e2, result);
    auto d = expcomp::divides(e->value, e2->value, tol);
    *result = d.divides ? 1 : 0;
    if (deficiency) *deficiency = d.deficiency;
    if (witness && d.witness) *witness = wrap(std::move(*d.witness));
  });
}

ec_status ec_is_sufficient(const ec_transition* e, const ec_transition* f,
                           const ec_distribution* prior, int* out) {
  return guarded([&] {
    require(e, f, prior, out);
    *out = expcomp::is_sufficient(e->value, f->value, prior->value) ? 1 : 0;
  });
}

ec_status ec_randomization_check_json(const ec_transition* e, const ec_transition* e2,
                                      const ec_distribution* prior, size_t trials,
                                      uint64_t seed, char** out) {
  return guarded([&] {
    require(e, e2, prior, out);
    const auto rep =
        expcomp::randomization_check(e->value, e2->value, prior->value, trials, seed);
    Json doc;
    doc["epsilon"] = rep.epsilon;
    doc["deficiency"] = rep.deficiency;
    doc["trials"] = rep.trials;
    doc["seed"] = rep.seed;
    doc["violations"] = rep.violations;
    doc["max_violation"] = rep.max_violation;
    doc["oscillation_violations"] = rep.oscillation_violations;
    doc["max_normalized_gap"] = rep.max_normalized_gap;
    doc["gap_within_deficiency"] = rep.gap_within_deficiency;
    doc["passed"] = rep.passed();
    *out = copy_string(doc.dump());
  });
}

ec_status ec_metric_check_json(const ec_transition* const* experiments, size_t n,
                               const ec_distribution* prior, char** out) {
  return guarded([&] {
    require(prior, out);
    if (n > 0) require(experiments);
    std::vector<Transition> es;
    for (size_t i = 0; i < n; ++i) {
      require(experiments[i]);
      es.push_back(experiments[i]->value);
    }
    const auto rep = expcomp::metric_check(es, prior->value);
    Json triangles = Json::array();
    for (const auto& t : rep.triangles) {
      triangles.push_back(
          Json{{"first", t.first}, {"middle", t.middle}, {"last", t.last},
               {"direct", t.direct}, {"via", t.via}, {"holds", t.holds}});
    }
    Json doc;
    doc["directed"] = matrix_json(rep.directed);
    doc["triangles"] = std::move(triangles);
    doc["self_distance_zero"] = rep.self_distance_zero;
    doc["symmetric"] = rep.symmetric;
    doc["triangle_holds"] = rep.triangle_holds;
    doc["passed"] = rep.passed();
    *out = copy_string(doc.dump());
  });
}

// ---- divergences ----

ec_status ec_variational(const ec_distribution* p, const ec_distribution* q, double* out) {
  return guarded([&] {
    require(p, q, out);
    *out = expcomp::variational(p->value, q->value);
  });
}

ec_status ec_phi_divergence(const char* phi, const ec_distribution* p, const ec_distribution* q,
                            double* out) {
  return guarded([&] {
    require(phi, p, q, out);
    *out = expcomp::phi_divergence(expcomp::PhiSpec::by_name(phi), p->value, q->value);
  });
}

ec_status ec_shannon_entropy(const ec_distribution* p, double* out) {
  return guarded([&] {
    require(p, out);
    *out = expcomp::shannon_entropy(p->value);
  });
}

ec_status ec_mutual_information(const ec_transition* experiment, const ec_distribution* prior,
                                double* out) {
  return guarded([&] {
    require(experiment, prior, out);
    *out = expcomp::mutual_information(experiment->value, prior->value);
  });
}

ec_status ec_risk_gap(const ec_loss* loss, const ec_transition* experiment,
                      const ec_distribution* prior, double* out) {
  return guarded([&] {
    require(loss, experiment, prior, out);
    *out = expcomp::risk_gap(loss->value, experiment->value, prior->value);
  });
}

ec_status ec_dpi_check_json(const char* kind, const char* phi, size_t trials, uint64_t seed,
                            char** out) {
  return guarded([&] {
    require(kind, out);
    const auto spec = phi ? expcomp::PhiSpec::by_name(phi) : expcomp::PhiSpec::kl();
    const auto rep = expcomp::dpi_check(expcomp::parse_dpi_kind(kind), trials, seed, spec);
    Json doc;
    doc["kind"] = std::string(expcomp::to_string(rep.kind));
    if (!rep.phi_name.empty()) doc["phi"] = rep.phi_name;
    doc["trials"] = rep.trials;
    doc["seed"] = rep.seed;
    doc["violations"] = rep.violations;
    doc["max_violation"] = rep.max_violation;
    doc["slack"] = expcomp::kDpiSlack;
    doc["passed"] = rep.violations == 0;
    *out = copy_string(doc.dump());
  });
}

// ---- files ----

ec_status ec_validate_file(const char* path, double tol, int* valid, char** message) {
  return guarded([&] {
    require(path, valid, message);
    const auto v = expcomp::io::validate(expcomp::io::read_file(path), tol);
    *valid = v.ok ? 1 : 0;
    *message = copy_string(v.message);
  });
}

}  // extern "C"

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

// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "expcomp/expcomp.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

// Raised after a failed C call; carries ec_last_error().
struct CallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(ec_status s) {
  if (s != EC_OK) {
    throw CallError(std::string(ec_status_name(s)) + ": " + ec_last_error());
  }
}

struct TransitionDeleter {
  void operator()(ec_transition* t) const { ec_transition_free(t); }
};
struct DistributionDeleter {
  void operator()(ec_distribution* d) const { ec_distribution_free(d); }
};
struct LossDeleter {
  void operator()(ec_loss* l) const { ec_loss_free(l); }
};
using TransitionPtr = std::unique_ptr<ec_transition, TransitionDeleter>;
using DistributionPtr = std::unique_ptr<ec_distribution, DistributionDeleter>;
using LossPtr = std::unique_ptr<ec_loss, LossDeleter>;


struct Globals {
  double tol = 1e-9;
  double solver_tol = 1e-7;
  std::uint64_t seed = 42;
  std::string format = "table";
  std::string units = "nats";
  std::string report;
};

// 12 significant digits; solver noise below 1e-12 is shown as 0.
double round12(double x) {
  if (!std::isfinite(x)) return x;
  if (std::abs(x) < 1e-12) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

Json jnum(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

void round_numbers(Json& doc) {
  if (doc.is_number_float()) {
    doc = jnum(doc.get<double>());
  } else if (doc.is_structured()) {
    for (auto& item : doc) round_numbers(item);
  }
}

Json take_json(char* text) {
  Json doc = Json::parse(text);
  ec_string_free(text);
  round_numbers(doc);
  return doc;
}

TransitionPtr load_experiment(const std::string& path, const Globals& g) {
  ec_transition* t = nullptr;
  check(ec_transition_load(path.c_str(), g.tol, &t));
  return TransitionPtr(t);
}

TransitionPtr load_rule(const std::string& path, const Globals& g) {
  ec_transition* t = nullptr;
  check(ec_rule_load(path.c_str(), g.tol, &t));
  return TransitionPtr(t);
}

LossPtr load_loss(const std::string& path) {
  ec_loss* l = nullptr;
  check(ec_loss_load(path.c_str(), &l));
  return LossPtr(l);
}

// "uniform" means uniform over the experiment's unknowns.
DistributionPtr load_prior(const std::string& spec, const ec_transition* experiment,
                           const Globals& g) {
  ec_distribution* d = nullptr;
  if (spec == "uniform") {
    check(ec_distribution_uniform_over_source(experiment, &d));
  } else {
    check(ec_distribution_load(spec.c_str(), g.tol, &d));
  }
  return DistributionPtr(d);
}

Json transition_json(const ec_transition* t) {
  Json doc;
  Json src = Json::array(), dst = Json::array(), rows = Json::array();
  const std::size_t ns = ec_transition_source_size(t);
  const std::size_t nt = ec_transition_target_size(t);
  for (std::size_t j = 0; j < ns; ++j) src.push_back(ec_transition_source_label(t, j));
  for (std::size_t i = 0; i < nt; ++i) {
    dst.push_back(ec_transition_target_label(t, i));
    Json row = Json::array();
    for (std::size_t j = 0; j < ns; ++j) row.push_back(jnum(ec_transition_entry(t, i, j)));
    rows.push_back(std::move(row));
  }
  doc["source"] = std::move(src);
  doc["target"] = std::move(dst);
  doc["matrix"] = std::move(rows);
  return doc;
}

Json distribution_json(const ec_distribution* d) {
  Json doc;
  Json labels = Json::array(), weights = Json::array();
  for (std::size_t i = 0; i < ec_distribution_size(d); ++i) {
    labels.push_back(ec_distribution_label(d, i));
    weights.push_back(jnum(ec_distribution_weight(d, i)));
  }
  doc["labels"] = std::move(labels);
  doc["weights"] = std::move(weights);
  return doc;
}

// Deterministic rules read best as outcome -> action.
Json rule_mapping(const ec_transition* rule) {
  Json m = Json::object();
  const std::size_t nz = ec_transition_source_size(rule);
  const std::size_t na = ec_transition_target_size(rule);
  for (std::size_t z = 0; z < nz; ++z) {
    Json picks = Json::object();
    std::string only;
    for (std::size_t a = 0; a < na; ++a) {
      const double w = round12(ec_transition_entry(rule, a, z));
      if (w > 0.0) picks[ec_transition_target_label(rule, a)] = w;
      if (w == 1.0) only = ec_transition_target_label(rule, a);
    }
    if (!only.empty()) {
      m[ec_transition_source_label(rule, z)] = only;
    } else {
      m[ec_transition_source_label(rule, z)] = std::move(picks);
    }
  }
  return m;
}

void print_table(const Json& doc, const std::string& indent = "") {
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      std::cout << indent << key << ":\n";
      print_table(value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_array()) {
      std::cout << indent << key << ":\n";
      for (const auto& row : value) {
        std::cout << indent << " ";
        for (const auto& x : row) std::cout << " " << (x.is_number() ? num(x.get<double>()) : x.dump());
        std::cout << "\n";
      }
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      std::cout << indent << key << ":\n";
      for (const auto& item : value) {
        std::cout << indent << "  -\n";
        print_table(item, indent + "    ");
      }
    } else if (value.is_array()) {
      std::cout << indent << key << ":";
      for (const auto& x : value) {
        std::cout << " " << (x.is_number() ? num(x.get<double>())
                             : x.is_string() ? x.get<std::string>()
                                             : x.dump());
      }
      std::cout << "\n";
    } else if (value.is_number()) {
      std::cout << indent << key << ": " << num(value.get<double>()) << "\n";
    } else if (value.is_string()) {
      std::cout << indent << key << ": " << value.get<std::string>() << "\n";
    } else {
      std::cout << indent << key << ": " << value.dump() << "\n";
    }
  }
}

void emit(const std::string& command, const Json& result, const Globals& g) {
  if (g.format == "machine") {
    std::cout << result.dump() << "\n";
  } else {
    print_table(result);
  }
  if (!g.report.empty()) {
    Json doc;
    doc["command"] = command;
    doc["version"] = ec_version();
    doc["seed"] = g.seed;
    doc["tolerances"] = {{"ingestion", g.tol}, {"solver", g.solver_tol}};
    doc["units"] = g.units;
    doc["result"] = result;
    std::ofstream out(g.report, std::ios::trunc);
    if (!out) throw CallError("i/o error: cannot write '" + g.report + "'");
    out << doc.dump(2) << "\n";
    if (!out) throw CallError("i/o error: failed writing '" + g.report + "'");
  }
}

double in_units(double nats, const Globals& g) {
  return g.units == "bits" ? nats / std::log(2.0) : nats;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare statistical experiments: risks, deficiencies, divergences."};
  app.set_version_flag("--version", std::string(ec_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Ingestion tolerance for stochasticity checks")
      ->capture_default_str();
  app.add_option("--solver-tol", g.solver_tol, "Tolerance for zero deficiency")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"table", "machine"}))
      ->capture_default_str();
  app.add_option("--units", g.units, "Units for information quantities")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
  app.add_option("--report", g.report, "Also write a JSON report to this path");

  std::string experiment, loss, prior = "uniform", rule, from, to, statistic, p, q, theta;
  std::string kind = "variational", phi = "kl";
  std::size_t trials = 0, cap = 4096;
  bool reversal = false;
  std::vector<std::string> files;
  std::string path;

  auto* validate = app.add_subcommand("validate", "Check a data file");
  validate->add_option("path", path, "File to check")->required();

  auto* risk = app.add_subcommand("risk", "Risk profile of a decision rule");
  risk->add_option("--experiment", experiment)->required();
  risk->add_option("--loss", loss)->required();
  risk->add_option("--rule", rule)->required();

  auto* bayes = app.add_subcommand("bayes-risk", "Bayes risk of a rule, or the minimum");
  bayes->add_option("--experiment", experiment)->required();
  bayes->add_option("--loss", loss)->required();
  bayes->add_option("--prior", prior, "Prior file or 'uniform'")->capture_default_str();
  bayes->add_option("--rule", rule, "Evaluate this rule instead of the optimum");

  auto* minimax = app.add_subcommand("minimax", "Minimax risk and a least favorable prior");
  minimax->add_option("--experiment", experiment)->required();
  minimax->add_option("--loss", loss)->required();

  auto* rev = app.add_subcommand("reverse", "Posterior transition and marginal");
  rev->add_option("--experiment", experiment)->required();
  rev->add_option("--prior", prior)->capture_default_str();

  auto* bv = app.add_subcommand("bias-variance", "Bias-variance split of a rule's risk");
  bv->add_option("--experiment", experiment)->required();
  bv->add_option("--loss", loss)->required();
  bv->add_option("--rule", rule)->required();
  bv->add_option("--theta", theta, "Unknown to decompose at (default: all)");

  auto* div = app.add_subcommand("divides", "Whether --from divides --to (exit 0 yes, 1 no)");
  div->add_option("--from", from)->required();
  div->add_option("--to", to)->required();

  auto* def = app.add_subcommand("deficiency", "Directed and symmetric deficiency");
  def->add_option("--from", from)->required();
  def->add_option("--to", to)->required();
  def->add_option("--prior", prior)->capture_default_str();

  auto* suff = app.add_subcommand("sufficient", "Whether a statistic is sufficient (exit 0/1)");
  suff->add_option("--experiment", experiment)->required();
  auto* stat_opt = suff->add_option("--statistic", statistic,
                                    "Post-processing file whose theta are the outcomes");
  auto* rev_flag = suff->add_flag("--reversal", reversal, "Use the posterior statistic");
  stat_opt->excludes(rev_flag);
  suff->add_option("--prior", prior)->capture_default_str();

  auto* dvg = app.add_subcommand("divergence", "Variational distance and phi-divergences");
  dvg->add_option("--p", p, "Distribution file")->required();
  dvg->add_option("--q", q, "Distribution file")->required();

  auto* mi = app.add_subcommand("mutual-info", "Mutual information between unknown and outcome");
  mi->add_option("--experiment", experiment)->required();
  mi->add_option("--prior", prior)->capture_default_str();

  auto* dpi = app.add_subcommand("dpi-check", "Seeded data processing checks");
  dpi->add_option("--kind", kind)
      ->check(CLI::IsMember({"variational", "phi", "kl", "mutual_information", "mutual-info",
                             "risk_gap", "risk-gap"}))
      ->capture_default_str();
  dpi->add_option("--phi", phi, "Divergence for --kind phi")->capture_default_str();
  dpi->add_option("--trials", trials)->default_val(500)->capture_default_str();

  auto* rnd = app.add_subcommand("randomization-check", "Seeded randomization bound check");
  rnd->add_option("--from", from)->required();
  rnd->add_option("--to", to)->required();
  rnd->add_option("--prior", prior)->capture_default_str();
  rnd->add_option("--trials", trials)->default_val(200)->capture_default_str();

  auto* cc = app.add_subcommand("complete-class", "Admissible rules and their priors");
  cc->add_option("--experiment", experiment)->required();
  cc->add_option("--loss", loss)->required();
  cc->add_option("--cap", cap)->capture_default_str();

  auto* metric = app.add_subcommand("metric-check", "Deficiency metric axioms on experiments");
  metric->add_option("files", files, "Experiment files")->required();
  metric->add_option("--prior", prior)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    int code = kExitTrue;
    Json out;
    const std::string name = app.get_subcommands().front()->get_name();

    if (*validate) {
      int valid = 0;
      char* message = nullptr;
      check(ec_validate_file(path.c_str(), g.tol, &valid, &message));
      const std::string text(message);
      ec_string_free(message);
      if (!valid) {
        std::cerr << "invalid: " << text << "\n";
        return kExitError;
      }
      out["valid"] = true;
      out["summary"] = text;
    } else if (*risk) {
      auto e = load_experiment(experiment, g);
      auto l = load_loss(loss);
      auto d = load_rule(rule, g);
      const std::size_t n = ec_transition_source_size(e.get());
      std::vector<double> profile(n);
      check(ec_risk_profile(l.get(), e.get(), d.get(), profile.data(), n));
      double worst = 0.0;
      check(ec_max_risk(l.get(), e.get(), d.get(), &worst));
      Json prof = Json::object();
      for (std::size_t t = 0; t < n; ++t)
        prof[ec_transition_source_label(e.get(), t)] = jnum(profile[t]);
      out["profile"] = std::move(prof);
      out["max_risk"] = jnum(worst);
    } else if (*bayes) {
      auto e = load_experiment(experiment, g);
      auto l = load_loss(loss);
      auto pi = load_prior(prior, e.get(), g);
      double value = 0.0;
      if (!rule.empty()) {
        auto d = load_rule(rule, g);
        check(ec_bayes_risk(l.get(), e.get(), d.get(), pi.get(), &value));
        out["bayes_risk"] = jnum(value);
      } else {
        ec_transition* best = nullptr;
        check(ec_min_bayes_risk(l.get(), e.get(), pi.get(), &value, &best));
        TransitionPtr keep(best);
        out["bayes_risk"] = jnum(value);
        out["rule"] = rule_mapping(best);
      }
    } else if (*minimax) {
      auto e = load_experiment(experiment, g);
      auto l = load_loss(loss);
      double value = 0.0;
      ec_transition* d = nullptr;
      ec_distribution* lf = nullptr;
      check(ec_minimax_risk(l.get(), e.get(), &value, &d, &lf));
      TransitionPtr keep_d(d);
      DistributionPtr keep_lf(lf);
      out["minimax_risk"] = jnum(value);
      out["least_favorable_prior"] = distribution_json(lf);
      out["rule"] = rule_mapping(d);
    } else if (*rev) {
      auto e = load_experiment(experiment, g);
      auto pi = load_prior(prior, e.get(), g);
      ec_distribution* marginal = nullptr;
      ec_transition* posterior = nullptr;
      check(ec_reverse(e.get(), pi.get(), 1e-12, &marginal, &posterior));
      DistributionPtr keep_m(marginal);
      TransitionPtr keep_p(posterior);
      out["marginal"] = distribution_json(marginal);
      out["posterior"] = transition_json(posterior);
    } else if (*bv) {
      auto e = load_experiment(experiment, g);
      auto l = load_loss(loss);
      auto d = load_rule(rule, g);
      std::vector<std::string> thetas;
      if (!theta.empty()) {
        thetas.push_back(theta);
      } else {
        for (std::size_t t = 0; t < ec_transition_source_size(e.get()); ++t)
          thetas.emplace_back(ec_transition_source_label(e.get(), t));
      }
      const std::size_t n = ec_transition_source_size(e.get());
      std::vector<double> profile(n);
      check(ec_risk_profile(l.get(), e.get(), d.get(), profile.data(), n));
      Json rows = Json::array();
      for (const auto& th : thetas) {
        double bias = 0.0, variance = 0.0;
        check(ec_bias_variance(l.get(), e.get(), d.get(), th.c_str(), &bias, &variance));
        std::size_t idx = 0;
        while (idx < n && th != ec_transition_source_label(e.get(), idx)) ++idx;
        rows.push_back({{"theta", th},
                        {"bias", jnum(bias)},
                        {"variance", jnum(variance)},
                        {"risk", jnum(profile[idx])}});
      }
      out["decomposition"] = std::move(rows);
    } else if (*div) {
      auto e = load_experiment(from, g);
      auto e2 = load_experiment(to, g);
      int result = 0;
      double xi = 0.0;
      ec_transition* w = nullptr;
      check(ec_divides(e.get(), e2.get(), g.solver_tol, &result, &xi, &w));
      TransitionPtr keep(w);
      out["divides"] = result == 1;
      out["deficiency"] = jnum(xi);
      out["witness"] = w ? transition_json(w) : Json(nullptr);
      code = result == 1 ? kExitTrue : kExitFalse;
    } else if (*def) {
      auto e = load_experiment(from, g);
      auto e2 = load_experiment(to, g);
      auto pi = load_prior(prior, e.get(), g);
      double forward = 0.0, backward = 0.0;
      ec_transition* w = nullptr;
      ec_transition* w2 = nullptr;
      check(ec_directed_deficiency(e.get(), e2.get(), pi.get(), &forward, &w));
      TransitionPtr keep(w);
      check(ec_directed_deficiency(e2.get(), e.get(), pi.get(), &backward, &w2));
      TransitionPtr keep2(w2);
      out["value"] = jnum(forward);
      out["reverse"] = jnum(backward);
      out["deficiency"] = jnum(std::max(forward, backward));
      out["witness"] = transition_json(w);
    } else if (*suff) {
      auto e = load_experiment(experiment, g);
      auto pi = load_prior(prior, e.get(), g);
      TransitionPtr f;
      if (reversal) {
        ec_transition* s = nullptr;
        check(ec_posterior_statistic(e.get(), pi.get(), 1e-12, &s));
        f.reset(s);
      } else if (!statistic.empty()) {
        f = load_experiment(statistic, g);
      } else {
        throw CallError("argument error: sufficient needs --statistic or --reversal");
      }
      int result = 0;
      check(ec_is_sufficient(e.get(), f.get(), pi.get(), &result));
      out["sufficient"] = result == 1;
      if (reversal) out["statistic"] = transition_json(f.get());
      code = result == 1 ? kExitTrue : kExitFalse;
    } else if (*dvg) {
      ec_distribution* a = nullptr;
      ec_distribution* b = nullptr;
      check(ec_distribution_load(p.c_str(), g.tol, &a));
      DistributionPtr keep_a(a);
      check(ec_distribution_load(q.c_str(), g.tol, &b));
      DistributionPtr keep_b(b);
      double v = 0.0, tv = 0.0, kl = 0.0, chi2 = 0.0;
      check(ec_variational(a, b, &v));
      check(ec_phi_divergence("total_variation", a, b, &tv));
      check(ec_phi_divergence("kl", a, b, &kl));
      check(ec_phi_divergence("chi2", a, b, &chi2));
      out["variational"] = jnum(v);
      out["total_variation_phi"] = jnum(tv);
      out["kl"] = jnum(in_units(kl, g));
      out["chi2"] = jnum(chi2);
      out["units"] = g.units;
    } else if (*mi) {
      auto e = load_experiment(experiment, g);
      auto pi = load_prior(prior, e.get(), g);
      double value = 0.0;
      check(ec_mutual_information(e.get(), pi.get(), &value));
      out["mutual_information"] = jnum(in_units(value, g));
      out["units"] = g.units;
    } else if (*dpi) {
      char* text = nullptr;
      check(ec_dpi_check_json(kind.c_str(), phi.c_str(), trials, g.seed, &text));
      out = take_json(text);
      code = out["passed"].get<bool>() ? kExitTrue : kExitFalse;
    } else if (*rnd) {
      auto e = load_experiment(from, g);
      auto e2 = load_experiment(to, g);
      auto pi = load_prior(prior, e.get(), g);
      char* text = nullptr;
      check(ec_randomization_check_json(e.get(), e2.get(), pi.get(), trials, g.seed, &text));
      out = take_json(text);
      code = out["passed"].get<bool>() ? kExitTrue : kExitFalse;
    } else if (*cc) {
      auto e = load_experiment(experiment, g);
      auto l = load_loss(loss);
      char* text = nullptr;
      check(ec_complete_class_json(l.get(), e.get(), cap, &text));
      out = take_json(text);
      code = out["passed"].get<bool>() ? kExitTrue : kExitFalse;
    } else if (*metric) {
      std::vector<TransitionPtr> es;
      std::vector<const ec_transition*> raw;
      for (const auto& f : files) {
        es.push_back(load_experiment(f, g));
        raw.push_back(es.back().get());
      }
      auto pi = load_prior(prior, raw.front(), g);
      char* text = nullptr;
      check(ec_metric_check_json(raw.data(), raw.size(), pi.get(), &text));
      out = take_json(text);
      out["files"] = files;
      code = out["passed"].get<bool>() ? kExitTrue : kExitFalse;
    }
    emit(name, out, g);
    return code;
  } catch (const CallError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

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

#include "expcomp/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "expcomp/errors.hpp"

namespace expcomp::io {
namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("top-level value must be an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

LabeledSet labels(const Json& doc, const char* key) {
  const Json& list = field(doc, key);
  if (!list.is_array() || list.empty()) {
    throw ParseError(std::string("field '") + key + "' must be a nonempty list");
  }
  std::vector<std::string> out;
  for (const auto& v : list) {
    if (!v.is_string()) throw ParseError(std::string("labels in '") + key + "' must be strings");
    out.push_back(v.get<std::string>());
  }
  try {
    return LabeledSet(std::move(out));
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<double> numbers(const Json& list, const std::string& what) {
  if (!list.is_array()) throw ParseError(what + " must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : list) {
    if (!v.is_number()) throw ParseError(what + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix matrix(const Json& doc, std::size_t rows, std::size_t cols) {
  const Json& m = field(doc, "matrix");
  if (!m.is_array() || m.size() != rows) {
    throw ParseError("matrix must have " + std::to_string(rows) + " rows");
  }
  std::vector<double> data;
  data.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::vector<double> row = numbers(m[r], "matrix row " + std::to_string(r));
    if (row.size() != cols) {
      throw ParseError("matrix row " + std::to_string(r) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(cols));
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(rows, cols, std::move(data));
}

Json label_list(const LabeledSet& s) { return Json(s.labels()); }

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(Json(std::vector<double>(m.row(r).begin(), m.row(r).end())));
  }
  return rows;
}

}  // namespace

std::string_view to_string(FileKind kind) {
  switch (kind) {
    case FileKind::kExperiment:
      return "experiment";
    case FileKind::kLoss:
      return "loss";
    case FileKind::kPrior:
      return "prior";
    case FileKind::kRule:
      return "rule";
  }
  return "unknown";
}

FileKind detect_kind(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("top-level value must be an object");
  const bool theta = doc.contains("theta");
  const bool outcomes = doc.contains("outcomes");
  const bool actions = doc.contains("actions");
  const bool weights = doc.contains("weights");
  if (theta && weights) return FileKind::kPrior;
  if (theta && outcomes) return FileKind::kExperiment;
  if (theta && actions) return FileKind::kLoss;
  if (outcomes && actions) return FileKind::kRule;
  throw ParseError("cannot tell the file kind: missing label lists");
}

Transition parse_experiment(std::string_view text, double tol) {
  const Json doc = parse_json(text);
  LabeledSet theta = labels(doc, "theta");
  LabeledSet outcomes = labels(doc, "outcomes");
  Matrix m = matrix(doc, outcomes.size(), theta.size());
  return Transition(std::move(theta), std::move(outcomes), std::move(m), tol);
}

LossMatrix parse_loss(std::string_view text) {
  const Json doc = parse_json(text);
  LabeledSet theta = labels(doc, "theta");
  LabeledSet actions = labels(doc, "actions");
  Matrix m = matrix(doc, theta.size(), actions.size());
  return LossMatrix(std::move(theta), std::move(actions), std::move(m));
}

Distribution parse_prior(std::string_view text, double tol) {
  const Json doc = parse_json(text);
  LabeledSet theta = labels(doc, "theta");
  std::vector<double> w = numbers(field(doc, "weights"), "weights");
  return Distribution(std::move(theta), std::move(w), tol);
}

Transition parse_rule(std::string_view text, double tol) {
  const Json doc = parse_json(text);
  LabeledSet outcomes = labels(doc, "outcomes");
  LabeledSet actions = labels(doc, "actions");
  Matrix m = matrix(doc, actions.size(), outcomes.size());
  return Transition(std::move(outcomes), std::move(actions), std::move(m), tol);
}

std::string format_experiment(const Transition& e) {
  Json doc;
  doc["theta"] = label_list(e.source());
  doc["outcomes"] = label_list(e.target());
  doc["matrix"] = matrix_rows(e.matrix());
  return doc.dump(2) + "\n";
}

std::string format_loss(const LossMatrix& loss) {
  Json doc;
  doc["theta"] = label_list(loss.unknowns());
  doc["actions"] = label_list(loss.actions());
  doc["matrix"] = matrix_rows(loss.values());
  return doc.dump(2) + "\n";
}

std::string format_prior(const Distribution& p) {
  Json doc;
  doc["theta"] = label_list(p.space());
  doc["weights"] = Json(std::vector<double>(p.weights().begin(), p.weights().end()));
  return doc.dump(2) + "\n";
}

std::string format_rule(const Transition& d) {
  Json doc;
  doc["outcomes"] = label_list(d.source());
  doc["actions"] = label_list(d.target());
  doc["matrix"] = matrix_rows(d.matrix());
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw ArgumentError("failed writing '" + path + "'");
}

Validation validate(std::string_view text, double tol) {
  Validation v;
  try {
    v.kind = detect_kind(text);
    switch (v.kind) {
      case FileKind::kExperiment: {
        const Transition e = parse_experiment(text, tol);
        v.message = "experiment: " + std::to_string(e.source().size()) +
                    " unknowns -> " + std::to_string(e.target().size()) + " outcomes";
        break;
      }
      case FileKind::kLoss: {
        const LossMatrix l = parse_loss(text);
        v.message = "loss: " + std::to_string(l.unknowns().size()) + " unknowns x " +
                    std::to_string(l.actions().size()) + " actions";
        break;
      }
      case FileKind::kPrior: {
        const Distribution p = parse_prior(text, tol);
        v.message = "prior: " + std::to_string(p.size()) + " unknowns";
        break;
      }
      case FileKind::kRule: {
        const Transition d = parse_rule(text, tol);
        v.message = "rule: " + std::to_string(d.source().size()) + " outcomes -> " +
                    std::to_string(d.target().size()) + " actions";
        break;
      }
    }
    v.ok = true;
  } catch (const Error& e) {
    v.ok = false;
    v.message = e.what();
  }
  return v;
}

}  // namespace expcomp::io

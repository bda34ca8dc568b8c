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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "expcomp/errors.hpp"
#include "expcomp/io.hpp"
#include "test_util.hpp"

namespace expcomp::io {
namespace {

std::string fixture(const std::string& name) {
  return read_file(std::string(EXPCOMP_TEST_DATA) + "/" + name);
}

TEST_CASE("fixtures parse") {
  const auto e = parse_experiment(fixture("bsc01.json"));
  CHECK(e.matrix() == testing::bsc(0.1).matrix());
  CHECK(e.source() == testing::binary());
  const auto loss = parse_loss(fixture("zeroone.json"));
  CHECK(loss.values() == LossMatrix::zero_one(testing::binary()).values());
  const auto prior = parse_prior(fixture("uniform.json"));
  CHECK(prior[0] == 0.5);
  const auto rule = parse_rule(fixture("flip_rule.json"));
  CHECK(rule(1, 0) == 1.0);
  CHECK(parse_experiment(fixture("terminal.json")).target() == LabeledSet::point());
}

TEST_CASE("kind detection") {
  CHECK(detect_kind(fixture("bsc01.json")) == FileKind::kExperiment);
  CHECK(detect_kind(fixture("zeroone.json")) == FileKind::kLoss);
  CHECK(detect_kind(fixture("uniform.json")) == FileKind::kPrior);
  CHECK(detect_kind(fixture("id_rule.json")) == FileKind::kRule);
  CHECK_THROWS_AS(detect_kind(fixture("missing_labels.json")), ParseError);
  CHECK_THROWS_AS(detect_kind("[1, 2]"), ParseError);
  CHECK_THROWS_AS(detect_kind("{"), ParseError);
}

TEST_CASE("validation messages") {
  const auto ok = validate(fixture("bsc01.json"));
  CHECK(ok.ok);
  CHECK(ok.message == "experiment: 2 unknowns -> 2 outcomes");
  const auto bad = validate(fixture("bad_column.json"));
  CHECK_FALSE(bad.ok);
  CHECK(bad.message == "column 't1' sums to 0.98");
  CHECK_FALSE(validate(fixture("missing_labels.json")).ok);
  // A looser tolerance admits the near-miss column.
  CHECK(validate(fixture("bad_column.json"), 0.05).ok);
}

TEST_CASE("shape errors in files") {
  CHECK_THROWS_AS(parse_experiment(R"({"theta": ["a"], "outcomes": ["x", "y"],
                                       "matrix": [[1.0]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_experiment(R"({"theta": ["a"], "outcomes": ["x"],
                                       "matrix": [["1"]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_experiment(R"({"theta": ["a", "a"], "outcomes": ["x"],
                                       "matrix": [[1, 1]]})"),
                  Error);
  CHECK_THROWS_AS(parse_prior(R"({"theta": ["a", "b"], "weights": [1.0]})"), Error);
  CHECK_THROWS_AS(read_file("/nonexistent/expcomp.json"), ParseError);
}

TEST_CASE("formatting round trips byte for byte") {
  for (const char* name : {"bsc01.json", "zeroone.json", "uniform.json", "id_rule.json",
                           "terminal.json"}) {
    const std::string text = fixture(name);
    std::string once;
    switch (detect_kind(text)) {
      case FileKind::kExperiment:
        once = format_experiment(parse_experiment(text));
        CHECK(format_experiment(parse_experiment(once)) == once);
        break;
      case FileKind::kLoss:
        once = format_loss(parse_loss(text));
        CHECK(format_loss(parse_loss(once)) == once);
        break;
      case FileKind::kPrior:
        once = format_prior(parse_prior(text));
        CHECK(format_prior(parse_prior(once)) == once);
        break;
      case FileKind::kRule:
        once = format_rule(parse_rule(text));
        CHECK(format_rule(parse_rule(once)) == once);
        break;
    }
    CHECK(detect_kind(once) == detect_kind(text));
  }
}

TEST_CASE("random experiments round trip exactly") {
  sampling::Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = sampling::random_transition(rng, LabeledSet::numbered("t", 3),
                                               LabeledSet::numbered("z", 4));
    CHECK(parse_experiment(format_experiment(e)).matrix() == e.matrix());
  }
}

}  // namespace
}  // namespace expcomp::io

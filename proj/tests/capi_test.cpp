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

#include <cmath>
#include <string>

#include "expcomp/expcomp.h"

namespace {

std::string fixture(const char* name) { return std::string(EXPCOMP_TEST_DATA) + "/" + name; }

const char* const kBinary[] = {"-1", "1"};

TEST_CASE("version and status names") {
  CHECK(std::string(ec_version()) == "0.1.0");
  CHECK(std::string(ec_status_name(EC_ERR_SHAPE)) == "shape error");
}

TEST_CASE("bayes risk through handles") {
  ec_transition* e = nullptr;
  ec_loss* loss = nullptr;
  ec_distribution* prior = nullptr;
  REQUIRE(ec_transition_bsc(0.1, &e) == EC_OK);
  REQUIRE(ec_loss_zero_one(kBinary, 2, &loss) == EC_OK);
  REQUIRE(ec_distribution_uniform(kBinary, 2, &prior) == EC_OK);
  double value = 0.0;
  ec_transition* rule = nullptr;
  REQUIRE(ec_min_bayes_risk(loss, e, prior, &value, &rule) == EC_OK);
  CHECK(value == doctest::Approx(0.1));
  CHECK(ec_transition_entry(rule, 0, 0) == 1.0);
  double mi = 0.0;
  REQUIRE(ec_mutual_information(e, prior, &mi) == EC_OK);
  CHECK(std::abs(mi - 0.368064) <= 1e-6);

  ec_transition* stat = nullptr;
  REQUIRE(ec_posterior_statistic(e, prior, 1e-12, &stat) == EC_OK);
  int sufficient = 0;
  REQUIRE(ec_is_sufficient(e, stat, prior, &sufficient) == EC_OK);
  CHECK(sufficient == 1);

  ec_transition_free(stat);
  ec_transition_free(rule);
  ec_distribution_free(prior);
  ec_loss_free(loss);
  ec_transition_free(e);
}

TEST_CASE("files and divisibility") {
  ec_transition* a = nullptr;
  ec_transition* b = nullptr;
  REQUIRE(ec_transition_load(fixture("bsc01.json").c_str(), 1e-9, &a) == EC_OK);
  REQUIRE(ec_transition_load(fixture("bsc03.json").c_str(), 1e-9, &b) == EC_OK);
  int result = 0;
  double xi = 1.0;
  ec_transition* witness = nullptr;
  REQUIRE(ec_divides(a, b, 1e-7, &result, &xi, &witness) == EC_OK);
  CHECK(result == 1);
  REQUIRE(witness != nullptr);
  CHECK(ec_transition_entry(witness, 1, 0) == doctest::Approx(0.25).epsilon(1e-6));
  ec_transition_free(witness);
  witness = nullptr;
  REQUIRE(ec_divides(b, a, 1e-7, &result, &xi, &witness) == EC_OK);
  CHECK(result == 0);
  CHECK(witness == nullptr);
  CHECK(xi >= 0.05);
  ec_transition_free(a);
  ec_transition_free(b);
}

TEST_CASE("errors are reported by status") {
  ec_transition* t = nullptr;
  CHECK(ec_transition_load(fixture("bad_column.json").c_str(), 1e-9, &t) == EC_ERR_ARGUMENT);
  CHECK(std::string(ec_last_error()) == "column 't1' sums to 0.98");
  CHECK(t == nullptr);
  CHECK(ec_transition_load("/nonexistent.json", 1e-9, &t) == EC_ERR_PARSE);
  CHECK(ec_transition_bsc(0.1, nullptr) == EC_ERR_NULL);

  ec_transition* e = nullptr;
  ec_distribution* wrong = nullptr;
  const char* const three[] = {"x", "y", "z"};
  REQUIRE(ec_transition_bsc(0.2, &e) == EC_OK);
  REQUIRE(ec_distribution_uniform(three, 3, &wrong) == EC_OK);
  double mi = 0.0;
  CHECK(ec_mutual_information(e, wrong, &mi) == EC_ERR_SHAPE);
  ec_distribution_free(wrong);
  ec_transition_free(e);

  int valid = 1;
  char* message = nullptr;
  REQUIRE(ec_validate_file(fixture("bad_column.json").c_str(), 1e-9, &valid, &message) == EC_OK);
  CHECK(valid == 0);
  CHECK(std::string(message) == "column 't1' sums to 0.98");
  ec_string_free(message);
}

TEST_CASE("reports are JSON") {
  char* out = nullptr;
  REQUIRE(ec_dpi_check_json("variational", nullptr, 100, 42, &out) == EC_OK);
  const std::string text(out);
  CHECK(text.find("\"violations\":0") != std::string::npos);
  ec_string_free(out);
  CHECK(ec_dpi_check_json("nonsense", nullptr, 10, 1, &out) == EC_ERR_ARGUMENT);
}

}  // namespace

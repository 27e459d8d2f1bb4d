// Copyright 2026 The stablelat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <memory>

#include "doctest.h"
#include "fixtures.hpp"
#include "reference.hpp"
#include "stablelat/error.hpp"
#include "stablelat/replica.hpp"
#include "stablelat/validation.hpp"

using namespace stablelat;

namespace {

constexpr AgentIndex a = 0, b = 1, c = 2;

bool all_pass(const ChoiceFunction& f) {
  return validate_substitutable(f).passed() && validate_consistent(f).passed() &&
         validate_path_independent(f).passed();
}

}  // namespace

TEST_CASE("quota linear choices satisfy every axiom") {
  for (std::size_t q = 1; q <= 3; ++q) {
    const auto f = ChoiceFunction::quota_linear(4, {3, 1, 0}, q);
    CHECK(all_pass(f));
    const auto naive = ref::from_library(f);
    CHECK(ref::substitutable(naive, 4));
    CHECK(ref::consistent(naive, 4));
    CHECK(ref::path_independent(naive, 4));
  }
  CHECK(validate_path_independent(ChoiceFunction::quota_linear(2, {a, b}, 1)).passed());
}

TEST_CASE("complementary set list fails substitutability with a witness") {
  const auto f = ChoiceFunction::set_list(2, {AgentSet::of({a, b}), AgentSet::of({a})});
  const auto naive = ref::from_library(f);
  REQUIRE_FALSE(ref::substitutable(naive, 2));
  const AxiomCheck check = validate_substitutable(f);
  REQUIRE_FALSE(check.passed());
  CHECK(*check.witness == Witness{AgentSet::of({a, b}), AgentSet::of({b}), b});
  CHECK(ref::consistent(naive, 2) == validate_consistent(f).passed());
  CHECK_FALSE(validate_path_independent(f).passed());
}

TEST_CASE("disjoint alternative set list fails substitutability with a witness") {
  const auto f = ChoiceFunction::set_list(3, {AgentSet::of({a, b}), AgentSet::of({c})});
  const auto naive = ref::from_library(f);
  REQUIRE_FALSE(ref::substitutable(naive, 3));
  const AxiomCheck check = validate_substitutable(f);
  REQUIRE_FALSE(check.passed());
  CHECK(*check.witness == Witness{AgentSet::of({a, b}), AgentSet::of({a}), a});
  CHECK(ref::consistent(naive, 3));
  CHECK(validate_consistent(f).passed());
  CHECK_FALSE(validate_path_independent(f).passed());
}

TEST_CASE("first-match lists are consistent even when not substitutable") {
  const auto f = ChoiceFunction::set_list(2, {AgentSet::of({a}), AgentSet::of({b})});
  CHECK(all_pass(f));
  const auto h = ChoiceFunction::set_list(3, {AgentSet::of({b, c}), AgentSet::of({a, b})});
  const auto naive = ref::from_library(h);
  CHECK(ref::consistent(naive, 3));
  CHECK(validate_consistent(h).passed());
  CHECK_FALSE(ref::substitutable(naive, 3));
  CHECK_FALSE(validate_substitutable(h).passed());
}

TEST_CASE("validator verdicts match the naive axioms on random set lists") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomMarketSpec spec = fixtures::sub_spec(seed);
    const Market m = random_market(seed, spec);
    for (const auto& f : m.firm_choices()) {
      const auto naive = ref::from_library(f);
      const int n = static_cast<int>(f.ground_size());
      CHECK(validate_substitutable(f).passed() == ref::substitutable(naive, n));
      CHECK(validate_consistent(f).passed() == ref::consistent(naive, n));
      CHECK(validate_path_independent(f).passed() == ref::path_independent(naive, n));
    }
  }
}

TEST_CASE("q-extensions of passing choices pass") {
  const ReplicaMap map({2, 1, 2});
  const auto base = std::make_shared<const ChoiceFunction>(
      ChoiceFunction::set_list(3, {AgentSet::of({a, c}), AgentSet::of({a}), AgentSet::of({c}), AgentSet::of({b})}));
  REQUIRE(all_pass(*base));
  CHECK(all_pass(ChoiceFunction::q_extension(base, map.projection())));
}

TEST_CASE("example markets validate") {
  CHECK(validate_market(fixtures::example(1).market).ok());
  CHECK(validate_market(fixtures::example(2).market).ok());
}

TEST_CASE("oversized ground sets hit the exhaustive cap") {
  const auto f = ChoiceFunction::quota_linear(16, {0}, 1);
  CHECK_THROWS_AS(validate_substitutable(f), Error);
  try {
    validate_consistent(f, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapExceeded);
  }
  const Market m = Market::many_to_one({"f"}, {"w1", "w2", "w3"}, {ChoiceFunction::quota_linear(3, {0, 1}, 1)},
                                       {LinearPref(1, {0}), LinearPref(1, {0}), LinearPref(1, {})});
  const ValidationReport report = validate_market(m, 2);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].kind == "CapExceeded");
  CHECK(report.issues[0].agent == "f");
}

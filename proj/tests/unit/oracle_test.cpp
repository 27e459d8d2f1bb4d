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

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "reference.hpp"
#include "stablelat/error.hpp"
#include "stablelat/io.hpp"
#include "stablelat/oracle.hpp"
#include "stablelat/stability.hpp"
#include "stablelat/validation.hpp"

using namespace stablelat;

namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::set<ref::Matching> as_ref_set(const std::vector<Matching>& ms) {
  std::set<ref::Matching> out;
  for (const auto& m : ms) out.insert(ref::from_library(m));
  return out;
}

template <typename Pred>
std::set<ref::Matching> ref_filter(const ref::Market& m, Pred pred) {
  std::set<ref::Matching> out;
  for (const auto& r : ref::all_matchings(m)) {
    if (pred(r)) out.insert(r);
  }
  return out;
}

}  // namespace

TEST_CASE("matching counts") {
  const Market one = Market::many_to_one({"f"}, {"w"}, {ChoiceFunction::quota_linear(1, {0}, 1)}, {LinearPref(1, {0})});
  CHECK(count_matchings(one) == 2);
  CHECK(enumerate_matchings(one).size() == 2);
  const Market two = Market::many_to_one({"f1", "f2"}, {"w"},
                                         {ChoiceFunction::quota_linear(1, {0}, 1), ChoiceFunction::quota_linear(1, {0}, 1)},
                                         {LinearPref(2, {0, 1})});
  CHECK(count_matchings(two) == 3);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Market m2o = random_market(seed, fixtures::many_to_one_spec(seed));
    std::uint64_t expected = 1;
    for (std::size_t w = 0; w < m2o.worker_count(); ++w) expected *= m2o.firm_count() + 1;
    CHECK(count_matchings(m2o) == expected);

    const Market resp = random_market(seed, fixtures::responsive_spec(seed));
    expected = 1;
    for (std::size_t w = 0; w < resp.worker_count(); ++w) {
      std::uint64_t ways = 0;
      for (std::size_t k = 0; k <= resp.worker_quota(w); ++k) ways += choose(resp.firm_count(), k);
      expected *= ways;
    }
    CHECK(count_matchings(resp) == expected);

    const Market sub = random_market(seed, fixtures::sub_spec(seed));
    CHECK(count_matchings(sub) == (std::uint64_t{1} << (sub.firm_count() * sub.worker_count())));

    for (const Market* m : {&m2o, &resp, &sub}) {
      const auto all = enumerate_matchings(*m);
      CHECK(all.size() == count_matchings(*m));
      const auto naive = ref::all_matchings(ref::from_library(*m));
      CHECK(as_ref_set(all) == std::set<ref::Matching>(naive.begin(), naive.end()));
    }
  }
}

TEST_CASE("stable and quasi-stable sets match the naive filters") {
  auto check = [](const Market& m) {
    const ref::Market naive = ref::from_library(m);
    CHECK(as_ref_set(enumerate_stable(m)) == ref_filter(naive, [&](const auto& r) { return ref::stable(naive, r); }));
    CHECK(as_ref_set(enumerate_quasi_stable(m, Side::kWorkers)) ==
          ref_filter(naive, [&](const auto& r) { return ref::worker_quasi_stable(naive, r); }));
    CHECK(as_ref_set(enumerate_quasi_stable(m, Side::kFirms)) ==
          ref_filter(naive, [&](const auto& r) { return ref::firm_quasi_stable(naive, r); }));
  };
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    check(random_market(seed, fixtures::many_to_one_spec(seed)));
    RandomMarketSpec spec = fixtures::sub_spec(seed);
    spec.workers = 2;
    check(random_market(seed, spec));
  }
}

TEST_CASE("example 1 stable set") {
  const auto doc = fixtures::example(1);
  const auto stable = enumerate_stable(doc.market);
  CHECK(stable.size() == 4);
  for (const char* name : {"mu_under", "mu_over", "mu_star", "mu_dagger"}) {
    CHECK(std::find(stable.begin(), stable.end(), doc.matching(name)) != stable.end());
  }
  const auto join = brute_join(doc.market, Side::kFirms, doc.matching("mu_under"), doc.matching("mu_over"), stable);
  REQUIRE(join.has_value());
  CHECK(*join == doc.matching("mu_star"));
  const auto meet = brute_meet(doc.market, Side::kFirms, doc.matching("mu_under"), doc.matching("mu_over"), stable);
  REQUIRE(meet.has_value());
  CHECK(*meet == doc.matching("mu_dagger"));
}

TEST_CASE("lattice verification") {
  for (int n : {1, 2}) {
    const LatticeReport report = verify_lattice(fixtures::example(n).market);
    CHECK(report.all_passed());
    CHECK(report.pairs.size() == report.stable.size() * (report.stable.size() + 1) / 2);
  }
  const auto doc = load_market_document(fixtures::source_path("tests/data/replica_micro.json"));
  const LatticeReport single = verify_lattice(doc.market);
  CHECK(single.stable.size() == 1);
  CHECK(single.all_passed());
}

TEST_CASE("enumeration budget") {
  const auto doc = fixtures::example(2);
  try {
    enumerate_matchings(doc.market);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetExceeded);
  }
  EnumerationBudget tight;
  tight.max_matchings = 10;
  const Market m = random_market(3, fixtures::many_to_one_spec(3));
  CHECK_THROWS_AS(enumerate_matchings(m, tight), Error);
}

TEST_CASE("random markets") {
  RandomMarketSpec spec;
  CHECK(dump(to_json(random_market(7, spec))) == dump(to_json(random_market(7, spec))));
  CHECK(dump(to_json(random_market(7, spec))) != dump(to_json(random_market(8, spec))));

  RandomMarketSpec none = spec;
  none.density = 0.0;
  const Market empty = random_market(1, none);
  CHECK(enumerate_stable(empty) == std::vector<Matching>{fixtures::empty_matching(empty)});

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomMarketSpec s;
    s.firms = 3;
    s.workers = 4;
    s.firm_kind = seed % 2 == 0 ? ChoiceKind::kSetList : ChoiceKind::kQuotaLinear;
    const Market m = random_market(seed, s);
    CHECK(validate_market(m).ok());
    CHECK_FALSE(enumerate_stable(m).empty());
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(validate_market(random_market(seed, fixtures::sub_spec(seed))).ok());
}

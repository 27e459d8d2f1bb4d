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

#ifndef STABLELAT_TESTS_SUPPORT_FIXTURES_HPP_
#define STABLELAT_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stablelat/io.hpp"
#include "stablelat/market.hpp"
#include "stablelat/matching.hpp"
#include "stablelat/oracle.hpp"

namespace fixtures {

inline std::filesystem::path source_path(const std::string& rel) {
  return std::filesystem::path(STABLELAT_SOURCE_DIR) / rel;
}

inline stablelat::MarketDocument example(int n) {
  return stablelat::load_market_document(source_path("assets/example" + std::to_string(n) + ".json"));
}

inline stablelat::Matching matching(const stablelat::Market& m, const std::string& assignments) {
  return stablelat::matching_from_json(stablelat::parse_json("{\"assignments\": " + assignments + "}"), m);
}

inline stablelat::Matching empty_matching(const stablelat::Market& m) {
  return stablelat::Matching(m.firm_count(), m.worker_count());
}

inline stablelat::RandomMarketSpec many_to_one_spec(std::uint64_t seed) {
  stablelat::RandomMarketSpec spec;
  spec.variant = stablelat::MarketVariant::kManyToOne;
  spec.firms = 2 + seed % 2;
  spec.workers = 2 + seed % 3;
  spec.density = 0.75;
  spec.firm_kind = (seed / 3) % 2 == 0 ? stablelat::ChoiceKind::kSetList : stablelat::ChoiceKind::kQuotaLinear;
  return spec;
}

inline stablelat::RandomMarketSpec sub_spec(std::uint64_t seed) {
  stablelat::RandomMarketSpec spec;
  spec.variant = stablelat::MarketVariant::kManyToManySub;
  spec.firms = 2 + seed % 2;
  spec.workers = 2 + (seed / 2) % 2;
  spec.density = 0.8;
  spec.firm_kind = seed % 3 == 0 ? stablelat::ChoiceKind::kQuotaLinear : stablelat::ChoiceKind::kSetList;
  spec.worker_kind = seed % 5 == 0 ? stablelat::ChoiceKind::kQuotaLinear : stablelat::ChoiceKind::kSetList;
  return spec;
}

inline stablelat::RandomMarketSpec responsive_spec(std::uint64_t seed) {
  stablelat::RandomMarketSpec spec;
  spec.variant = stablelat::MarketVariant::kManyToManyResponsive;
  spec.firms = 3;
  spec.workers = 3;
  spec.density = 0.75;
  spec.firm_kind = seed % 2 == 0 ? stablelat::ChoiceKind::kSetList : stablelat::ChoiceKind::kQuotaLinear;
  return spec;
}

}  // namespace fixtures

#endif  // STABLELAT_TESTS_SUPPORT_FIXTURES_HPP_

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

#include "stablelat/market.hpp"

#include <algorithm>
#include <set>

#include "stablelat/error.hpp"

namespace stablelat {

std::string_view to_string(MarketVariant v) {
  switch (v) {
    case MarketVariant::kManyToOne: return "many_to_one";
    case MarketVariant::kManyToManyResponsive: return "many_to_many_responsive";
    case MarketVariant::kManyToManySub: return "many_to_many_sub";
  }
  return "unknown";
}

std::optional<MarketVariant> parse_variant(std::string_view tag) {
  if (tag == "many_to_one") return MarketVariant::kManyToOne;
  if (tag == "many_to_many_responsive") return MarketVariant::kManyToManyResponsive;
  if (tag == "many_to_many_sub") return MarketVariant::kManyToManySub;
  return std::nullopt;
}

namespace {

void check_names(const std::vector<std::string>& names, const char* side) {
  if (names.size() > kMaxAgentsPerSide) {
    throw Error(ErrorCode::kInvalidArgument, std::string("too many ") + side + " (limit 64)");
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(ErrorCode::kInvalidArgument, std::string("empty id among ") + side);
    if (!seen.insert(n).second) throw Error(ErrorCode::kInvalidArgument, "duplicate id '" + n + "'");
  }
}

}  // namespace

void Market::check_shape() const {
  check_names(firm_names_, "firms");
  check_names(worker_names_, "workers");
  for (const auto& n : firm_names_) {
    if (std::find(worker_names_.begin(), worker_names_.end(), n) != worker_names_.end()) {
      throw Error(ErrorCode::kInvalidArgument, "id '" + n + "' names both a firm and a worker");
    }
  }
  if (firm_choices_.size() != firm_count() || worker_choices_.size() != worker_count()) {
    throw Error(ErrorCode::kInvalidArgument, "one preference entry is required per agent");
  }
  for (const auto& c : firm_choices_) {
    if (c.ground_size() != worker_count()) {
      throw Error(ErrorCode::kInvalidArgument, "firm choice function is not over the worker set");
    }
  }
  for (const auto& c : worker_choices_) {
    if (c.ground_size() != firm_count()) {
      throw Error(ErrorCode::kInvalidArgument, "worker choice function is not over the firm set");
    }
  }
}

Market Market::many_to_one(std::vector<std::string> firm_names, std::vector<std::string> worker_names,
                           std::vector<ChoiceFunction> firm_choices, std::vector<LinearPref> worker_prefs) {
  std::vector<std::size_t> quotas(worker_prefs.size(), 1);
  Market m = many_to_many_responsive(std::move(firm_names), std::move(worker_names), std::move(firm_choices),
                                     std::move(worker_prefs), std::move(quotas));
  m.variant_ = MarketVariant::kManyToOne;
  return m;
}

Market Market::many_to_many_responsive(std::vector<std::string> firm_names,
                                       std::vector<std::string> worker_names,
                                       std::vector<ChoiceFunction> firm_choices,
                                       std::vector<LinearPref> worker_prefs,
                                       std::vector<std::size_t> worker_quotas) {
  Market m;
  m.variant_ = MarketVariant::kManyToManyResponsive;
  m.firm_names_ = std::move(firm_names);
  m.worker_names_ = std::move(worker_names);
  m.firm_choices_ = std::move(firm_choices);
  if (worker_prefs.size() != m.worker_names_.size() || worker_quotas.size() != m.worker_names_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one preference and one quota are required per worker");
  }
  for (std::size_t w = 0; w < worker_prefs.size(); ++w) {
    m.worker_choices_.push_back(
        ChoiceFunction::quota_linear(m.firm_names_.size(), worker_prefs[w].order(), worker_quotas[w]));
  }
  m.worker_prefs_ = std::move(worker_prefs);
  m.worker_quotas_ = std::move(worker_quotas);
  m.check_shape();
  return m;
}

Market Market::many_to_many_sub(std::vector<std::string> firm_names, std::vector<std::string> worker_names,
                                std::vector<ChoiceFunction> firm_choices,
                                std::vector<ChoiceFunction> worker_choices) {
  Market m;
  m.variant_ = MarketVariant::kManyToManySub;
  m.firm_names_ = std::move(firm_names);
  m.worker_names_ = std::move(worker_names);
  m.firm_choices_ = std::move(firm_choices);
  m.worker_choices_ = std::move(worker_choices);
  m.worker_quotas_.assign(m.worker_names_.size(), m.firm_names_.size());
  m.check_shape();
  return m;
}

std::optional<AgentIndex> Market::find_firm(std::string_view name) const {
  auto it = std::find(firm_names_.begin(), firm_names_.end(), name);
  if (it == firm_names_.end()) return std::nullopt;
  return static_cast<AgentIndex>(it - firm_names_.begin());
}

std::optional<AgentIndex> Market::find_worker(std::string_view name) const {
  auto it = std::find(worker_names_.begin(), worker_names_.end(), name);
  if (it == worker_names_.end()) return std::nullopt;
  return static_cast<AgentIndex>(it - worker_names_.begin());
}

const LinearPref& Market::worker_pref(AgentIndex w) const {
  if (!has_linear_workers()) {
    throw Error(ErrorCode::kInvalidArgument, "workers of a substitutable market carry no linear order");
  }
  return worker_prefs_[w];
}

std::size_t Market::max_list_length() const {
  std::size_t longest = 1;
  for (const auto& c : firm_choices_) longest = std::max(longest, c.list_length());
  for (const auto& c : worker_choices_) longest = std::max(longest, c.list_length());
  return longest;
}

}  // namespace stablelat

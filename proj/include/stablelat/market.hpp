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

#ifndef STABLELAT_MARKET_HPP_
#define STABLELAT_MARKET_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablelat/choice.hpp"

namespace stablelat {

enum class MarketVariant {
  kManyToOne,             // workers hold a linear order, at most one firm each
  kManyToManyResponsive,  // workers hold a linear order plus a quota
  kManyToManySub,         // workers hold a substitutable choice function
};

std::string_view to_string(MarketVariant v);
/// Parses the JSON tag ("many_to_one", ...).
std::optional<MarketVariant> parse_variant(std::string_view tag);

/// A two-sided market. Firms always carry choice functions over workers;
/// the worker side depends on the variant. Immutable after construction.
///
/// Every variant also exposes a worker choice function over firms, so that
/// the matching engine can treat all three markets as substitutable
/// many-to-many markets: the max of P_w for many-to-one, the q_w best
/// acceptable firms for responsive workers.
class Market {
 public:
  static Market many_to_one(std::vector<std::string> firm_names, std::vector<std::string> worker_names,
                            std::vector<ChoiceFunction> firm_choices, std::vector<LinearPref> worker_prefs);
  static Market many_to_many_responsive(std::vector<std::string> firm_names,
                                        std::vector<std::string> worker_names,
                                        std::vector<ChoiceFunction> firm_choices,
                                        std::vector<LinearPref> worker_prefs,
                                        std::vector<std::size_t> worker_quotas);
  static Market many_to_many_sub(std::vector<std::string> firm_names, std::vector<std::string> worker_names,
                                 std::vector<ChoiceFunction> firm_choices,
                                 std::vector<ChoiceFunction> worker_choices);

  MarketVariant variant() const { return variant_; }
  std::size_t firm_count() const { return firm_names_.size(); }
  std::size_t worker_count() const { return worker_names_.size(); }
  AgentSet all_firms() const { return AgentSet::first(firm_count()); }
  AgentSet all_workers() const { return AgentSet::first(worker_count()); }

  const std::string& firm_name(AgentIndex f) const { return firm_names_[f]; }
  const std::string& worker_name(AgentIndex w) const { return worker_names_[w]; }
  const std::vector<std::string>& firm_names() const { return firm_names_; }
  const std::vector<std::string>& worker_names() const { return worker_names_; }
  std::optional<AgentIndex> find_firm(std::string_view name) const;
  std::optional<AgentIndex> find_worker(std::string_view name) const;

  const ChoiceFunction& firm_choice(AgentIndex f) const { return firm_choices_[f]; }
  const ChoiceFunction& worker_choice(AgentIndex w) const { return worker_choices_[w]; }
  std::span<const ChoiceFunction> firm_choices() const { return firm_choices_; }
  std::span<const ChoiceFunction> worker_choices() const { return worker_choices_; }

  /// Linear orders; only for kManyToOne and kManyToManyResponsive.
  bool has_linear_workers() const { return variant_ != MarketVariant::kManyToManySub; }
  const LinearPref& worker_pref(AgentIndex w) const;
  /// 1 for many-to-one workers, q_w for responsive workers, and the size of
  /// the firm side for substitutable workers.
  std::size_t worker_quota(AgentIndex w) const { return worker_quotas_[w]; }

  /// Longest ranked list over all agents (at least 1).
  std::size_t max_list_length() const;

 private:
  Market() = default;
  void check_shape() const;

  MarketVariant variant_ = MarketVariant::kManyToOne;
  std::vector<std::string> firm_names_;
  std::vector<std::string> worker_names_;
  std::vector<ChoiceFunction> firm_choices_;
  std::vector<ChoiceFunction> worker_choices_;
  std::vector<LinearPref> worker_prefs_;
  std::vector<std::size_t> worker_quotas_;
};

}  // namespace stablelat

#endif  // STABLELAT_MARKET_HPP_

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

#ifndef STABLELAT_CHOICE_HPP_
#define STABLELAT_CHOICE_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "stablelat/agent_set.hpp"

namespace stablelat {

/// Choice from a ranked list of acceptable sets: C(S) is the first listed
/// set contained in S, or the empty set.
struct SetListChoice {
  std::vector<AgentSet> list;
};

/// Responsive-derived choice: the min(quota, |acceptable ∩ S|) best members
/// of S under `order` (best first). Members not in `order` are unacceptable.
struct QuotaLinearChoice {
  std::vector<AgentIndex> order;
  std::size_t quota = 1;
};

class ChoiceFunction;

/// Lazy q-extension of a base choice over replicated agents. Replica r
/// projects to base agent projection[r]; replicas of one base agent must be
/// numbered in increasing copy order.
struct QExtensionChoice {
  std::shared_ptr<const ChoiceFunction> base;
  std::shared_ptr<const std::vector<AgentIndex>> projection;
};

/// A choice function C : 2^G -> 2^G over a ground set G = {0, ..., n-1} of
/// agents on the opposite side.
class ChoiceFunction {
 public:
  using Rep = std::variant<SetListChoice, QuotaLinearChoice, QExtensionChoice>;

  /// Throws Error(kInvalidArgument) on empty, duplicate, or out-of-range
  /// listed sets.
  static ChoiceFunction set_list(std::size_t ground_size, std::vector<AgentSet> list);
  /// Throws Error(kInvalidArgument) on quota 0 or a malformed order.
  static ChoiceFunction quota_linear(std::size_t ground_size, std::vector<AgentIndex> order,
                                     std::size_t quota);
  static ChoiceFunction q_extension(std::shared_ptr<const ChoiceFunction> base,
                                    std::shared_ptr<const std::vector<AgentIndex>> projection);

  /// C(S). Throws Error(kUnknownAgent) if S leaves the ground set.
  AgentSet choose(AgentSet offered) const;
  /// C(S) without the ground-set check.
  AgentSet choose_unchecked(AgentSet offered) const;

  std::size_t ground_size() const { return ground_size_; }
  AgentSet ground() const { return AgentSet::first(ground_size_); }
  /// Agents that appear in some acceptable outcome.
  AgentSet acceptable() const;
  /// Number of ranked entries (listed sets or ordered agents); used to bound
  /// operator iteration.
  std::size_t list_length() const;

  const Rep& rep() const { return rep_; }

  /// The same function as a set list. Quota-linear choices list every
  /// acceptable set of at most `quota` agents; q-extensions list every
  /// replica combination of each base set, lowest copies first.
  ChoiceFunction as_set_list() const;

 private:
  ChoiceFunction(std::size_t ground_size, Rep rep) : ground_size_(ground_size), rep_(std::move(rep)) {}

  std::size_t ground_size_ = 0;
  Rep rep_;
};

/// A strict order over individual partners; unlisted partners rank below
/// being unmatched.
class LinearPref {
 public:
  LinearPref() = default;
  /// Throws Error(kInvalidArgument) on duplicates or out-of-range entries.
  LinearPref(std::size_t ground_size, std::vector<AgentIndex> order);

  const std::vector<AgentIndex>& order() const { return order_; }
  bool acceptable(AgentIndex a) const { return rank_[a] < order_.size(); }
  /// Position in the order; order().size() for "unmatched" (pass nullopt);
  /// order().size() + 1 for every unacceptable partner.
  std::size_t rank(std::optional<AgentIndex> a) const;
  /// a R b (weak preference) with nullopt standing for being unmatched.
  bool weakly_prefers(std::optional<AgentIndex> a, std::optional<AgentIndex> b) const {
    return rank(a) <= rank(b);
  }
  bool prefers(std::optional<AgentIndex> a, std::optional<AgentIndex> b) const {
    return rank(a) < rank(b);
  }
  /// The P-best member of S that is acceptable, if any.
  std::optional<AgentIndex> best(AgentSet s) const;

 private:
  std::vector<AgentIndex> order_;
  std::vector<std::size_t> rank_;
};

}  // namespace stablelat

#endif  // STABLELAT_CHOICE_HPP_

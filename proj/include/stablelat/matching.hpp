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

#ifndef STABLELAT_MATCHING_HPP_
#define STABLELAT_MATCHING_HPP_

#include <cstddef>
#include <vector>

#include "stablelat/agent_set.hpp"

namespace stablelat {

/// A bipartite assignment between firms and workers. Both directions are
/// stored and always agree: w ∈ μ(f) ⇔ f ∈ μ(w). Variant-specific limits on
/// |μ(w)| are the market's business, not the matching's.
class Matching {
 public:
  /// The empty matching.
  Matching(std::size_t firm_count, std::size_t worker_count);

  static Matching from_firm_side(std::vector<AgentSet> firm_sets, std::size_t worker_count);
  static Matching from_worker_side(std::size_t firm_count, std::vector<AgentSet> worker_sets);

  std::size_t firm_count() const { return firms_.size(); }
  std::size_t worker_count() const { return workers_.size(); }

  AgentSet of_firm(AgentIndex f) const { return firms_[f]; }
  AgentSet of_worker(AgentIndex w) const { return workers_[w]; }
  const std::vector<AgentSet>& firm_side() const { return firms_; }
  const std::vector<AgentSet>& worker_side() const { return workers_; }

  /// The same matching with the roles of firms and workers exchanged.
  Matching transposed() const;

  bool empty() const;

  friend bool operator==(const Matching& a, const Matching& b) { return a.firms_ == b.firms_; }
  /// Total order on firm-side sets; for containers only.
  friend bool operator<(const Matching& a, const Matching& b) { return a.firms_ < b.firms_; }

 private:
  Matching() = default;

  std::vector<AgentSet> firms_;
  std::vector<AgentSet> workers_;
};

}  // namespace stablelat

#endif  // STABLELAT_MATCHING_HPP_

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

#include "stablelat/matching.hpp"

#include <algorithm>

#include "stablelat/error.hpp"

namespace stablelat {

Matching::Matching(std::size_t firm_count, std::size_t worker_count)
    : firms_(firm_count), workers_(worker_count) {
  if (firm_count > kMaxAgentsPerSide || worker_count > kMaxAgentsPerSide) {
    throw Error(ErrorCode::kInvalidArgument, "matching side exceeds 64 agents");
  }
}

Matching Matching::from_firm_side(std::vector<AgentSet> firm_sets, std::size_t worker_count) {
  Matching m(firm_sets.size(), worker_count);
  const AgentSet all = AgentSet::first(worker_count);
  for (AgentIndex f = 0; f < firm_sets.size(); ++f) {
    if (!firm_sets[f].subset_of(all)) throw Error(ErrorCode::kUnknownAgent, "firm matched to an unknown worker");
    for (AgentIndex w : firm_sets[f]) m.workers_[w].insert(f);
  }
  m.firms_ = std::move(firm_sets);
  return m;
}

Matching Matching::from_worker_side(std::size_t firm_count, std::vector<AgentSet> worker_sets) {
  return from_firm_side(std::move(worker_sets), firm_count).transposed();
}

Matching Matching::transposed() const {
  Matching t;
  t.firms_ = workers_;
  t.workers_ = firms_;
  return t;
}

bool Matching::empty() const {
  return std::all_of(firms_.begin(), firms_.end(), [](AgentSet s) { return s.empty(); });
}

}  // namespace stablelat

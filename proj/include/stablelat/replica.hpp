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

#ifndef STABLELAT_REPLICA_HPP_
#define STABLELAT_REPLICA_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "stablelat/market.hpp"
#include "stablelat/matching.hpp"
#include "stablelat/tarski.hpp"

namespace stablelat {

/// W^q: worker w is cloned into q_w replicas w^1, ..., w^q, numbered
/// contiguously in base-worker order.
class ReplicaMap {
 public:
  explicit ReplicaMap(std::vector<std::size_t> quotas);

  std::size_t base_count() const { return quotas_.size(); }
  std::size_t replica_count() const { return projection_->size(); }
  std::size_t quota(AgentIndex w) const { return quotas_[w]; }
  /// w^t with t counted from 1.
  AgentIndex replica(AgentIndex w, std::size_t t) const { return first_[w] + t - 1; }
  /// π(r)
  AgentIndex project(AgentIndex r) const { return (*projection_)[r]; }
  AgentSet project(AgentSet replicas) const;
  /// The t of r = w^t.
  std::size_t copy_of(AgentIndex r) const { return r - first_[project(r)] + 1; }
  AgentSet replicas_of(AgentIndex w) const;
  const std::shared_ptr<const std::vector<AgentIndex>>& projection() const { return projection_; }

 private:
  std::vector<std::size_t> quotas_;
  std::vector<AgentIndex> first_;
  std::shared_ptr<const std::vector<AgentIndex>> projection_;
};

/// "w#t"
std::string replica_name(const std::string& base, std::size_t t);

struct RelatedMarket {
  Market source;
  /// Many-to-one: firms carry q-extensions, each replica its worker's order.
  Market related;
  ReplicaMap map;
};

/// Throws Error(kInvalidArgument) unless m is a responsive market.
RelatedMarket build_related_market(const Market& m);

/// C^q(S): for every w ∈ C(π(S)), the lowest copy of w present in S. `c` is
/// the base choice over the source workers.
AgentSet q_extended_choose(const ChoiceFunction& c, const ReplicaMap& map, AgentSet replicas);

/// Φ[μ](w) = ∪_t μ(w^t)
Matching phi(const RelatedMarket& rm, const Matching& mu);
/// The canonical preimage: the firms of ν(w), best first under P_w, go to
/// w^1, w^2, .... Throws Error(kSchemaError) if |ν(w)| > q_w.
Matching phi_preimage(const RelatedMarket& rm, const Matching& nu);
/// The unique stable preimage of a stable ν. Throws Error(kNotStable) for
/// unstable input and Error(kPreimageNotStable) if the canonical preimage
/// is unstable in the related market.
Matching phi_inverse_stable(const RelatedMarket& rm, const Matching& nu);

/// Lattice operations on the source's stable set, computed in the related
/// market and pushed forward through Φ. Throw Error(kNotStable).
Matching lifted_join_firms(const RelatedMarket& rm, const Matching& a, const Matching& b,
                           const TarskiOptions& opts = {});
Matching lifted_meet_firms(const RelatedMarket& rm, const Matching& a, const Matching& b,
                           const TarskiOptions& opts = {});
Matching lifted_join_workers(const RelatedMarket& rm, const Matching& a, const Matching& b,
                             const TarskiOptions& opts = {});
Matching lifted_meet_workers(const RelatedMarket& rm, const Matching& a, const Matching& b,
                             const TarskiOptions& opts = {});

/// ≽_F^q: Blair's order with the source firms' choice functions.
bool blair_geq_firms_q(const Market& m, const Matching& a, const Matching& b);

}  // namespace stablelat

#endif  // STABLELAT_REPLICA_HPP_

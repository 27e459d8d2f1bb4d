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

#include "stablelat/replica.hpp"

#include <algorithm>

#include "stablelat/error.hpp"
#include "stablelat/stability.hpp"

namespace stablelat {

ReplicaMap::ReplicaMap(std::vector<std::size_t> quotas) : quotas_(std::move(quotas)) {
  auto projection = std::make_shared<std::vector<AgentIndex>>();
  for (AgentIndex w = 0; w < quotas_.size(); ++w) {
    if (quotas_[w] == 0) throw Error(ErrorCode::kInvalidArgument, "replica quota must be at least 1");
    first_.push_back(projection->size());
    projection->insert(projection->end(), quotas_[w], w);
  }
  if (projection->size() > kMaxAgentsPerSide) {
    throw Error(ErrorCode::kInvalidArgument, "replica market exceeds 64 workers");
  }
  projection_ = std::move(projection);
}

AgentSet ReplicaMap::project(AgentSet replicas) const {
  AgentSet out;
  for (AgentIndex r : replicas) out.insert(project(r));
  return out;
}

AgentSet ReplicaMap::replicas_of(AgentIndex w) const {
  AgentSet out;
  for (std::size_t t = 1; t <= quotas_[w]; ++t) out.insert(replica(w, t));
  return out;
}

std::string replica_name(const std::string& base, std::size_t t) { return base + "#" + std::to_string(t); }

RelatedMarket build_related_market(const Market& m) {
  if (m.variant() != MarketVariant::kManyToManyResponsive) {
    throw Error(ErrorCode::kInvalidArgument, "the related market is built from a responsive many-to-many market");
  }
  std::vector<std::size_t> quotas;
  for (AgentIndex w = 0; w < m.worker_count(); ++w) quotas.push_back(m.worker_quota(w));
  ReplicaMap map(std::move(quotas));

  std::vector<ChoiceFunction> firms;
  for (AgentIndex f = 0; f < m.firm_count(); ++f) {
    firms.push_back(ChoiceFunction::q_extension(std::make_shared<const ChoiceFunction>(m.firm_choice(f)),
                                                map.projection()));
  }
  std::vector<std::string> names;
  std::vector<LinearPref> prefs;
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    for (std::size_t t = 1; t <= map.quota(w); ++t) {
      names.push_back(replica_name(m.worker_name(w), t));
      prefs.push_back(m.worker_pref(w));
    }
  }
  Market related = Market::many_to_one(m.firm_names(), std::move(names), std::move(firms), std::move(prefs));
  return {m, std::move(related), std::move(map)};
}

AgentSet q_extended_choose(const ChoiceFunction& c, const ReplicaMap& map, AgentSet replicas) {
  const AgentSet chosen = c.choose(map.project(replicas));
  AgentSet out;
  AgentSet covered;
  for (AgentIndex r : replicas) {
    const AgentIndex w = map.project(r);
    if (chosen.contains(w) && !covered.contains(w)) {
      out.insert(r);
      covered.insert(w);
    }
  }
  return out;
}

Matching phi(const RelatedMarket& rm, const Matching& mu) {
  check_matching(rm.related, mu);
  std::vector<AgentSet> workers(rm.map.base_count());
  for (AgentIndex r = 0; r < rm.map.replica_count(); ++r) workers[rm.map.project(r)] |= mu.of_worker(r);
  return Matching::from_worker_side(rm.source.firm_count(), std::move(workers));
}

Matching phi_preimage(const RelatedMarket& rm, const Matching& nu) {
  check_matching(rm.source, nu);
  std::vector<AgentSet> replicas(rm.map.replica_count());
  for (AgentIndex w = 0; w < rm.map.base_count(); ++w) {
    std::vector<AgentIndex> firms = nu.of_worker(w).members();
    const LinearPref& pref = rm.source.worker_pref(w);
    std::stable_sort(firms.begin(), firms.end(), [&](AgentIndex a, AgentIndex b) { return pref.rank(a) < pref.rank(b); });
    for (std::size_t i = 0; i < firms.size(); ++i) replicas[rm.map.replica(w, i + 1)].insert(firms[i]);
  }
  return Matching::from_worker_side(rm.source.firm_count(), std::move(replicas));
}

Matching phi_inverse_stable(const RelatedMarket& rm, const Matching& nu) {
  check_matching(rm.source, nu);
  if (!is_stable(rm.source, nu)) throw Error(ErrorCode::kNotStable, "matching is not stable in the source market");
  Matching mu = phi_preimage(rm, nu);
  if (!is_stable(rm.related, mu)) {
    throw Error(ErrorCode::kPreimageNotStable, "canonical preimage is not stable in the related market");
  }
  return mu;
}

namespace {

template <typename Op>
Matching lifted(const RelatedMarket& rm, const Matching& a, const Matching& b, const TarskiOptions& opts, Op op) {
  const Matching pa = phi_inverse_stable(rm, a);
  const Matching pb = phi_inverse_stable(rm, b);
  return phi(rm, op(rm.related, pa, pb, opts));
}

}  // namespace

Matching lifted_join_firms(const RelatedMarket& rm, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  return lifted(rm, a, b, opts, stable_join_firms);
}

Matching lifted_meet_firms(const RelatedMarket& rm, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  return lifted(rm, a, b, opts, stable_meet_firms);
}

Matching lifted_join_workers(const RelatedMarket& rm, const Matching& a, const Matching& b,
                             const TarskiOptions& opts) {
  return lifted(rm, a, b, opts, stable_join_workers);
}

Matching lifted_meet_workers(const RelatedMarket& rm, const Matching& a, const Matching& b,
                             const TarskiOptions& opts) {
  return lifted(rm, a, b, opts, stable_meet_workers);
}

bool blair_geq_firms_q(const Market& m, const Matching& a, const Matching& b) { return blair_geq_firms(m, a, b); }

}  // namespace stablelat

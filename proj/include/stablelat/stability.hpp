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

#ifndef STABLELAT_STABILITY_HPP_
#define STABLELAT_STABILITY_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "stablelat/market.hpp"
#include "stablelat/matching.hpp"
#include "stablelat/validation.hpp"

namespace stablelat {

/// Controls the "for each subset" quantifier in the quasi-stability tests.
/// The subsets that matter are those of the willing-partner set minus the
/// current partners; beyond `exhaustive_cap` of them the check raises
/// Error(kCapExceeded) unless `assume_substitutable` is set, in which case
/// only the full set and the singletons are tested (sufficient under
/// substitutability).
struct QuasiCheckOptions {
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
  bool assume_substitutable = false;
};

enum class BlockReason {
  kPrefersToPartner,  // many-to-one: f P_w μ(w)
  kReplacesPartner,   // responsive, |μ(w)| = q_w: f beats some current firm
  kFillsVacancy,      // responsive, |μ(w)| < q_w: f is acceptable
  kMutuallyChosen,    // substitutable: f ∈ C_w(μ(w) ∪ {f})
};

std::string_view to_string(BlockReason r);

struct BlockingPair {
  AgentIndex firm;
  AgentIndex worker;
  BlockReason reason;

  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

/// Throws Error(kSchemaError) if the matching's shape does not fit the
/// market or violates the variant's limit on |μ(w)|.
void check_matching(const Market& m, const Matching& mu);

bool blocked_by_firm(const Market& m, const Matching& mu, AgentIndex f);
bool blocked_by_worker(const Market& m, const Matching& mu, AgentIndex w);
bool is_individually_rational(const Market& m, const Matching& mu);
/// Complete list, sorted by (firm index, worker index).
std::vector<BlockingPair> blocking_pairs(const Market& m, const Matching& mu);
bool is_stable(const Market& m, const Matching& mu);

/// F_w^μ = {f : w ∈ C_f(μ(f) ∪ {w})}, identical in every variant.
AgentSet willing_firms(const Market& m, const Matching& mu, AgentIndex w);
/// W_f^μ = {w : f R_w μ(w)} in many-to-one markets and
/// {w : f ∈ C_w(μ(w) ∪ {f})} otherwise. The two agree on individually
/// rational many-to-one matchings.
AgentSet willing_workers(const Market& m, const Matching& mu, AgentIndex f);

bool is_worker_quasi_stable(const Market& m, const Matching& mu, const QuasiCheckOptions& opts = {});
bool is_firm_quasi_stable(const Market& m, const Matching& mu, const QuasiCheckOptions& opts = {});

/// a ≽_F b: C_f(a(f) ∪ b(f)) = a(f) for every firm.
bool blair_geq_firms(const Market& m, const Matching& a, const Matching& b);
/// a ≽_W b: C_w(a(w) ∪ b(w)) = a(w) for every worker.
bool blair_geq_workers(const Market& m, const Matching& a, const Matching& b);
/// a ≥_W b: a(w) R_w b(w) for every worker. Many-to-one markets only;
/// throws Error(kInvalidArgument) otherwise.
bool unanimous_geq_workers(const Market& m, const Matching& a, const Matching& b);
/// The worker order the lattice results use: unanimous in many-to-one
/// markets, Blair's otherwise.
bool worker_order_geq(const Market& m, const Matching& a, const Matching& b);

}  // namespace stablelat

#endif  // STABLELAT_STABILITY_HPP_

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

#ifndef STABLELAT_ORACLE_HPP_
#define STABLELAT_ORACLE_HPP_

// Exhaustive enumeration at desk scale: the ground truth the Tarski
// machinery is checked against.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stablelat/market.hpp"
#include "stablelat/matching.hpp"
#include "stablelat/stability.hpp"
#include "stablelat/tarski.hpp"

namespace stablelat {

/// The agent limits apply to enumerate_matchings only. The stable and
/// quasi-stable enumerations skip worker assignments that are not
/// individually rational and are bounded by `max_matchings` alone.
struct EnumerationBudget {
  std::size_t max_matchings = 10'000'000;
  std::size_t max_firms = 6;
  std::size_t max_workers = 7;
};

/// Visits every matching the variant allows, exactly once. Workers are
/// taken in id order and each runs through its firm sets in increasing
/// mask order, the last worker fastest. Throws Error(kBudgetExceeded)
/// before visiting anything if the market is over budget.
void for_each_matching(const Market& m, const EnumerationBudget& budget,
                       const std::function<void(const Matching&)>& visit);
std::vector<Matching> enumerate_matchings(const Market& m, const EnumerationBudget& budget = {});
/// Number of matchings enumerate_matchings would produce, without the
/// budget check.
std::uint64_t count_matchings(const Market& m);

std::vector<Matching> enumerate_stable(const Market& m, const EnumerationBudget& budget = {});
/// Q^W for Side::kWorkers, Q^F for Side::kFirms.
std::vector<Matching> enumerate_quasi_stable(const Market& m, Side side, const EnumerationBudget& budget = {},
                                             const QuasiCheckOptions& opts = {});

/// The least upper bound of a and b within `universe` under the side's
/// order, if one exists.
std::optional<Matching> brute_join(const Market& m, Side order, const Matching& a, const Matching& b,
                                   std::span<const Matching> universe);
std::optional<Matching> brute_meet(const Market& m, Side order, const Matching& a, const Matching& b,
                                   std::span<const Matching> universe);

struct LatticePair {
  std::size_t a = 0;
  std::size_t b = 0;
  /// Indices into LatticeReport::stable; empty when no bound exists.
  std::optional<std::size_t> join_firms, meet_firms, join_workers, meet_workers;
  /// The Tarski results agree with the brute-force bounds above.
  bool tarski_agrees = false;
};

struct LatticeReport {
  std::vector<Matching> stable;
  /// Every unordered pair a ≤ b.
  std::vector<LatticePair> pairs;
  bool firm_order_is_partial_order = false;
  bool worker_order_is_partial_order = false;
  bool firm_lattice = false;
  bool worker_lattice = false;
  /// a ≽_F b exactly when b is at least as good as a for the workers.
  bool order_duality = false;
  /// The firm join is the worker meet and the firm meet is the worker join.
  bool operation_duality = false;
  bool tarski_agreement = false;

  bool all_passed() const {
    return firm_order_is_partial_order && worker_order_is_partial_order && firm_lattice && worker_lattice &&
           order_duality && operation_duality && tarski_agreement;
  }
};

LatticeReport verify_lattice(const Market& m, const EnumerationBudget& budget = {},
                             const TarskiOptions& opts = {});

enum class ChoiceKind { kQuotaLinear, kSetList };

struct RandomMarketSpec {
  MarketVariant variant = MarketVariant::kManyToOne;
  std::size_t firms = 3;
  std::size_t workers = 4;
  /// Probability that a given agent finds a given partner acceptable.
  double density = 0.7;
  ChoiceKind firm_kind = ChoiceKind::kQuotaLinear;
  /// Worker choice functions in substitutable markets.
  ChoiceKind worker_kind = ChoiceKind::kSetList;
  std::size_t max_firm_quota = 2;
  std::size_t max_worker_quota = 2;
  /// Set-list choices are the union of the maxima of up to this many random
  /// partial orders.
  std::size_t max_orders = 2;
  std::size_t retry_cap = 1000;
};

/// Deterministic in (seed, spec) on every platform. Set-list choice
/// functions are rejection-sampled through the validators; throws
/// Error(kGenerationFailed) once `retry_cap` attempts for one agent fail.
Market random_market(std::uint64_t seed, const RandomMarketSpec& spec);

}  // namespace stablelat

#endif  // STABLELAT_ORACLE_HPP_

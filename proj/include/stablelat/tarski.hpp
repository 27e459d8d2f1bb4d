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

#ifndef STABLELAT_TARSKI_HPP_
#define STABLELAT_TARSKI_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "stablelat/market.hpp"
#include "stablelat/matching.hpp"
#include "stablelat/stability.hpp"

namespace stablelat {

struct EnumerationBudget;

enum class Side { kFirms, kWorkers };

std::string_view to_string(Side s);
/// "firms" or "workers".
std::optional<Side> parse_side(std::string_view tag);

/// a is at least as good as b for `side`: Blair's order for the firms, the
/// worker order of worker_order_geq for the workers.
bool side_geq(const Market& m, Side side, const Matching& a, const Matching& b);

struct TarskiOptions {
  /// Check the quasi-stability hypotheses of the inputs. With this off the
  /// results are best effort.
  bool enforce_preconditions = true;
  QuasiCheckOptions quasi;
  /// Overrides iteration_cap(m).
  std::optional<std::size_t> step_cap;
};

/// λ(f) = C_f(a(f) ∪ b(f)); the ≽_F-join of a and b among worker-quasi-stable
/// matchings. Throws Error(kNotWorkerQuasiStable).
Matching lambda_join(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts = {});
/// γ(w) = C_w(a(w) ∪ b(w)); the worker-order join among firm-quasi-stable
/// matchings. Throws Error(kNotFirmQuasiStable).
Matching gamma_join(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts = {});

/// {w : f ∈ C_w(F_w^μ)} ∪ μ(f)
AgentSet firm_b_set(const Market& m, const Matching& mu, AgentIndex f);
/// {f : w ∈ C_f(W_f^μ)} ∪ μ(w)
AgentSet worker_b_set(const Market& m, const Matching& mu, AgentIndex w);

/// T^F[μ](f) = C_f(B_f^μ). Throws Error(kNotWorkerQuasiStable).
Matching firm_step(const Market& m, const Matching& mu, const TarskiOptions& opts = {});
/// T^W[μ](w) = C_w(B_w^μ). Throws Error(kNotFirmQuasiStable).
Matching worker_step(const Market& m, const Matching& mu, const TarskiOptions& opts = {});

struct TraceStep {
  std::size_t blocking_pairs = 0;
  /// Against the previous matching, in the operator's improvement order.
  /// Both false for the starting matching.
  bool weakly_improves = false;
  bool strictly_improves = false;
};

struct OperatorTrace {
  Side side = Side::kFirms;
  /// μ_0, ..., μ_k with μ_k a fixed point.
  std::vector<Matching> matchings;
  std::vector<TraceStep> diagnostics;

  std::size_t steps() const { return matchings.size() - 1; }
  const Matching& fixed_point() const { return matchings.back(); }
};

/// 2·|F|·|W|·L + 1 with L the longest choice list in the market.
std::size_t iteration_cap(const Market& m);

/// Applies the side's operator until it stops moving. Throws
/// Error(kNonConvergence) past the cap, which only happens when a choice
/// function violates the axioms.
OperatorTrace iterate_to_fixed_point(const Market& m, const Matching& mu, Side side,
                                     const TarskiOptions& opts = {});

/// Lattice operations on the stable set. Throw Error(kNotStable).
Matching stable_join_firms(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts = {});
Matching stable_meet_firms(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts = {});
/// The worker-order join is the firm meet, and vice versa.
Matching stable_join_workers(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts = {});
Matching stable_meet_workers(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts = {});

Matching stable_join(const Market& m, Side side, const Matching& a, const Matching& b,
                     const TarskiOptions& opts = {});
Matching stable_meet(const Market& m, Side side, const Matching& a, const Matching& b,
                     const TarskiOptions& opts = {});

struct ExtremalResult {
  Matching matching;
  /// True when the enumerated stable set confirmed the result as the
  /// side-optimal stable matching. Otherwise it is only known to be a
  /// stable matching reached from the empty matching.
  bool verified_optimal = false;
};

/// Iterates the opposite side's operator from the empty matching: worker
/// proposals (T^W) settle at the firm-optimal matching and vice versa. When
/// `verify_within` is given and the market fits it, the result is checked
/// against a fold of the stable joins over the enumerated stable set.
/// Defined in oracle.cpp.
ExtremalResult extremal_stable(const Market& m, Side side, const TarskiOptions& opts = {},
                               const EnumerationBudget* verify_within = nullptr);

}  // namespace stablelat

#endif  // STABLELAT_TARSKI_HPP_

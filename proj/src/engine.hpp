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

#ifndef STABLELAT_SRC_ENGINE_HPP_
#define STABLELAT_SRC_ENGINE_HPP_

// Side-symmetric core of the substitutable many-to-many model. Everything
// here is written from the firms' point of view; the workers' versions are
// obtained by swapping the view and transposing the matching.

#include <span>

#include "stablelat/choice.hpp"
#include "stablelat/market.hpp"
#include "stablelat/matching.hpp"
#include "stablelat/stability.hpp"

namespace stablelat::engine {

struct SideView {
  std::span<const ChoiceFunction> firms;
  std::span<const ChoiceFunction> workers;
};

inline SideView firm_view(const Market& m) { return {m.firm_choices(), m.worker_choices()}; }
inline SideView worker_view(const Market& m) { return {m.worker_choices(), m.firm_choices()}; }

/// {f : w ∈ C_f(μ(f) ∪ {w})}
AgentSet willing_firms(SideView v, const Matching& mu, AgentIndex w);

bool firms_rational(SideView v, const Matching& mu);

/// Individually rational, and μ(w) ⊆ C_w(μ(w) ∪ T) for every worker and
/// every T ⊆ F_w^μ.
bool worker_quasi_stable(SideView v, const Matching& mu, const QuasiCheckOptions& opts);

/// {w : f ∈ C_w(F_w^μ)} ∪ μ(f)
AgentSet b_set(SideView v, const Matching& mu, AgentIndex f);

/// One application of the lay-off operator: every firm chooses from its
/// B-set.
Matching firm_step(SideView v, const Matching& mu);

/// λ(f) = C_f(a(f) ∪ b(f)).
Matching lambda(SideView v, const Matching& a, const Matching& b);

/// a ≽ b in Blair's order for the firms of the view.
bool blair_geq(SideView v, const Matching& a, const Matching& b);

}  // namespace stablelat::engine

#endif  // STABLELAT_SRC_ENGINE_HPP_

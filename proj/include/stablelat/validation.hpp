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

#ifndef STABLELAT_VALIDATION_HPP_
#define STABLELAT_VALIDATION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablelat/choice.hpp"
#include "stablelat/market.hpp"

namespace stablelat {

inline constexpr std::size_t kDefaultExhaustiveCap = 14;

enum class Axiom { kSubstitutable, kConsistent, kPathIndependent };

std::string_view to_string(Axiom a);

/// A counterexample to one axiom.
///  - substitutability: inner ⊆ outer and `agent` ∈ C(outer) ∩ inner but
///    `agent` ∉ C(inner);
///  - consistency: C(outer) ⊆ inner ⊆ outer but C(inner) ≠ C(outer);
///  - path independence: C(outer ∪ inner) ≠ C(C(outer) ∪ inner).
struct Witness {
  AgentSet outer;
  AgentSet inner;
  std::optional<AgentIndex> agent;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct AxiomCheck {
  Axiom axiom = Axiom::kSubstitutable;
  std::optional<Witness> witness;  // empty on pass

  bool passed() const { return !witness.has_value(); }
};

/// Exhaustive checks over the ground set. The first witness found is
/// reported: outer sets in increasing mask order, then inner sets in
/// increasing mask order. Ground sets larger than `cap` raise
/// Error(kCapExceeded).
AxiomCheck validate_substitutable(const ChoiceFunction& c, std::size_t cap = kDefaultExhaustiveCap);
AxiomCheck validate_consistent(const ChoiceFunction& c, std::size_t cap = kDefaultExhaustiveCap);
AxiomCheck validate_path_independent(const ChoiceFunction& c, std::size_t cap = kDefaultExhaustiveCap);

struct ValidationIssue {
  std::string agent;  // empty for market-wide issues
  std::string kind;   // axiom name, "ReferentialIntegrity", "CapExceeded", ...
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
};

/// Runs all three axiom checks on every choice function of the market.
/// Choice functions over ground sets beyond `cap` are reported as
/// "CapExceeded" issues rather than skipped.
ValidationReport validate_market(const Market& m, std::size_t cap = kDefaultExhaustiveCap);

}  // namespace stablelat

#endif  // STABLELAT_VALIDATION_HPP_

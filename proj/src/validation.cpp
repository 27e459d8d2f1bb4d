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

#include "stablelat/validation.hpp"

#include <sstream>

#include "stablelat/error.hpp"

namespace stablelat {

std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::kSubstitutable: return "Substitutable";
    case Axiom::kConsistent: return "Consistent";
    case Axiom::kPathIndependent: return "PathIndependent";
  }
  return "Unknown";
}

namespace {

// C(S) for every S ⊆ ground, indexed by mask.
std::vector<AgentSet> tabulate(const ChoiceFunction& c, std::size_t cap) {
  const std::size_t n = c.ground_size();
  if (n > cap) {
    std::ostringstream msg;
    msg << "ground set of " << n << " agents exceeds the exhaustive-validation cap of " << cap;
    throw Error(ErrorCode::kCapExceeded, msg.str());
  }
  std::vector<AgentSet> table(std::size_t{1} << n);
  for (std::size_t s = 0; s < table.size(); ++s) table[s] = c.choose_unchecked(AgentSet(s));
  return table;
}

}  // namespace

AxiomCheck validate_substitutable(const ChoiceFunction& c, std::size_t cap) {
  const auto table = tabulate(c, cap);
  AxiomCheck out{Axiom::kSubstitutable, std::nullopt};
  for (std::size_t s = 0; s < table.size() && !out.witness; ++s) {
    const AgentSet outer(s);
    const AgentSet chosen = table[s];
    if (chosen.empty()) continue;
    all_subsets(outer, [&](AgentSet inner) {
      const AgentSet lost = (chosen & inner) - table[inner.bits()];
      if (lost.empty()) return true;
      out.witness = Witness{outer, inner, lost.front()};
      return false;
    });
  }
  return out;
}

AxiomCheck validate_consistent(const ChoiceFunction& c, std::size_t cap) {
  const auto table = tabulate(c, cap);
  AxiomCheck out{Axiom::kConsistent, std::nullopt};
  for (std::size_t s = 0; s < table.size() && !out.witness; ++s) {
    const AgentSet outer(s);
    const AgentSet chosen = table[s];
    // inner ranges over chosen ∪ (any subset of outer - chosen).
    all_subsets(outer - chosen, [&](AgentSet extra) {
      const AgentSet inner = chosen | extra;
      if (table[inner.bits()] == chosen) return true;
      out.witness = Witness{outer, inner, std::nullopt};
      return false;
    });
  }
  return out;
}

AxiomCheck validate_path_independent(const ChoiceFunction& c, std::size_t cap) {
  const auto table = tabulate(c, cap);
  AxiomCheck out{Axiom::kPathIndependent, std::nullopt};
  for (std::size_t s = 0; s < table.size() && !out.witness; ++s) {
    const AgentSet chosen = table[s];
    for (std::size_t t = 0; t < table.size(); ++t) {
      const AgentSet lhs = table[s | t];
      const AgentSet rhs = table[(chosen | AgentSet(t)).bits()];
      if (lhs != rhs) {
        out.witness = Witness{AgentSet(s), AgentSet(t), std::nullopt};
        break;
      }
    }
  }
  return out;
}

namespace {

std::string describe(const Witness& w, const std::vector<std::string>& names) {
  auto render = [&](AgentSet s) {
    std::string out = "{";
    bool first = true;
    for (AgentIndex a : s) {
      if (!first) out += ",";
      out += names[a];
      first = false;
    }
    return out + "}";
  };
  std::string out = "S=" + render(w.outer) + " S'=" + render(w.inner);
  if (w.agent) out += " agent=" + names[*w.agent];
  return out;
}

void check_choice(const ChoiceFunction& c, const std::string& owner, const std::vector<std::string>& ground_names,
                  std::size_t cap, ValidationReport& report) {
  if (c.ground_size() > cap) {
    std::ostringstream msg;
    msg << "ground set of " << c.ground_size() << " exceeds the exhaustive cap " << cap;
    report.issues.push_back({owner, "CapExceeded", msg.str()});
    return;
  }
  for (const AxiomCheck& check :
       {validate_substitutable(c, cap), validate_consistent(c, cap), validate_path_independent(c, cap)}) {
    if (!check.passed()) {
      report.issues.push_back({owner, std::string(to_string(check.axiom)), describe(*check.witness, ground_names)});
    }
  }
}

}  // namespace

ValidationReport validate_market(const Market& m, std::size_t cap) {
  ValidationReport report;
  for (AgentIndex f = 0; f < m.firm_count(); ++f) {
    check_choice(m.firm_choice(f), m.firm_name(f), m.worker_names(), cap, report);
  }
  // Linear and responsive workers are substitutable by construction.
  if (m.variant() == MarketVariant::kManyToManySub) {
    for (AgentIndex w = 0; w < m.worker_count(); ++w) {
      check_choice(m.worker_choice(w), m.worker_name(w), m.firm_names(), cap, report);
    }
  }
  return report;
}

}  // namespace stablelat

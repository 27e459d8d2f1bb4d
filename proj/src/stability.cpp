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

#include "stablelat/stability.hpp"

#include <optional>
#include <sstream>

#include "engine.hpp"
#include "stablelat/error.hpp"

namespace stablelat {

std::string_view to_string(BlockReason r) {
  switch (r) {
    case BlockReason::kPrefersToPartner: return "prefers_to_partner";
    case BlockReason::kReplacesPartner: return "replaces_partner";
    case BlockReason::kFillsVacancy: return "fills_vacancy";
    case BlockReason::kMutuallyChosen: return "mutually_chosen";
  }
  return "unknown";
}

namespace {

std::optional<AgentIndex> sole_partner(AgentSet s) {
  if (s.empty()) return std::nullopt;
  return s.front();
}

void require_linear(const Market& m) {
  if (m.variant() != MarketVariant::kManyToOne) {
    throw Error(ErrorCode::kInvalidArgument, "the unanimous worker order is defined for many-to-one markets only");
  }
}

}  // namespace

void check_matching(const Market& m, const Matching& mu) {
  if (mu.firm_count() != m.firm_count() || mu.worker_count() != m.worker_count()) {
    throw Error(ErrorCode::kSchemaError, "matching does not have the market's shape");
  }
  if (m.variant() == MarketVariant::kManyToManySub) return;
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    if (mu.of_worker(w).size() > m.worker_quota(w)) {
      std::ostringstream msg;
      msg << "worker " << m.worker_name(w) << " is matched to " << mu.of_worker(w).size()
          << " firms but may hold at most " << m.worker_quota(w);
      throw Error(ErrorCode::kSchemaError, msg.str());
    }
  }
}

bool blocked_by_firm(const Market& m, const Matching& mu, AgentIndex f) {
  return m.firm_choice(f).choose(mu.of_firm(f)) != mu.of_firm(f);
}

bool blocked_by_worker(const Market& m, const Matching& mu, AgentIndex w) {
  const AgentSet held = mu.of_worker(w);
  switch (m.variant()) {
    case MarketVariant::kManyToOne:
      return held.size() > 1 || m.worker_pref(w).prefers(std::nullopt, sole_partner(held));
    case MarketVariant::kManyToManyResponsive: {
      if (held.size() > m.worker_quota(w)) return true;
      for (AgentIndex f : held) {
        if (!m.worker_pref(w).acceptable(f)) return true;
      }
      return false;
    }
    case MarketVariant::kManyToManySub:
      return m.worker_choice(w).choose(held) != held;
  }
  return false;
}

bool is_individually_rational(const Market& m, const Matching& mu) {
  for (AgentIndex f = 0; f < m.firm_count(); ++f) {
    if (blocked_by_firm(m, mu, f)) return false;
  }
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    if (blocked_by_worker(m, mu, w)) return false;
  }
  return true;
}

std::vector<BlockingPair> blocking_pairs(const Market& m, const Matching& mu) {
  std::vector<BlockingPair> out;
  for (AgentIndex f = 0; f < m.firm_count(); ++f) {
    for (AgentIndex w = 0; w < m.worker_count(); ++w) {
      const AgentSet held = mu.of_worker(w);
      if (held.contains(f)) continue;
      if (!m.firm_choice(f).choose(mu.of_firm(f).with(w)).contains(w)) continue;

      switch (m.variant()) {
        case MarketVariant::kManyToOne:
          if (m.worker_pref(w).prefers(f, sole_partner(held))) out.push_back({f, w, BlockReason::kPrefersToPartner});
          break;
        case MarketVariant::kManyToManyResponsive: {
          const LinearPref& pref = m.worker_pref(w);
          if (held.size() == m.worker_quota(w)) {
            for (AgentIndex g : held) {
              if (pref.prefers(f, g)) {
                out.push_back({f, w, BlockReason::kReplacesPartner});
                break;
              }
            }
          } else if (held.size() < m.worker_quota(w) && pref.prefers(f, std::nullopt)) {
            out.push_back({f, w, BlockReason::kFillsVacancy});
          }
          break;
        }
        case MarketVariant::kManyToManySub:
          if (m.worker_choice(w).choose(held.with(f)).contains(f)) out.push_back({f, w, BlockReason::kMutuallyChosen});
          break;
      }
    }
  }
  return out;
}

bool is_stable(const Market& m, const Matching& mu) {
  return is_individually_rational(m, mu) && blocking_pairs(m, mu).empty();
}

AgentSet willing_firms(const Market& m, const Matching& mu, AgentIndex w) {
  return engine::willing_firms(engine::firm_view(m), mu, w);
}

AgentSet willing_workers(const Market& m, const Matching& mu, AgentIndex f) {
  if (m.variant() == MarketVariant::kManyToOne) {
    AgentSet out;
    for (AgentIndex w = 0; w < m.worker_count(); ++w) {
      if (m.worker_pref(w).weakly_prefers(f, sole_partner(mu.of_worker(w)))) out.insert(w);
    }
    return out;
  }
  return engine::willing_firms(engine::worker_view(m), mu.transposed(), f);
}

bool is_worker_quasi_stable(const Market& m, const Matching& mu, const QuasiCheckOptions& opts) {
  if (m.variant() == MarketVariant::kManyToOne) {
    if (!is_individually_rational(m, mu)) return false;
    for (const BlockingPair& bp : blocking_pairs(m, mu)) {
      if (!mu.of_worker(bp.worker).empty()) return false;
    }
    return true;
  }
  return engine::worker_quasi_stable(engine::firm_view(m), mu, opts);
}

bool is_firm_quasi_stable(const Market& m, const Matching& mu, const QuasiCheckOptions& opts) {
  if (m.variant() == MarketVariant::kManyToOne) {
    if (!is_individually_rational(m, mu)) return false;
    for (AgentIndex f = 0; f < m.firm_count(); ++f) {
      const AgentSet held = mu.of_firm(f);
      const AgentSet extra = willing_workers(m, mu, f) - held;
      const ChoiceFunction& choice = m.firm_choice(f);
      auto keeps = [&](AgentSet offered) { return held.subset_of(choice.choose(held | offered)); };
      if (extra.size() <= opts.exhaustive_cap) {
        if (!all_subsets(extra, keeps)) return false;
      } else if (opts.assume_substitutable) {
        if (!keeps(extra)) return false;
        for (AgentIndex w : extra) {
          if (!keeps(AgentSet::single(w))) return false;
        }
      } else {
        throw Error(ErrorCode::kCapExceeded, "firm-quasi-stability test exceeds the exhaustive cap");
      }
    }
    return true;
  }
  return engine::worker_quasi_stable(engine::worker_view(m), mu.transposed(), opts);
}

bool blair_geq_firms(const Market& m, const Matching& a, const Matching& b) {
  return engine::blair_geq(engine::firm_view(m), a, b);
}

bool blair_geq_workers(const Market& m, const Matching& a, const Matching& b) {
  return engine::blair_geq(engine::worker_view(m), a.transposed(), b.transposed());
}

bool unanimous_geq_workers(const Market& m, const Matching& a, const Matching& b) {
  require_linear(m);
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    if (!m.worker_pref(w).weakly_prefers(sole_partner(a.of_worker(w)), sole_partner(b.of_worker(w)))) return false;
  }
  return true;
}

bool worker_order_geq(const Market& m, const Matching& a, const Matching& b) {
  if (m.variant() == MarketVariant::kManyToOne) return unanimous_geq_workers(m, a, b);
  return blair_geq_workers(m, a, b);
}

}  // namespace stablelat

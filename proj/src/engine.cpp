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

#include "engine.hpp"

#include <sstream>

#include "stablelat/error.hpp"

namespace stablelat::engine {

AgentSet willing_firms(SideView v, const Matching& mu, AgentIndex w) {
  AgentSet out;
  for (AgentIndex f = 0; f < v.firms.size(); ++f) {
    if (v.firms[f].choose_unchecked(mu.of_firm(f).with(w)).contains(w)) out.insert(f);
  }
  return out;
}

bool firms_rational(SideView v, const Matching& mu) {
  for (AgentIndex f = 0; f < v.firms.size(); ++f) {
    if (v.firms[f].choose_unchecked(mu.of_firm(f)) != mu.of_firm(f)) return false;
  }
  return true;
}

bool worker_quasi_stable(SideView v, const Matching& mu, const QuasiCheckOptions& opts) {
  if (!firms_rational(v, mu)) return false;
  const Matching t = mu.transposed();
  if (!firms_rational({v.workers, v.firms}, t)) return false;

  for (AgentIndex w = 0; w < v.workers.size(); ++w) {
    const AgentSet held = mu.of_worker(w);
    const AgentSet extra = willing_firms(v, mu, w) - held;
    const ChoiceFunction& choice = v.workers[w];
    auto keeps = [&](AgentSet offered) { return held.subset_of(choice.choose_unchecked(held | offered)); };

    if (extra.size() <= opts.exhaustive_cap) {
      if (!all_subsets(extra, keeps)) return false;
    } else if (opts.assume_substitutable) {
      if (!keeps(extra)) return false;
      for (AgentIndex f : extra) {
        if (!keeps(AgentSet::single(f))) return false;
      }
    } else {
      std::ostringstream msg;
      msg << "quasi-stability test needs 2^" << extra.size() << " subsets (cap " << opts.exhaustive_cap
          << "); pass --assume-substitutable to use the substitutability shortcut";
      throw Error(ErrorCode::kCapExceeded, msg.str());
    }
  }
  return true;
}

AgentSet b_set(SideView v, const Matching& mu, AgentIndex f) {
  AgentSet out = mu.of_firm(f);
  for (AgentIndex w = 0; w < v.workers.size(); ++w) {
    if (v.workers[w].choose_unchecked(willing_firms(v, mu, w)).contains(f)) out.insert(w);
  }
  return out;
}

Matching firm_step(SideView v, const Matching& mu) {
  const std::size_t nf = v.firms.size();
  const std::size_t nw = v.workers.size();
  // Workers' picks over their willing firms are shared by every B-set.
  std::vector<AgentSet> picks(nw);
  for (AgentIndex w = 0; w < nw; ++w) picks[w] = v.workers[w].choose_unchecked(willing_firms(v, mu, w));

  std::vector<AgentSet> next(nf);
  for (AgentIndex f = 0; f < nf; ++f) {
    AgentSet b = mu.of_firm(f);
    for (AgentIndex w = 0; w < nw; ++w) {
      if (picks[w].contains(f)) b.insert(w);
    }
    next[f] = v.firms[f].choose_unchecked(b);
  }
  return Matching::from_firm_side(std::move(next), nw);
}

Matching lambda(SideView v, const Matching& a, const Matching& b) {
  std::vector<AgentSet> out(v.firms.size());
  for (AgentIndex f = 0; f < out.size(); ++f) out[f] = v.firms[f].choose_unchecked(a.of_firm(f) | b.of_firm(f));
  return Matching::from_firm_side(std::move(out), v.workers.size());
}

bool blair_geq(SideView v, const Matching& a, const Matching& b) {
  for (AgentIndex f = 0; f < v.firms.size(); ++f) {
    if (v.firms[f].choose_unchecked(a.of_firm(f) | b.of_firm(f)) != a.of_firm(f)) return false;
  }
  return true;
}

}  // namespace stablelat::engine

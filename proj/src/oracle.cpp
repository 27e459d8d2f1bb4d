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

#include "stablelat/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "stablelat/error.hpp"
#include "stablelat/validation.hpp"

namespace stablelat {

namespace {

using Options = std::vector<std::vector<AgentSet>>;

std::size_t worker_cardinality_limit(const Market& m, AgentIndex w) {
  return m.variant() == MarketVariant::kManyToManySub ? m.firm_count() : m.worker_quota(w);
}

Options all_options(const Market& m) {
  Options out(m.worker_count());
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    const std::size_t limit = worker_cardinality_limit(m, w);
    for_each_subset(m.all_firms(), [&](AgentSet s) {
      if (s.size() <= limit) out[w].push_back(s);
    });
  }
  return out;
}

// Worker assignments that survive individual rationality on the worker side.
Options rational_options(const Market& m) {
  Options out = all_options(m);
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    const ChoiceFunction& c = m.worker_choice(w);
    std::erase_if(out[w], [&](AgentSet s) { return c.choose(s) != s; });
  }
  return out;
}

std::uint64_t product(const Options& options) {
  std::uint64_t total = 1;
  for (const auto& o : options) {
    if (o.empty()) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / o.size()) return std::numeric_limits<std::uint64_t>::max();
    total *= o.size();
  }
  return total;
}

void check_visits(const Options& options, const EnumerationBudget& budget) {
  const std::uint64_t total = product(options);
  if (total > budget.max_matchings) {
    std::ostringstream msg;
    msg << "enumeration would visit " << total << " matchings (budget " << budget.max_matchings << ")";
    throw Error(ErrorCode::kBudgetExceeded, msg.str());
  }
}

void odometer(std::size_t firm_count, const Options& options, const std::function<void(const Matching&)>& visit) {
  const std::size_t n = options.size();
  std::vector<std::size_t> digit(n, 0);
  std::vector<AgentSet> sets(n);
  for (std::size_t w = 0; w < n; ++w) sets[w] = options[w].front();
  for (;;) {
    visit(Matching::from_worker_side(firm_count, sets));
    std::size_t w = n;
    while (w > 0) {
      --w;
      if (++digit[w] < options[w].size()) {
        sets[w] = options[w][digit[w]];
        break;
      }
      digit[w] = 0;
      sets[w] = options[w].front();
      if (w == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<Matching> filtered(const Market& m, const EnumerationBudget& budget,
                               const std::function<bool(const Matching&)>& keep) {
  const Options options = rational_options(m);
  check_visits(options, budget);
  std::vector<Matching> out;
  odometer(m.firm_count(), options, [&](const Matching& mu) {
    if (keep(mu)) out.push_back(mu);
  });
  return out;
}

}  // namespace

std::uint64_t count_matchings(const Market& m) { return product(all_options(m)); }

void for_each_matching(const Market& m, const EnumerationBudget& budget,
                       const std::function<void(const Matching&)>& visit) {
  if (m.firm_count() > budget.max_firms || m.worker_count() > budget.max_workers) {
    std::ostringstream msg;
    msg << "market has " << m.firm_count() << " firms and " << m.worker_count() << " workers; full enumeration allows "
        << budget.max_firms << " and " << budget.max_workers;
    throw Error(ErrorCode::kBudgetExceeded, msg.str());
  }
  const Options options = all_options(m);
  check_visits(options, budget);
  odometer(m.firm_count(), options, visit);
}

std::vector<Matching> enumerate_matchings(const Market& m, const EnumerationBudget& budget) {
  std::vector<Matching> out;
  for_each_matching(m, budget, [&](const Matching& mu) { out.push_back(mu); });
  return out;
}

std::vector<Matching> enumerate_stable(const Market& m, const EnumerationBudget& budget) {
  return filtered(m, budget, [&](const Matching& mu) { return is_stable(m, mu); });
}

std::vector<Matching> enumerate_quasi_stable(const Market& m, Side side, const EnumerationBudget& budget,
                                             const QuasiCheckOptions& opts) {
  if (side == Side::kWorkers) {
    return filtered(m, budget, [&](const Matching& mu) { return is_worker_quasi_stable(m, mu, opts); });
  }
  return filtered(m, budget, [&](const Matching& mu) { return is_firm_quasi_stable(m, mu, opts); });
}

std::optional<Matching> brute_join(const Market& m, Side order, const Matching& a, const Matching& b,
                                   std::span<const Matching> universe) {
  std::vector<const Matching*> upper;
  for (const Matching& t : universe) {
    if (side_geq(m, order, t, a) && side_geq(m, order, t, b)) upper.push_back(&t);
  }
  for (const Matching* u : upper) {
    if (std::all_of(upper.begin(), upper.end(), [&](const Matching* t) { return side_geq(m, order, *t, *u); })) {
      return *u;
    }
  }
  return std::nullopt;
}

std::optional<Matching> brute_meet(const Market& m, Side order, const Matching& a, const Matching& b,
                                   std::span<const Matching> universe) {
  std::vector<const Matching*> lower;
  for (const Matching& t : universe) {
    if (side_geq(m, order, a, t) && side_geq(m, order, b, t)) lower.push_back(&t);
  }
  for (const Matching* l : lower) {
    if (std::all_of(lower.begin(), lower.end(), [&](const Matching* t) { return side_geq(m, order, *l, *t); })) {
      return *l;
    }
  }
  return std::nullopt;
}

namespace {

using Table = std::vector<std::vector<bool>>;

Table order_table(const Market& m, Side side, const std::vector<Matching>& set) {
  Table geq(set.size(), std::vector<bool>(set.size()));
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) geq[i][j] = side_geq(m, side, set[i], set[j]);
  }
  return geq;
}

bool is_partial_order(const Table& geq) {
  const std::size_t n = geq.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!geq[i][i]) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && geq[i][j] && geq[j][i]) return false;
      if (!geq[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (geq[j][k] && !geq[i][k]) return false;
      }
    }
  }
  return true;
}

std::optional<std::size_t> least_upper(const Table& geq, std::size_t a, std::size_t b) {
  const std::size_t n = geq.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (!geq[u][a] || !geq[u][b]) continue;
    bool least = true;
    for (std::size_t t = 0; t < n && least; ++t) {
      if (geq[t][a] && geq[t][b] && !geq[t][u]) least = false;
    }
    if (least) return u;
  }
  return std::nullopt;
}

std::optional<std::size_t> greatest_lower(const Table& geq, std::size_t a, std::size_t b) {
  const std::size_t n = geq.size();
  for (std::size_t l = 0; l < n; ++l) {
    if (!geq[a][l] || !geq[b][l]) continue;
    bool greatest = true;
    for (std::size_t t = 0; t < n && greatest; ++t) {
      if (geq[a][t] && geq[b][t] && !geq[l][t]) greatest = false;
    }
    if (greatest) return l;
  }
  return std::nullopt;
}

bool agrees(const std::vector<Matching>& set, const std::optional<std::size_t>& expected, const Matching& got) {
  return expected && set[*expected] == got;
}

}  // namespace

LatticeReport verify_lattice(const Market& m, const EnumerationBudget& budget, const TarskiOptions& opts) {
  LatticeReport r;
  r.stable = enumerate_stable(m, budget);
  const Table firm = order_table(m, Side::kFirms, r.stable);
  const Table worker = order_table(m, Side::kWorkers, r.stable);
  r.firm_order_is_partial_order = is_partial_order(firm);
  r.worker_order_is_partial_order = is_partial_order(worker);

  r.order_duality = true;
  for (std::size_t i = 0; i < r.stable.size(); ++i) {
    for (std::size_t j = 0; j < r.stable.size(); ++j) {
      if (firm[i][j] != worker[j][i]) r.order_duality = false;
    }
  }

  r.firm_lattice = r.worker_lattice = r.operation_duality = r.tarski_agreement = true;
  for (std::size_t i = 0; i < r.stable.size(); ++i) {
    for (std::size_t j = i; j < r.stable.size(); ++j) {
      LatticePair p;
      p.a = i;
      p.b = j;
      p.join_firms = least_upper(firm, i, j);
      p.meet_firms = greatest_lower(firm, i, j);
      p.join_workers = least_upper(worker, i, j);
      p.meet_workers = greatest_lower(worker, i, j);
      if (!p.join_firms || !p.meet_firms) r.firm_lattice = false;
      if (!p.join_workers || !p.meet_workers) r.worker_lattice = false;
      if (p.join_firms != p.meet_workers || p.meet_firms != p.join_workers) r.operation_duality = false;

      const Matching& a = r.stable[i];
      const Matching& b = r.stable[j];
      p.tarski_agrees = agrees(r.stable, p.join_firms, stable_join_firms(m, a, b, opts)) &&
                        agrees(r.stable, p.meet_firms, stable_meet_firms(m, a, b, opts)) &&
                        agrees(r.stable, p.join_workers, stable_join_workers(m, a, b, opts)) &&
                        agrees(r.stable, p.meet_workers, stable_meet_workers(m, a, b, opts));
      if (!p.tarski_agrees) r.tarski_agreement = false;
      r.pairs.push_back(p);
    }
  }
  return r;
}

ExtremalResult extremal_stable(const Market& m, Side side, const TarskiOptions& opts,
                               const EnumerationBudget* verify_within) {
  const Side proposer = side == Side::kFirms ? Side::kWorkers : Side::kFirms;
  ExtremalResult out{
      iterate_to_fixed_point(m, Matching(m.firm_count(), m.worker_count()), proposer, opts).fixed_point(), false};
  if (verify_within == nullptr) return out;

  std::vector<Matching> stable;
  try {
    stable = enumerate_stable(m, *verify_within);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudgetExceeded) return out;
    throw;
  }
  if (stable.empty()) return out;
  Matching best = stable.front();
  for (std::size_t i = 1; i < stable.size(); ++i) best = stable_join(m, side, best, stable[i], opts);
  out.verified_optimal = best == out.matching;
  return out;
}

namespace {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so bounded draws and shuffles are done by hand.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
      const std::uint64_t x = gen_();
      if (x < limit) return x % n;
    }
  }

  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  bool chance(double p) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return u < p;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<AgentIndex> acceptable_draw(PortableRng& rng, std::size_t n, double density) {
  std::vector<AgentIndex> out;
  for (AgentIndex a = 0; a < n; ++a) {
    if (rng.chance(density)) out.push_back(a);
  }
  rng.shuffle(out);
  return out;
}

ChoiceFunction random_quota_linear(PortableRng& rng, std::size_t n, double density, std::size_t max_quota) {
  std::vector<AgentIndex> order = acceptable_draw(rng, n, density);
  const std::size_t quota = rng.between(1, std::max<std::size_t>(1, max_quota));
  return ChoiceFunction::quota_linear(n, std::move(order), quota);
}

// Strict partial order over the ground set as "above" bitmasks.
std::vector<AgentSet> random_partial_order(PortableRng& rng, const std::vector<AgentIndex>& acceptable, std::size_t n) {
  std::vector<AgentIndex> perm = acceptable;
  rng.shuffle(perm);
  std::vector<AgentSet> above(n);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (rng.chance(0.5)) above[perm[j]].insert(perm[i]);
    }
  }
  for (std::size_t j = 0; j < perm.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (above[perm[j]].contains(perm[i])) above[perm[j]] = above[perm[j]] | above[perm[i]];
    }
  }
  return above;
}

std::optional<ChoiceFunction> try_set_list(PortableRng& rng, std::size_t n, double density, std::size_t max_orders) {
  const std::vector<AgentIndex> acceptable = acceptable_draw(rng, n, density);
  AgentSet acc;
  for (AgentIndex a : acceptable) acc.insert(a);
  const std::size_t k = rng.between(1, std::max<std::size_t>(1, max_orders));
  std::vector<std::vector<AgentSet>> orders;
  for (std::size_t i = 0; i < k; ++i) orders.push_back(random_partial_order(rng, acceptable, n));

  auto target = [&](AgentSet s) {
    AgentSet out;
    const AgentSet pool = s & acc;
    for (const auto& above : orders) {
      for (AgentIndex a : pool) {
        if ((above[a] & pool).empty()) out.insert(a);
      }
    }
    return out;
  };

  // Every listed set must come before any other listed set inside an offer
  // that picks it.
  std::vector<AgentSet> images;
  std::map<AgentSet, std::size_t> index;
  for_each_subset(acc, [&](AgentSet s) {
    const AgentSet y = target(s);
    if (!y.empty() && index.emplace(y, images.size()).second) images.push_back(y);
  });
  std::sort(images.begin(), images.end(), [](AgentSet a, AgentSet b) {
    return a.size() != b.size() ? a.size() > b.size() : a.bits() < b.bits();
  });
  for (std::size_t i = 0; i < images.size(); ++i) index[images[i]] = i;

  std::vector<std::vector<bool>> edge(images.size(), std::vector<bool>(images.size()));
  std::vector<std::size_t> indegree(images.size(), 0);
  for_each_subset(acc, [&](AgentSet s) {
    const AgentSet y = target(s);
    if (y.empty()) return;
    const std::size_t from = index[y];
    for (std::size_t to = 0; to < images.size(); ++to) {
      if (to != from && images[to].subset_of(s) && !edge[from][to]) {
        edge[from][to] = true;
        ++indegree[to];
      }
    }
  });

  std::vector<AgentSet> list;
  std::vector<bool> done(images.size(), false);
  for (std::size_t round = 0; round < images.size(); ++round) {
    std::size_t pick = images.size();
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!done[i] && indegree[i] == 0) {
        pick = i;
        break;
      }
    }
    if (pick == images.size()) return std::nullopt;
    done[pick] = true;
    list.push_back(images[pick]);
    for (std::size_t to = 0; to < images.size(); ++to) {
      if (edge[pick][to]) --indegree[to];
    }
  }

  ChoiceFunction c = ChoiceFunction::set_list(n, std::move(list));
  bool faithful = true;
  for_each_subset(AgentSet::first(n), [&](AgentSet s) {
    if (c.choose(s) != target(s)) faithful = false;
  });
  if (!faithful || !validate_substitutable(c).passed() || !validate_consistent(c).passed()) return std::nullopt;
  return c;
}

ChoiceFunction random_set_list(PortableRng& rng, std::size_t n, double density, const RandomMarketSpec& spec) {
  for (std::size_t attempt = 0; attempt < spec.retry_cap; ++attempt) {
    if (auto c = try_set_list(rng, n, density, spec.max_orders)) return *std::move(c);
  }
  throw Error(ErrorCode::kGenerationFailed, "no valid set-list choice function within the retry cap");
}

ChoiceFunction random_choice(PortableRng& rng, ChoiceKind kind, std::size_t n, std::size_t max_quota,
                             const RandomMarketSpec& spec) {
  if (kind == ChoiceKind::kQuotaLinear) return random_quota_linear(rng, n, spec.density, max_quota);
  return random_set_list(rng, n, spec.density, spec);
}

std::vector<std::string> names(char prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

Market random_market(std::uint64_t seed, const RandomMarketSpec& spec) {
  PortableRng rng(seed);
  const std::size_t nf = spec.firms;
  const std::size_t nw = spec.workers;
  std::vector<ChoiceFunction> firms;
  for (std::size_t f = 0; f < nf; ++f) firms.push_back(random_choice(rng, spec.firm_kind, nw, spec.max_firm_quota, spec));

  switch (spec.variant) {
    case MarketVariant::kManyToOne: {
      std::vector<LinearPref> prefs;
      for (std::size_t w = 0; w < nw; ++w) prefs.emplace_back(nf, acceptable_draw(rng, nf, spec.density));
      return Market::many_to_one(names('f', nf), names('w', nw), std::move(firms), std::move(prefs));
    }
    case MarketVariant::kManyToManyResponsive: {
      std::vector<LinearPref> prefs;
      std::vector<std::size_t> quotas;
      for (std::size_t w = 0; w < nw; ++w) {
        prefs.emplace_back(nf, acceptable_draw(rng, nf, spec.density));
        quotas.push_back(rng.between(1, std::max<std::size_t>(1, spec.max_worker_quota)));
      }
      return Market::many_to_many_responsive(names('f', nf), names('w', nw), std::move(firms), std::move(prefs),
                                             std::move(quotas));
    }
    case MarketVariant::kManyToManySub: {
      std::vector<ChoiceFunction> workers;
      for (std::size_t w = 0; w < nw; ++w) {
        workers.push_back(random_choice(rng, spec.worker_kind, nf, spec.max_worker_quota, spec));
      }
      return Market::many_to_many_sub(names('f', nf), names('w', nw), std::move(firms), std::move(workers));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown market variant");
}

}  // namespace stablelat

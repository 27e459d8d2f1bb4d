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

// Acceptance runner: one line per criterion, PASS or FAIL, with the first
// failing sub-check and the elapsed time. Ground truth for the sweeps comes
// from the naive reference implementation in tests/support.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fixtures.hpp"
#include "reference.hpp"
#include "stablelat/error.hpp"
#include "stablelat/io.hpp"
#include "stablelat/oracle.hpp"
#include "stablelat/replica.hpp"
#include "stablelat/stability.hpp"
#include "stablelat/tarski.hpp"
#include "stablelat/validation.hpp"

using namespace stablelat;

namespace {

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
  const std::string& notes() const { return notes_; }
  bool passed() const { return failures_.empty(); }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

// Draws seeded markets until at least `total` were visited and at least
// `rich` of them have two or more stable matchings. Returns the seeds used.
struct Sample {
  std::vector<std::uint64_t> seeds;
  std::size_t rich = 0;
};

Sample draw(const std::function<Market(std::uint64_t)>& make, std::size_t total, std::size_t rich,
            std::uint64_t seed_cap) {
  Sample out;
  for (std::uint64_t seed = 0; seed < seed_cap && (out.seeds.size() < total || out.rich < rich); ++seed) {
    const Market m = make(seed);
    const ref::Market naive = ref::from_library(m);
    std::size_t stable = 0;
    for (const auto& r : ref::all_matchings(naive)) stable += ref::stable(naive, r) ? 1 : 0;
    if (out.seeds.size() >= total && stable < 2) continue;
    out.seeds.push_back(seed);
    if (stable >= 2) ++out.rich;
  }
  return out;
}

Market many_to_one_market(std::uint64_t seed) {
  RandomMarketSpec spec;
  spec.variant = MarketVariant::kManyToOne;
  spec.firms = 3;
  spec.workers = 4;
  switch (seed % 3) {
    case 0: spec.firm_kind = ChoiceKind::kSetList; spec.density = 0.75; break;
    case 1: spec.firm_kind = ChoiceKind::kQuotaLinear; spec.density = 1.0; break;
    default: spec.firm_kind = ChoiceKind::kQuotaLinear; spec.max_firm_quota = 1; spec.density = 1.0; break;
  }
  return random_market(seed, spec);
}

Market substitutable_market(std::uint64_t seed) {
  RandomMarketSpec spec;
  spec.variant = MarketVariant::kManyToManySub;
  spec.firms = 3;
  spec.workers = 3;
  spec.max_firm_quota = 2;
  spec.max_worker_quota = 2;
  switch (seed % 3) {
    case 0: spec.worker_kind = ChoiceKind::kSetList; spec.density = 0.8; break;
    case 1:
      spec.worker_kind = ChoiceKind::kQuotaLinear;
      spec.max_firm_quota = 1;
      spec.max_worker_quota = 1;
      spec.density = 1.0;
      break;
    default:
      spec.firm_kind = ChoiceKind::kSetList;
      spec.worker_kind = ChoiceKind::kQuotaLinear;
      spec.density = 1.0;
      break;
  }
  return random_market(seed, spec);
}

Market responsive_market(std::uint64_t seed) {
  RandomMarketSpec spec;
  spec.variant = MarketVariant::kManyToManyResponsive;
  spec.firms = 3;
  spec.workers = 3;
  spec.max_firm_quota = 2;
  spec.max_worker_quota = 2;
  switch (seed % 3) {
    case 0: spec.firm_kind = ChoiceKind::kSetList; spec.density = 0.75; break;
    case 1: spec.firm_kind = ChoiceKind::kQuotaLinear; spec.density = 1.0; break;
    default: spec.firm_kind = ChoiceKind::kQuotaLinear; spec.max_firm_quota = 1; spec.density = 1.0; break;
  }
  return random_market(seed, spec);
}

bool has_pair(const std::vector<BlockingPair>& pairs, AgentIndex f, AgentIndex w) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const BlockingPair& p) { return p.firm == f && p.worker == w; });
}

std::vector<ref::Matching> ref_filter(const ref::Market& m, const std::function<bool(const ref::Matching&)>& keep) {
  std::vector<ref::Matching> out;
  for (const auto& r : ref::all_matchings(m)) {
    if (keep(r)) out.push_back(r);
  }
  return out;
}

std::string seed_tag(const char* what, std::uint64_t seed) {
  return std::string(what) + " (seed " + std::to_string(seed) + ")";
}

void example_one(Checks& c) {
  const MarketDocument doc = load_market_document(fixtures::source_path("assets/example1.json"));
  const Market& m = doc.market;
  const Matching under = load_matching(fixtures::source_path("assets/example1/mu_under.json"), m);
  const Matching over = load_matching(fixtures::source_path("assets/example1/mu_over.json"), m);
  const Matching lambda = lambda_join(m, under, over);
  const Matching gamma = gamma_join(m, under, over);
  c.expect(lambda == doc.matching("lambda"), "lambda equals the boxed matching");
  c.expect(gamma == doc.matching("gamma"), "gamma equals the circled matching");
  c.expect(has_pair(blocking_pairs(m, lambda), 2, 0), "(f3,w1) blocks lambda");
  c.expect(has_pair(blocking_pairs(m, gamma), 0, 4), "(f1,w5) blocks gamma");
  c.expect(firm_step(m, lambda) == doc.matching("mu_star"), "T^F[lambda] = mu*");
  c.expect(worker_step(m, gamma) == doc.matching("mu_dagger"), "T^W[gamma] = mu-dagger");

  const ref::Market naive = ref::from_library(m);
  c.expect(ref::firm_step(naive, ref::from_library(lambda)) == ref::from_library(doc.matching("mu_star")),
           "reference T^F[lambda] = mu*");
  c.expect(ref::worker_step(naive, ref::from_library(gamma)) == ref::from_library(doc.matching("mu_dagger")),
           "reference T^W[gamma] = mu-dagger");

  const OperatorTrace up = iterate_to_fixed_point(m, lambda, Side::kFirms);
  const OperatorTrace down = iterate_to_fixed_point(m, gamma, Side::kWorkers);
  c.expect(up.steps() == 1 && up.fixed_point() == doc.matching("mu_star"), "firm iteration is fixed after one step");
  c.expect(down.steps() == 1 && down.fixed_point() == doc.matching("mu_dagger"),
           "worker iteration is fixed after one step");
  c.expect(stable_join_firms(m, under, over) == doc.matching("mu_star"), "stable_join_firms = mu*");
  c.expect(stable_meet_firms(m, under, over) == doc.matching("mu_dagger"), "stable_meet_firms = mu-dagger");
}

void example_two(Checks& c) {
  const MarketDocument doc = load_market_document(fixtures::source_path("assets/example2.json"));
  const Market& m = doc.market;
  const Matching under = load_matching(fixtures::source_path("assets/example2/mu_under.json"), m);
  const Matching over = load_matching(fixtures::source_path("assets/example2/mu_over.json"), m);
  const Matching& star = doc.matching("mu_star");
  const Matching lambda = lambda_join(m, under, over);
  c.expect(lambda == doc.matching("lambda"), "lambda equals the boxed matching");
  c.expect(has_pair(blocking_pairs(m, lambda), 0, 0), "(f1,w1) blocks lambda");
  const Matching once = firm_step(m, lambda);
  c.expect(once == doc.matching("circled"), "one step gives the circled matching");
  c.expect(has_pair(blocking_pairs(m, once), 1, 1), "(f2,w2) blocks the circled matching");
  c.expect(firm_step(m, once) == star, "two steps give mu*");
  bool first_choices = true;
  for (AgentIndex f = 0; f < m.firm_count(); ++f) {
    const auto* list = std::get_if<SetListChoice>(&m.firm_choice(f).rep());
    first_choices = first_choices && list && !list->list.empty() && star.of_firm(f) == list->list.front();
  }
  c.expect(first_choices, "every firm holds its first-listed set in mu*");
  c.expect(is_stable(m, star), "mu* is stable");
  c.expect(ref::stable(ref::from_library(m), ref::from_library(star)), "reference confirms mu* is stable");
  c.expect(stable_join_firms(m, under, over) == star, "stable_join_firms = mu*");
}

void lattice_sweep(Checks& c) {
  auto sweep = [&c](const Market& m, std::uint64_t seed, const char* kind) {
    const ref::Market naive = ref::from_library(m);
    const auto stable = ref_filter(naive, [&](const ref::Matching& r) { return ref::stable(naive, r); });
    const ref::Order firms = [&](const ref::Matching& x, const ref::Matching& y) { return ref::firm_geq(naive, x, y); };
    const ref::Order workers = [&](const ref::Matching& x, const ref::Matching& y) {
      return ref::worker_geq(naive, x, y);
    };
    c.expect(!stable.empty(), seed_tag(kind, seed) + ": stable set is nonempty");
    for (const auto& x : stable) {
      for (const auto& y : stable) {
        const Matching a = ref::to_library(x, naive.nw);
        const Matching b = ref::to_library(y, naive.nw);
        const Matching jf = stable_join_firms(m, a, b);
        const Matching mf = stable_meet_firms(m, a, b);
        const Matching jw = stable_join_workers(m, a, b);
        const Matching mw = stable_meet_workers(m, a, b);
        const ref::Matching* lub_f = ref::lub(stable, firms, x, y);
        const ref::Matching* glb_f = ref::glb(stable, firms, x, y);
        const ref::Matching* lub_w = ref::lub(stable, workers, x, y);
        const ref::Matching* glb_w = ref::glb(stable, workers, x, y);
        c.expect(lub_f && ref::from_library(jf) == *lub_f, seed_tag(kind, seed) + ": firm join = brute lub");
        c.expect(glb_f && ref::from_library(mf) == *glb_f, seed_tag(kind, seed) + ": firm meet = brute glb");
        c.expect(lub_w && ref::from_library(jw) == *lub_w, seed_tag(kind, seed) + ": worker join = brute lub");
        c.expect(glb_w && ref::from_library(mw) == *glb_w, seed_tag(kind, seed) + ": worker meet = brute glb");
        c.expect(jf == mw && mf == jw, seed_tag(kind, seed) + ": firm join = worker meet");
      }
    }
  };
  const Sample m2o = draw(many_to_one_market, 200, 80, 5000);
  for (std::uint64_t seed : m2o.seeds) sweep(many_to_one_market(seed), seed, "many-to-one");
  const Sample sub = draw(substitutable_market, 100, 50, 5000);
  for (std::uint64_t seed : sub.seeds) sweep(substitutable_market(seed), seed, "substitutable");
  c.expect(m2o.seeds.size() >= 200 && m2o.rich >= 80, "enough many-to-one markets");
  c.expect(sub.seeds.size() >= 100 && sub.rich >= 50, "enough substitutable markets");
  c.note(std::to_string(m2o.seeds.size()) + " many-to-one markets (" + std::to_string(m2o.rich) +
         " with several stable matchings), " + std::to_string(sub.seeds.size()) + " substitutable (" +
         std::to_string(sub.rich) + ")");
}

void operator_properties(Checks& c) {
  auto suite = [&c](const Market& m, std::uint64_t seed, const char* kind) {
    const ref::Market naive = ref::from_library(m);
    const auto all = ref::all_matchings(naive);
    std::set<ref::Matching> stable, qw, qf;
    for (const auto& r : all) {
      if (ref::stable(naive, r)) stable.insert(r);
      if (ref::worker_quasi_stable(naive, r)) qw.insert(r);
      if (ref::firm_quasi_stable(naive, r)) qf.insert(r);
    }
    const std::string tag = seed_tag(kind, seed);

    auto run_side = [&](const std::set<ref::Matching>& domain, Side side, const char* name) {
      auto geq = [&](const ref::Matching& x, const ref::Matching& y) {
        return side == Side::kFirms ? ref::firm_geq(naive, x, y) : ref::worker_geq(naive, x, y);
      };
      std::vector<ref::Matching> dom(domain.begin(), domain.end());
      std::vector<ref::Matching> image;
      std::set<ref::Matching> fixed;
      for (const auto& x : dom) {
        const Matching mu = ref::to_library(x, naive.nw);
        const ref::Matching t = ref::from_library(side == Side::kFirms ? firm_step(m, mu) : worker_step(m, mu));
        c.expect(domain.count(t) > 0, tag + ": " + name + " stays in its quasi-stable set");
        c.expect(geq(t, x), tag + ": " + name + " improves");
        if (t == x) fixed.insert(x);
        image.push_back(t);
      }
      for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = 0; j < dom.size(); ++j) {
          if (geq(dom[i], dom[j])) c.expect(geq(image[i], image[j]), tag + ": " + name + " is isotone");
        }
      }
      c.expect(fixed == stable, tag + ": " + name + " fixed points are the stable matchings");
    };
    run_side(qw, Side::kFirms, "T^F");
    run_side(qf, Side::kWorkers, "T^W");
  };
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomMarketSpec spec;
    spec.firms = 2 + seed % 2;
    spec.workers = 3;
    spec.density = 0.8;
    spec.firm_kind = seed % 2 == 0 ? ChoiceKind::kSetList : ChoiceKind::kQuotaLinear;
    suite(random_market(seed, spec), seed, "many-to-one");
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomMarketSpec spec;
    spec.variant = MarketVariant::kManyToManySub;
    spec.firms = 2;
    spec.workers = 2 + seed % 2;
    spec.density = 0.85;
    spec.firm_kind = ChoiceKind::kSetList;
    spec.worker_kind = seed % 3 == 0 ? ChoiceKind::kQuotaLinear : ChoiceKind::kSetList;
    suite(random_market(seed, spec), seed, "substitutable");
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomMarketSpec spec;
    spec.variant = MarketVariant::kManyToManyResponsive;
    spec.firms = 2;
    spec.workers = 3;
    spec.density = 0.8;
    spec.firm_kind = seed % 2 == 0 ? ChoiceKind::kSetList : ChoiceKind::kQuotaLinear;
    suite(random_market(seed, spec), seed, "responsive");
  }
}

void morphism(Checks& c) {
  const Sample sample = draw(responsive_market, 100, 50, 5000);
  c.expect(sample.seeds.size() >= 100 && sample.rich >= 50, "enough responsive markets");
  c.note(std::to_string(sample.seeds.size()) + " responsive markets (" + std::to_string(sample.rich) +
         " with several stable matchings)");
  for (std::uint64_t seed : sample.seeds) {
    const Market m = responsive_market(seed);
    const RelatedMarket rm = build_related_market(m);
    const std::string tag = seed_tag("responsive", seed);
    const ref::Market source = ref::from_library(m);
    const ref::Market related = ref::from_library(rm.related);

    bool onto = true;
    for (const auto& r : ref::all_matchings(source)) {
      const Matching nu = ref::to_library(r, source.nw);
      onto = onto && phi(rm, phi_preimage(rm, nu)) == nu;
    }
    c.expect(onto, tag + ": phi is onto all matchings");

    const auto stable = ref_filter(source, [&](const ref::Matching& r) { return ref::stable(source, r); });
    const auto stable_q = ref_filter(related, [&](const ref::Matching& r) { return ref::stable(related, r); });
    std::vector<ref::Matching> images;
    for (const auto& r : stable_q) images.push_back(ref::from_library(phi(rm, ref::to_library(r, related.nw))));
    const std::set<ref::Matching> image_set(images.begin(), images.end());
    c.expect(image_set == std::set<ref::Matching>(stable.begin(), stable.end()), tag + ": phi maps S^q onto S");
    c.expect(image_set.size() == stable_q.size(), tag + ": phi is injective on S^q");

    for (std::size_t i = 0; i < stable_q.size(); ++i) {
      for (std::size_t j = 0; j < stable_q.size(); ++j) {
        c.expect(ref::firm_geq(related, stable_q[i], stable_q[j]) == ref::firm_geq(source, images[i], images[j]),
                 tag + ": phi is an order isomorphism");
      }
    }

    const ref::Order firms = [&](const ref::Matching& x, const ref::Matching& y) { return ref::firm_geq(source, x, y); };
    const ref::Order workers = [&](const ref::Matching& x, const ref::Matching& y) {
      return ref::worker_geq(source, x, y);
    };
    for (const auto& x : stable) {
      for (const auto& y : stable) {
        const Matching a = ref::to_library(x, source.nw);
        const Matching b = ref::to_library(y, source.nw);
        const ref::Matching* lub_f = ref::lub(stable, firms, x, y);
        const ref::Matching* glb_f = ref::glb(stable, firms, x, y);
        const ref::Matching* lub_w = ref::lub(stable, workers, x, y);
        const ref::Matching* glb_w = ref::glb(stable, workers, x, y);
        c.expect(lub_f && ref::from_library(lifted_join_firms(rm, a, b)) == *lub_f, tag + ": lifted firm join");
        c.expect(glb_f && ref::from_library(lifted_meet_firms(rm, a, b)) == *glb_f, tag + ": lifted firm meet");
        c.expect(lub_w && ref::from_library(lifted_join_workers(rm, a, b)) == *lub_w, tag + ": lifted worker join");
        c.expect(glb_w && ref::from_library(lifted_meet_workers(rm, a, b)) == *glb_w, tag + ": lifted worker meet");
      }
    }
  }
}

bool validators_pass(const ChoiceFunction& f) {
  return validate_substitutable(f).passed() && validate_consistent(f).passed() &&
         validate_path_independent(f).passed();
}

bool reference_pass(const ChoiceFunction& f) {
  const ref::Choice naive = ref::from_library(f);
  const int n = static_cast<int>(f.ground_size());
  return ref::substitutable(naive, n) && ref::consistent(naive, n) && ref::path_independent(naive, n);
}

// A witness is genuine when the agent is chosen from the outer set, still
// offered in the inner set, and rejected there.
bool genuine(const ChoiceFunction& f, const Witness& w) {
  return w.agent && w.inner.subset_of(w.outer) && f.choose(w.outer).contains(*w.agent) &&
         w.inner.contains(*w.agent) && !f.choose(w.inner).contains(*w.agent);
}

void validation(Checks& c) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t q = 1; q <= n; ++q) {
      for (std::uint64_t rot = 0; rot < n; ++rot) {
        std::vector<AgentIndex> order;
        for (std::size_t k = 0; k + 1 < n || (k < n && rot % 2 == 0); ++k) order.push_back((k + rot) % n);
        const auto f = ChoiceFunction::quota_linear(n, order, q);
        c.expect(validators_pass(f) && reference_pass(f), "quota linear choice passes");
      }
    }
  }

  std::size_t extended = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomMarketSpec spec;
    spec.variant = MarketVariant::kManyToManySub;
    spec.firms = 2;
    spec.workers = 3;
    spec.firm_kind = ChoiceKind::kSetList;
    const Market m = random_market(seed, spec);
    for (const ChoiceFunction& base : m.firm_choices()) {
      if (!validators_pass(base)) continue;
      const ReplicaMap map({1 + seed % 2, 2, 1 + (seed / 2) % 2});
      const auto f = ChoiceFunction::q_extension(std::make_shared<const ChoiceFunction>(base), map.projection());
      c.expect(validators_pass(f) && reference_pass(f), seed_tag("q-extension passes", seed));
      ++extended;
    }
  }
  c.expect(extended >= 100, "at least 100 q-extensions checked");

  constexpr AgentIndex a = 0, b = 1, cc = 2;
  struct Case {
    ChoiceFunction f;
    Witness expected;
  };
  const std::vector<Case> cases = {
      {ChoiceFunction::set_list(2, {AgentSet::of({a, b}), AgentSet::of({a})}),
       Witness{AgentSet::of({a, b}), AgentSet::of({b}), b}},
      {ChoiceFunction::set_list(3, {AgentSet::of({a, b}), AgentSet::of({cc})}),
       Witness{AgentSet::of({a, b}), AgentSet::of({a}), a}},
      {ChoiceFunction::set_list(3, {AgentSet::of({a, cc}), AgentSet::of({b})}),
       Witness{AgentSet::of({a, cc}), AgentSet::of({a}), a}},
  };
  for (const Case& k : cases) {
    const AxiomCheck sub = validate_substitutable(k.f);
    c.expect(!sub.passed(), "violating list is rejected");
    c.expect(!ref::substitutable(ref::from_library(k.f), static_cast<int>(k.f.ground_size())),
             "reference rejects the violating list");
    c.expect(sub.witness && *sub.witness == k.expected, "witness matches the precomputed one");
    c.expect(sub.witness && genuine(k.f, *sub.witness), "witness is a genuine violation");
    c.expect(!validate_path_independent(k.f).passed(), "path independence is rejected");
  }
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  void (*body)(Checks&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "example 1 pipeline", 1.0, example_one},
      {2, "example 2 pipeline", 1.0, example_two},
      {3, "join and meet equal brute-force bounds", 60.0, lattice_sweep},
      {4, "operator properties on quasi-stable sets", 120.0, operator_properties},
      {5, "replica morphism", 60.0, morphism},
      {6, "choice function validators", 30.0, validation},
  };
  int failed = 0;
  for (const Criterion& k : criteria) {
    Checks checks;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      k.body(checks);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= k.limit_seconds;
    const bool ok = error.empty() && checks.passed() && in_time;
    std::ostringstream line;
    line << "criterion " << k.number << " (" << k.title << "): " << (ok ? "PASS" : "FAIL") << " [" << checks.count()
         << " checks, " << static_cast<long long>(seconds * 1000) << " ms, limit " << k.limit_seconds << " s]";
    if (!error.empty()) line << " error: " << error;
    if (!checks.passed()) {
      line << " failed " << checks.failures().size() << ", first: " << checks.failures().front();
    }
    if (!in_time) line << " over time";
    if (!checks.notes().empty()) line << " (" << checks.notes() << ")";
    std::printf("%s\n", line.str().c_str());
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

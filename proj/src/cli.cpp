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

#include "stablelat/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bundled_examples.hpp"
#include "stablelat/error.hpp"
#include "stablelat/io.hpp"
#include "stablelat/oracle.hpp"
#include "stablelat/replica.hpp"
#include "stablelat/stability.hpp"
#include "stablelat/tarski.hpp"
#include "stablelat/validation.hpp"

namespace stablelat::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What a command produced. `failure` marks a report that is itself a domain
// failure (validation or lattice checks), so the exit code is 1.
struct Report {
  Json result;
  std::string text;
  std::optional<std::pair<ErrorCode, std::string>> failure;
};

// ---------------------------------------------------------------- rendering

std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string pad(const std::string& s, std::size_t width) { return s + std::string(width - display_width(s), ' '); }

std::string names_of(AgentSet s, const std::vector<std::string>& names) {
  if (s.empty()) return "∅";
  std::string out;
  for (AgentIndex a : s) {
    if (!out.empty()) out += ",";
    out += names[a];
  }
  return out;
}

// Two rows: firms over their worker sets.
std::string render(const Matching& mu, const Market& m, const std::string& indent = "  ") {
  std::string top = indent;
  std::string bottom = indent;
  for (AgentIndex f = 0; f < m.firm_count(); ++f) {
    const std::string w = names_of(mu.of_firm(f), m.worker_names());
    const std::size_t width = std::max(display_width(m.firm_name(f)), display_width(w)) + 2;
    top += pad(m.firm_name(f), width);
    bottom += pad(w, width);
  }
  auto trim = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  std::string out = trim(top) + "\n" + trim(bottom) + "\n";
  AgentSet unmatched;
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    if (mu.of_worker(w).empty()) unmatched.insert(w);
  }
  if (!unmatched.empty()) out += indent + "unmatched workers: " + names_of(unmatched, m.worker_names()) + "\n";
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json pairs_json(const std::vector<BlockingPair>& pairs, const Market& m) {
  Json out = Json::array();
  for (const BlockingPair& p : pairs) {
    out.push_back({{"firm", m.firm_name(p.firm)}, {"worker", m.worker_name(p.worker)}, {"reason", to_string(p.reason)}});
  }
  return out;
}

std::string pairs_text(const std::vector<BlockingPair>& pairs, const Market& m) {
  if (pairs.empty()) return "none";
  std::string out;
  for (const BlockingPair& p : pairs) {
    if (!out.empty()) out += " ";
    out += "(" + m.firm_name(p.firm) + "," + m.worker_name(p.worker) + ")";
  }
  return out;
}

Json trace_json(const OperatorTrace& t, const Market& m) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < t.matchings.size(); ++i) {
    const TraceStep& d = t.diagnostics[i];
    steps.push_back({{"matching", to_json(t.matchings[i], m)},
                     {"blocking_pairs", d.blocking_pairs},
                     {"weakly_improves", d.weakly_improves},
                     {"strictly_improves", d.strictly_improves}});
  }
  return {{"side", std::string(to_string(t.side))}, {"steps", t.steps()}, {"trace", steps}};
}

std::string trace_text(const OperatorTrace& t, const Market& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.matchings.size(); ++i) {
    out << "step " << i << " (blocking pairs: " << t.diagnostics[i].blocking_pairs;
    if (i > 0) out << ", improves: " << yes_no(t.diagnostics[i].strictly_improves);
    out << ")\n" << render(t.matchings[i], m);
  }
  return out.str();
}

// ------------------------------------------------------------------ inputs

MarketDocument load_document(const std::string& path) { return load_market_document(path); }

Matching resolve_matching(const std::string& ref, const MarketDocument& doc, const Market& m) {
  if (!ref.empty() && ref.front() == '@') return doc.matching(ref.substr(1));
  return load_matching(ref, m);
}

Side side_of(const std::string& tag) {
  const std::optional<Side> s = parse_side(tag);
  if (!s) throw UsageError("--side must be 'firms' or 'workers'");
  return *s;
}

EnumerationBudget budget_of(std::optional<std::size_t> max_matchings) {
  EnumerationBudget b;
  if (max_matchings) b.max_matchings = *max_matchings;
  return b;
}

// ---------------------------------------------------------------- commands

Report cmd_validate(const std::string& market_path, std::size_t cap, bool assume_substitutable) {
  const Market m = load_market(market_path);
  ValidationReport report = validate_market(m, cap);
  std::vector<ValidationIssue> assumed;
  if (assume_substitutable) {
    auto split = std::stable_partition(report.issues.begin(), report.issues.end(),
                                       [](const ValidationIssue& i) { return i.kind != "CapExceeded"; });
    assumed.assign(split, report.issues.end());
    report.issues.erase(split, report.issues.end());
  }

  Report r;
  Json issues = Json::array();
  std::ostringstream text;
  text << "market: " << to_string(m.variant()) << ", " << m.firm_count() << " firms, " << m.worker_count()
       << " workers\n";
  for (const ValidationIssue& i : report.issues) {
    issues.push_back({{"agent", i.agent}, {"kind", i.kind}, {"detail", i.detail}});
    text << "  " << (i.agent.empty() ? "market" : i.agent) << ": " << i.kind << ": " << i.detail << "\n";
  }
  Json assumed_json = Json::array();
  for (const ValidationIssue& i : assumed) {
    assumed_json.push_back(i.agent);
    text << "  " << i.agent << ": too large to check, assumed substitutable\n";
  }
  text << "validation: " << (report.ok() ? "pass" : "fail") << "\n";
  r.result = {{"variant", std::string(to_string(m.variant()))},
              {"firms", m.firm_count()},
              {"workers", m.worker_count()},
              {"valid", report.ok()},
              {"issues", issues},
              {"assumed_substitutable", assumed_json}};
  r.text = text.str();
  if (!report.ok()) r.failure = {ErrorCode::kValidationFailed, "market fails validation"};
  return r;
}

Report cmd_stable_check(const std::string& market_path, const std::string& ref) {
  const MarketDocument doc = load_document(market_path);
  const Market& m = doc.market;
  const Matching mu = resolve_matching(ref, doc, m);
  const bool ir = is_individually_rational(m, mu);
  const std::vector<BlockingPair> pairs = blocking_pairs(m, mu);
  Report r;
  r.result = {{"stable", ir && pairs.empty()},
              {"individually_rational", ir},
              {"blocking_pairs", pairs_json(pairs, m)},
              {"matching", to_json(mu, m)}};
  r.text = render(mu, m) + "individually rational: " + yes_no(ir) + "\nblocking pairs: " + pairs_text(pairs, m) +
           "\nstable: " + yes_no(ir && pairs.empty()) + "\n";
  return r;
}

Report cmd_quasi_check(const std::string& market_path, const std::string& ref, const std::optional<std::string>& side,
                       const QuasiCheckOptions& opts) {
  const MarketDocument doc = load_document(market_path);
  const Market& m = doc.market;
  const Matching mu = resolve_matching(ref, doc, m);
  Report r;
  r.result = Json::object();
  r.text = render(mu, m);
  if (!side || side_of(*side) == Side::kWorkers) {
    const bool q = is_worker_quasi_stable(m, mu, opts);
    r.result["worker_quasi_stable"] = q;
    r.text += "worker-quasi-stable: " + yes_no(q) + "\n";
  }
  if (!side || side_of(*side) == Side::kFirms) {
    const bool q = is_firm_quasi_stable(m, mu, opts);
    r.result["firm_quasi_stable"] = q;
    r.text += "firm-quasi-stable: " + yes_no(q) + "\n";
  }
  return r;
}

struct LatticeArgs {
  std::string market;
  std::string a;
  std::string b;
  std::string side = "firms";
  bool trace = false;
  bool via_replica = false;
  bool skip_preconditions = false;
  bool assume_substitutable = false;
};

Report cmd_lattice_op(const LatticeArgs& args, bool join) {
  const MarketDocument doc = load_document(args.market);
  const Market& source = doc.market;
  const Side side = side_of(args.side);
  TarskiOptions opts;
  opts.enforce_preconditions = !args.skip_preconditions;
  opts.quasi.assume_substitutable = args.assume_substitutable;

  Matching a = resolve_matching(args.a, doc, source);
  Matching b = resolve_matching(args.b, doc, source);

  std::optional<RelatedMarket> rm;
  if (args.via_replica) {
    rm = build_related_market(source);
    a = phi_inverse_stable(*rm, a);
    b = phi_inverse_stable(*rm, b);
  }
  const Market& m = rm ? rm->related : source;

  // The firm join and the worker meet both re-equilibrate λ with T^F; the
  // other two re-equilibrate γ with T^W.
  const bool via_lambda = join == (side == Side::kFirms);
  Matching result = join ? stable_join(m, side, a, b, opts) : stable_meet(m, side, a, b, opts);

  Report r;
  const std::string op = join ? "join" : "meet";
  r.result = {{"operation", op}, {"side", std::string(to_string(side))}};
  std::ostringstream text;
  if (args.trace) {
    TarskiOptions inner = opts;
    inner.enforce_preconditions = false;
    const Matching candidate = via_lambda ? lambda_join(m, a, b, inner) : gamma_join(m, a, b, inner);
    const OperatorTrace t =
        iterate_to_fixed_point(m, candidate, via_lambda ? Side::kFirms : Side::kWorkers, inner);
    r.result["candidate"] = {{"kind", via_lambda ? "lambda" : "gamma"}, {"matching", to_json(candidate, m)}};
    r.result["trace"] = trace_json(t, m);
    text << (via_lambda ? "lambda" : "gamma") << (rm ? " (related market)" : "") << "\n"
         << render(candidate, m) << trace_text(t, m);
  }
  if (rm) {
    r.result["related_matching"] = to_json(result, m);
    result = phi(*rm, result);
  }
  r.result["matching"] = to_json(result, source);
  text << op << " (" << to_string(side) << ")\n" << render(result, source);
  r.text = text.str();
  return r;
}

Report cmd_iterate(const std::string& market_path, const std::optional<std::string>& ref, const std::string& side_tag,
                   const std::optional<std::string>& optimal_for, bool trace, bool skip_preconditions,
                   bool assume_substitutable, std::optional<std::size_t> budget) {
  const MarketDocument doc = load_document(market_path);
  const Market& m = doc.market;
  TarskiOptions opts;
  opts.enforce_preconditions = !skip_preconditions;
  opts.quasi.assume_substitutable = assume_substitutable;
  Report r;

  if (optimal_for) {
    if (ref) throw UsageError("--optimal-for starts from the empty matching and takes no matching argument");
    const Side side = side_of(*optimal_for);
    const EnumerationBudget b = budget_of(budget);
    const ExtremalResult e = extremal_stable(m, side, opts, &b);
    r.result = {{"optimal_for", std::string(to_string(side))},
                {"verified_optimal", e.verified_optimal},
                {"matching", to_json(e.matching, m)}};
    r.text = e.verified_optimal
                 ? std::string(side == Side::kFirms ? "firm" : "worker") +
                       "-optimal stable matching (verified by enumeration)\n"
                 : std::string("a stable matching reached from the empty matching (optimality not verified)\n");
    r.text += render(e.matching, m);
    return r;
  }
  if (!ref) throw UsageError("iterate needs a matching (or --optimal-for)");

  const Side side = side_of(side_tag);
  const OperatorTrace t = iterate_to_fixed_point(m, resolve_matching(*ref, doc, m), side, opts);
  r.result = trace_json(t, m);
  r.result["fixed_point"] = to_json(t.fixed_point(), m);
  if (!trace) r.result.erase("trace");
  std::ostringstream text;
  if (trace) text << trace_text(t, m);
  text << "fixed point of the " << to_string(side) << " operator after " << t.steps() << " step(s)\n"
       << render(t.fixed_point(), m);
  r.text = text.str();
  return r;
}

Report cmd_enumerate(const std::string& market_path, const std::string& filter, std::optional<std::size_t> budget,
                     const QuasiCheckOptions& opts) {
  const Market m = load_market(market_path);
  const EnumerationBudget b = budget_of(budget);
  std::vector<Matching> found;
  if (filter == "all") {
    found = enumerate_matchings(m, b);
  } else if (filter == "stable") {
    found = enumerate_stable(m, b);
  } else if (filter == "quasi-workers") {
    found = enumerate_quasi_stable(m, Side::kWorkers, b, opts);
  } else {
    found = enumerate_quasi_stable(m, Side::kFirms, b, opts);
  }
  Report r;
  r.result = Json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const Matching& mu = found[i];
    Json line = {{"index", i},
                 {"matching", to_json(mu, m)},
                 {"individually_rational", is_individually_rational(m, mu)},
                 {"stable", is_stable(m, mu)},
                 {"worker_quasi_stable", is_worker_quasi_stable(m, mu, opts)},
                 {"firm_quasi_stable", is_firm_quasi_stable(m, mu, opts)}};
    text << line.dump() << "\n";
    r.result.push_back(std::move(line));
  }
  r.text = text.str();
  return r;
}

struct SeedArgs {
  std::optional<std::uint64_t> seed;
  std::string variant = "many_to_one";
  std::size_t firms = 3;
  std::size_t workers = 4;
  double density = 0.7;
  std::string firm_kind = "quota_linear";
  std::size_t max_quota = 2;
};

Report cmd_verify_lattice(const std::optional<std::string>& market_path, const SeedArgs& seed,
                          std::optional<std::size_t> budget) {
  if (market_path.has_value() == seed.seed.has_value()) {
    throw UsageError("verify-lattice needs either a market file or --seed");
  }
  std::optional<Market> generated;
  if (seed.seed) {
    RandomMarketSpec spec;
    const std::optional<MarketVariant> v = parse_variant(seed.variant);
    if (!v) throw UsageError("unknown --variant '" + seed.variant + "'");
    spec.variant = *v;
    spec.firms = seed.firms;
    spec.workers = seed.workers;
    spec.density = seed.density;
    spec.firm_kind = seed.firm_kind == "set_list" ? ChoiceKind::kSetList : ChoiceKind::kQuotaLinear;
    spec.max_firm_quota = spec.max_worker_quota = seed.max_quota;
    generated = random_market(*seed.seed, spec);
  }
  const Market m = generated ? *generated : load_market(*market_path);
  const LatticeReport rep = verify_lattice(m, budget_of(budget));

  Json stable = Json::array();
  for (const Matching& mu : rep.stable) stable.push_back(to_json(mu, m));
  Json pairs = Json::array();
  auto idx = [](const std::optional<std::size_t>& i) { return i ? Json(*i) : Json(nullptr); };
  for (const LatticePair& p : rep.pairs) {
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"join_firms", idx(p.join_firms)},
                     {"meet_firms", idx(p.meet_firms)},
                     {"join_workers", idx(p.join_workers)},
                     {"meet_workers", idx(p.meet_workers)},
                     {"tarski_agrees", p.tarski_agrees}});
  }
  const std::vector<std::pair<const char*, bool>> flags = {
      {"firm_order_is_partial_order", rep.firm_order_is_partial_order},
      {"worker_order_is_partial_order", rep.worker_order_is_partial_order},
      {"firm_lattice", rep.firm_lattice},
      {"worker_lattice", rep.worker_lattice},
      {"order_duality", rep.order_duality},
      {"operation_duality", rep.operation_duality},
      {"tarski_agreement", rep.tarski_agreement}};

  Report r;
  r.result = Json::object();
  if (generated) r.result["market"] = to_json(m);
  r.result["stable_count"] = rep.stable.size();
  std::ostringstream text;
  text << "stable matchings: " << rep.stable.size() << "\n";
  for (const auto& [name, ok] : flags) {
    r.result[name] = ok;
    text << "  " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
  }
  r.result["all_passed"] = rep.all_passed();
  r.result["stable"] = stable;
  r.result["pairs"] = pairs;
  text << "lattice verification: " << (rep.all_passed() ? "pass" : "fail") << "\n";
  r.text = text.str();
  if (!rep.all_passed()) r.failure = {ErrorCode::kValidationFailed, "lattice verification failed"};
  return r;
}

Report cmd_replica(const std::string& action, const std::string& market_path, const std::optional<std::string>& ref) {
  const MarketDocument doc = load_document(market_path);
  const RelatedMarket rm = build_related_market(doc.market);
  Report r;
  if (action == "build") {
    r.result = to_json(rm.related);
    r.text = dump(r.result);
    return r;
  }
  if (!ref) throw UsageError("replica " + action + " needs a matching");
  if (action == "phi") {
    const Matching mu = load_matching(*ref, rm.related);
    const Matching nu = phi(rm, mu);
    r.result = to_json(nu, rm.source);
    r.text = render(nu, rm.source);
    return r;
  }
  const Matching mu = phi_inverse_stable(rm, resolve_matching(*ref, doc, rm.source));
  r.result = to_json(mu, rm.related);
  r.text = render(mu, rm.related);
  return r;
}

// -------------------------------------------------------------------- demo

std::string label(const Matching& mu, const MarketDocument& doc) {
  for (const auto& [name, known] : doc.matchings) {
    if (known == mu) return " = " + name;
  }
  return "";
}

Report cmd_demo(const std::string& which) {
  const std::string_view source = bundled_example(which);
  if (source.empty()) throw UsageError("unknown demo '" + which + "' (expected example1 or example2)");
  const MarketDocument doc = market_document_from_json(parse_json(source));
  const Market& m = doc.market;
  const Matching& under = doc.matching("mu_under");
  const Matching& over = doc.matching("mu_over");

  std::ostringstream text;
  Report r;
  r.result = Json::object();
  text << which << ": " << to_string(m.variant()) << ", " << m.firm_count() << " firms, " << m.worker_count()
       << " workers\n";
  const bool valid = validate_market(m).ok();
  text << "validation: " << (valid ? "pass" : "fail") << "\n\n";
  r.result["valid"] = valid;

  for (const auto& [name, mu] : {std::pair<const char*, const Matching&>{"mu_under", under}, {"mu_over", over}}) {
    text << name << " (stable: " << yes_no(is_stable(m, mu)) << ")\n" << render(mu, m) << "\n";
    r.result[name] = {{"matching", to_json(mu, m)}, {"stable", is_stable(m, mu)}};
  }

  auto section = [&](const char* key, const char* heading, const Matching& start, Side side) {
    const std::vector<BlockingPair> pairs = blocking_pairs(m, start);
    const OperatorTrace t = iterate_to_fixed_point(m, start, side);
    text << heading << "\n" << render(start, m) << "  worker-quasi-stable: " << yes_no(is_worker_quasi_stable(m, start))
         << ", firm-quasi-stable: " << yes_no(is_firm_quasi_stable(m, start))
         << "\n  blocking pairs: " << pairs_text(pairs, m) << "\n";
    for (std::size_t i = 1; i < t.matchings.size(); ++i) {
      text << (side == Side::kFirms ? "T^F" : "T^W") << " step " << i << label(t.matchings[i], doc) << "\n"
           << render(t.matchings[i], m) << "  blocking pairs: " << pairs_text(blocking_pairs(m, t.matchings[i]), m)
           << "\n";
    }
    text << "fixed point after " << t.steps() << " step(s)\n\n";
    r.result[key] = {{"matching", to_json(start, m)},
                     {"blocking_pairs", pairs_json(pairs, m)},
                     {"iteration", trace_json(t, m)}};
  };
  section("lambda", "lambda = C_f(mu_under(f) ∪ mu_over(f))", lambda_join(m, under, over), Side::kFirms);
  section("gamma", "gamma = C_w(mu_under(w) ∪ mu_over(w))", gamma_join(m, under, over), Side::kWorkers);

  const Matching join = stable_join_firms(m, under, over);
  const Matching meet = stable_meet_firms(m, under, over);
  text << "join (firms)" << label(join, doc) << "\n" << render(join, m);
  text << "meet (firms)" << label(meet, doc) << "\n" << render(meet, m) << "\n";
  r.result["join_firms"] = to_json(join, m);
  r.result["meet_firms"] = to_json(meet, m);

  const EnumerationBudget budget;
  for (Side side : {Side::kFirms, Side::kWorkers}) {
    const ExtremalResult e = extremal_stable(m, side, {}, &budget);
    text << (side == Side::kFirms ? "firm" : "worker") << "-optimal" << (e.verified_optimal ? " (verified)" : " (unverified)")
         << label(e.matching, doc) << "\n" << render(e.matching, m);
    r.result[std::string(to_string(side)) + "_optimal"] = {{"matching", to_json(e.matching, m)},
                                                            {"verified", e.verified_optimal}};
  }
  const LatticeReport lattice = verify_lattice(m, budget);
  text << "\nstable matchings: " << lattice.stable.size()
       << "; lattice checks: " << (lattice.all_passed() ? "pass" : "fail") << "\n";
  r.result["stable_count"] = lattice.stable.size();
  r.result["lattice_checks_pass"] = lattice.all_passed();
  r.text = text.str();
  return r;
}

// ------------------------------------------------------------------ driver

int emit(const Report& r, bool json, std::ostream& out, std::ostream& err) {
  if (json) {
    Json wrapped = {{"ok", !r.failure}, {"result", r.result}, {"error", nullptr}};
    if (r.failure) {
      wrapped["error"] = {{"code", std::string(to_string(r.failure->first))}, {"message", r.failure->second}};
    }
    out << dump(wrapped);
  } else {
    out << r.text;
    if (r.failure) err << "error [" << to_string(r.failure->first) << "]: " << r.failure->second << "\n";
  }
  return r.failure ? kExitDomainError : kExitOk;
}

int emit_error(ErrorCode code, const std::string& message, bool json, std::ostream& out, std::ostream& err) {
  if (json) {
    out << dump({{"ok", false},
                 {"result", nullptr},
                 {"error", {{"code", std::string(to_string(code))}, {"message", message}}}});
  } else {
    err << "error [" << to_string(code) << "]: " << message << "\n";
  }
  return kExitDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Join and meet of stable matchings through Tarski operators", "stablelat"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::optional<std::size_t> budget;
  bool assume_substitutable = false;
  std::size_t cap = kDefaultExhaustiveCap;

  std::string market;
  auto* validate = app.add_subcommand("validate", "Check the choice-function axioms of a market");
  validate->add_option("market", market, "Market file")->required();
  validate->add_option("--cap", cap, "Largest ground set checked exhaustively");
  validate->add_flag("--assume-substitutable", assume_substitutable, "Accept choice functions beyond the cap");

  std::string matching_a;
  auto* stable_check = app.add_subcommand("stable-check", "Individual rationality and blocking pairs");
  stable_check->add_option("market", market, "Market file")->required();
  stable_check->add_option("matching", matching_a, "Matching file or @name")->required();

  std::optional<std::string> side_opt;
  auto* quasi_check = app.add_subcommand("quasi-check", "Worker- and firm-quasi-stability");
  quasi_check->add_option("market", market, "Market file")->required();
  quasi_check->add_option("matching", matching_a, "Matching file or @name")->required();
  quasi_check->add_option("--side", side_opt, "workers (worker-quasi) or firms (firm-quasi); both by default")
      ->check(CLI::IsMember({"firms", "workers"}));
  quasi_check->add_flag("--assume-substitutable", assume_substitutable, "Test only full and singleton offers");

  LatticeArgs lat;
  auto add_lattice = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("market", lat.market, "Market file")->required();
    cmd->add_option("first", lat.a, "Stable matching file or @name")->required();
    cmd->add_option("second", lat.b, "Stable matching file or @name")->required();
    cmd->add_option("--side", lat.side, "Order: firms or workers")->check(CLI::IsMember({"firms", "workers"}));
    cmd->add_flag("--trace", lat.trace, "Show the candidate and every operator step");
    cmd->add_flag("--via-replica", lat.via_replica, "Compute in the related many-to-one market");
    cmd->add_flag("--skip-preconditions", lat.skip_preconditions, "Do not check quasi-stability of intermediates");
    cmd->add_flag("--assume-substitutable", lat.assume_substitutable, "Test only full and singleton offers");
    return cmd;
  };
  auto* join = add_lattice("join", "Join of two stable matchings");
  auto* meet = add_lattice("meet", "Meet of two stable matchings");

  std::optional<std::string> iterate_matching;
  std::optional<std::string> optimal_for;
  std::string iterate_side = "firms";
  bool trace = false;
  bool skip_preconditions = false;
  auto* iterate = app.add_subcommand("iterate", "Iterate a Tarski operator to its fixed point");
  iterate->add_option("market", market, "Market file")->required();
  iterate->add_option("matching", iterate_matching, "Starting matching file or @name");
  iterate->add_option("--side", iterate_side, "Operator: firms (T^F) or workers (T^W)")
      ->check(CLI::IsMember({"firms", "workers"}));
  iterate->add_option("--optimal-for", optimal_for, "Start from the empty matching and reach this side's optimum")
      ->check(CLI::IsMember({"firms", "workers"}));
  iterate->add_flag("--trace", trace, "Show every step");
  iterate->add_flag("--skip-preconditions", skip_preconditions, "Do not check quasi-stability of the start");
  iterate->add_flag("--assume-substitutable", assume_substitutable, "Test only full and singleton offers");
  iterate->add_option("--budget", budget, "Enumeration budget for verifying --optimal-for");

  std::string filter = "all";
  auto* enumerate = app.add_subcommand("enumerate", "List matchings as JSON lines");
  enumerate->add_option("market", market, "Market file")->required();
  enumerate->add_option("--filter", filter, "all, stable, quasi-workers or quasi-firms")
      ->check(CLI::IsMember({"all", "stable", "quasi-workers", "quasi-firms"}));
  enumerate->add_option("--budget", budget, "Most matchings to visit");
  enumerate->add_flag("--assume-substitutable", assume_substitutable, "Test only full and singleton offers");

  std::optional<std::string> lattice_market;
  SeedArgs seed;
  auto* verify = app.add_subcommand("verify-lattice", "Brute-force lattice checks of the stable set");
  verify->add_option("market", lattice_market, "Market file");
  verify->add_option("--seed", seed.seed, "Generate a random market instead");
  verify->add_option("--variant", seed.variant, "Variant of the generated market")
      ->check(CLI::IsMember({"many_to_one", "many_to_many_responsive", "many_to_many_sub"}));
  verify->add_option("--firms", seed.firms, "Firms in the generated market")->check(CLI::Range(1, 6));
  verify->add_option("--workers", seed.workers, "Workers in the generated market")->check(CLI::Range(1, 7));
  verify->add_option("--density", seed.density, "Acceptability density")->check(CLI::Range(0.0, 1.0));
  verify->add_option("--firm-kind", seed.firm_kind, "quota_linear or set_list")
      ->check(CLI::IsMember({"quota_linear", "set_list"}));
  verify->add_option("--max-quota", seed.max_quota, "Largest generated quota")->check(CLI::Range(1, 6));
  verify->add_option("--budget", budget, "Most matchings to visit");

  std::string replica_action;
  std::optional<std::string> replica_matching;
  auto* replica = app.add_subcommand("replica", "q-replica market and the morphism between the two markets");
  replica->add_option("action", replica_action, "build, phi or phi-inverse")
      ->required()
      ->check(CLI::IsMember({"build", "phi", "phi-inverse"}));
  replica->add_option("market", market, "Responsive market file")->required();
  replica->add_option("matching", replica_matching,
                      "phi: matching of the related market; phi-inverse: stable matching file or @name");

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Replay a bundled worked example");
  demo->add_option("example", demo_name, "example1 or example2")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  const bool json = format == "json";
  QuasiCheckOptions quasi;
  quasi.assume_substitutable = assume_substitutable;
  try {
    Report r;
    if (*validate) {
      r = cmd_validate(market, cap, assume_substitutable);
    } else if (*stable_check) {
      r = cmd_stable_check(market, matching_a);
    } else if (*quasi_check) {
      r = cmd_quasi_check(market, matching_a, side_opt, quasi);
    } else if (*join) {
      r = cmd_lattice_op(lat, true);
    } else if (*meet) {
      r = cmd_lattice_op(lat, false);
    } else if (*iterate) {
      r = cmd_iterate(market, iterate_matching, iterate_side, optimal_for, trace, skip_preconditions,
                      assume_substitutable, budget);
    } else if (*enumerate) {
      r = cmd_enumerate(market, filter, budget, quasi);
      if (!json) {
        out << r.text;
        return kExitOk;
      }
    } else if (*verify) {
      r = cmd_verify_lattice(lattice_market, seed, budget);
    } else if (*replica) {
      r = cmd_replica(replica_action, market, replica_matching);
    } else {
      r = cmd_demo(demo_name);
    }
    return emit(r, json, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    return emit_error(e.code(), e.what(), json, out, err);
  }
}

}  // namespace stablelat::cli

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

#include "stablelat/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "stablelat/error.hpp"
#include "stablelat/stability.hpp"

namespace stablelat {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::kSchemaError, msg); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + ": missing \"" + key + "\"");
  return *it;
}

const Json& object_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_object()) schema(where + ": \"" + key + "\" must be an object");
  return v;
}

const Json& array_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_array()) schema(where + ": \"" + key + "\" must be an array");
  return v;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) schema(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::size_t quota_field(const Json& obj, const std::string& where) {
  const Json& v = field(obj, "quota", where);
  if (!v.is_number_integer() || v.get<long long>() < 1) schema(where + ": \"quota\" must be an integer of at least 1");
  return v.get<std::size_t>();
}

// Ids of one side, with a lookup that reports dangling references.
class IdTable {
 public:
  IdTable(std::vector<std::string> names, std::string side) : names_(std::move(names)), side_(std::move(side)) {
    for (AgentIndex i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  }

  std::size_t size() const { return names_.size(); }

  AgentIndex resolve(const Json& id, const std::string& where) const {
    if (!id.is_string()) schema(where + ": ids must be strings");
    auto it = index_.find(id.get<std::string>());
    if (it == index_.end()) {
      throw Error(ErrorCode::kReferentialIntegrity, where + ": unknown " + side_ + " '" + id.get<std::string>() + "'");
    }
    return it->second;
  }

  std::vector<AgentIndex> order(const Json& arr, const std::string& where) const {
    if (!arr.is_array()) schema(where + ": order must be an array");
    std::vector<AgentIndex> out;
    AgentSet seen;
    for (const Json& id : arr) {
      const AgentIndex a = resolve(id, where);
      if (seen.contains(a)) schema(where + ": '" + id.get<std::string>() + "' listed twice");
      seen.insert(a);
      out.push_back(a);
    }
    return out;
  }

  AgentSet set(const Json& arr, const std::string& where) const {
    AgentSet out;
    for (AgentIndex a : order(arr, where)) out.insert(a);
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::string side_;
  std::map<std::string, AgentIndex, std::less<>> index_;
};

ChoiceFunction choice_from_json(const Json& spec, const IdTable& ground, const std::string& where) {
  if (!spec.is_object()) schema(where + ": preference entry must be an object");
  const std::string kind = string_field(spec, "kind", where);
  if (kind == "set_list") {
    std::vector<AgentSet> list;
    for (const Json& s : array_field(spec, "list", where)) {
      const AgentSet set = ground.set(s, where);
      if (set.empty()) schema(where + ": listed sets must be nonempty");
      for (AgentSet prior : list) {
        if (prior == set) schema(where + ": a set is listed twice");
      }
      list.push_back(set);
    }
    return ChoiceFunction::set_list(ground.size(), std::move(list));
  }
  if (kind == "quota_linear") {
    std::vector<AgentIndex> order = ground.order(array_field(spec, "order", where), where);
    return ChoiceFunction::quota_linear(ground.size(), std::move(order), quota_field(spec, where));
  }
  schema(where + ": unknown choice kind '" + kind + "'");
}

std::vector<std::string> keys(const Json& obj) {
  std::vector<std::string> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) out.push_back(it.key());
  return out;
}

}  // namespace

const Matching& MarketDocument::matching(std::string_view name) const {
  for (const auto& [n, mu] : matchings) {
    if (n == name) return mu;
  }
  throw Error(ErrorCode::kReferentialIntegrity, "no matching named '" + std::string(name) + "' in the market file");
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

MarketDocument market_document_from_json(const Json& j) {
  if (!j.is_object()) schema("market: top level must be an object");
  const std::string tag = string_field(j, "variant", "market");
  const std::optional<MarketVariant> variant = parse_variant(tag);
  if (!variant) schema("market: unknown variant '" + tag + "'");
  const Json& firms_json = object_field(j, "firms", "market");
  const Json& workers_json = object_field(j, "workers", "market");
  if (firms_json.size() > kMaxAgentsPerSide || workers_json.size() > kMaxAgentsPerSide) {
    schema("market: at most 64 agents per side");
  }

  const IdTable firm_table(keys(firms_json), "firm");
  const IdTable worker_table(keys(workers_json), "worker");

  std::vector<ChoiceFunction> firms;
  std::vector<ChoiceFunction> worker_choices;
  std::vector<LinearPref> prefs;
  std::vector<std::size_t> quotas;
  try {
    for (auto it = firms_json.begin(); it != firms_json.end(); ++it) {
      firms.push_back(choice_from_json(it.value(), worker_table, "firm " + it.key()));
    }
    for (auto it = workers_json.begin(); it != workers_json.end(); ++it) {
      const std::string where = "worker " + it.key();
      const Json& spec = it.value();
      if (!spec.is_object()) schema(where + ": preference entry must be an object");
      const std::string kind = string_field(spec, "kind", where);
      switch (*variant) {
        case MarketVariant::kManyToOne:
          if (kind != "linear") schema(where + ": many_to_one workers need kind \"linear\"");
          prefs.emplace_back(firm_table.size(), firm_table.order(array_field(spec, "order", where), where));
          break;
        case MarketVariant::kManyToManyResponsive:
          if (kind != "linear_quota") schema(where + ": many_to_many_responsive workers need kind \"linear_quota\"");
          prefs.emplace_back(firm_table.size(), firm_table.order(array_field(spec, "order", where), where));
          quotas.push_back(quota_field(spec, where));
          break;
        case MarketVariant::kManyToManySub:
          worker_choices.push_back(choice_from_json(spec, firm_table, where));
          break;
      }
    }

    MarketDocument doc{[&] {
      switch (*variant) {
        case MarketVariant::kManyToOne:
          return Market::many_to_one(keys(firms_json), keys(workers_json), std::move(firms), std::move(prefs));
        case MarketVariant::kManyToManyResponsive:
          return Market::many_to_many_responsive(keys(firms_json), keys(workers_json), std::move(firms),
                                                 std::move(prefs), std::move(quotas));
        case MarketVariant::kManyToManySub:
          break;
      }
      return Market::many_to_many_sub(keys(firms_json), keys(workers_json), std::move(firms),
                                      std::move(worker_choices));
    }(), {}};

    if (auto it = j.find("matchings"); it != j.end()) {
      if (!it->is_object()) schema("market: \"matchings\" must be an object");
      for (auto m = it->begin(); m != it->end(); ++m) {
        doc.matchings.emplace_back(m.key(), matching_from_json(m.value(), doc.market));
      }
    }
    return doc;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) schema(std::string("market: ") + e.what());
    throw;
  }
}

Market market_from_json(const Json& j) { return market_document_from_json(j).market; }

MarketDocument load_market_document(const std::filesystem::path& path) {
  return market_document_from_json(read_json_file(path));
}

Market load_market(const std::filesystem::path& path) { return load_market_document(path).market; }

Matching matching_from_json(const Json& j, const Market& m) {
  if (!j.is_object()) schema("matching: top level must be an object");
  const Json& assignments = object_field(j, "assignments", "matching");
  const IdTable workers(m.worker_names(), "worker");
  std::vector<AgentSet> firm_sets(m.firm_count());
  std::vector<bool> seen(m.firm_count(), false);
  for (auto it = assignments.begin(); it != assignments.end(); ++it) {
    const std::optional<AgentIndex> f = m.find_firm(it.key());
    if (!f) throw Error(ErrorCode::kReferentialIntegrity, "matching: unknown firm '" + it.key() + "'");
    if (seen[*f]) schema("matching: firm '" + it.key() + "' assigned twice");
    seen[*f] = true;
    if (!it.value().is_array()) schema("matching: assignment of '" + it.key() + "' must be an array");
    firm_sets[*f] = workers.set(it.value(), "matching, firm " + it.key());
  }
  Matching mu = Matching::from_firm_side(std::move(firm_sets), m.worker_count());
  check_matching(m, mu);
  return mu;
}

Matching load_matching(const std::filesystem::path& path, const Market& m) {
  return matching_from_json(read_json_file(path), m);
}

Json worker_ids(AgentSet workers, const Market& m) {
  Json out = Json::array();
  for (AgentIndex w : workers) out.push_back(m.worker_name(w));
  return out;
}

Json firm_ids(AgentSet firms, const Market& m) {
  Json out = Json::array();
  for (AgentIndex f : firms) out.push_back(m.firm_name(f));
  return out;
}

namespace {

Json choice_to_json(const ChoiceFunction& c, const std::vector<std::string>& ground) {
  auto names = [&](AgentSet s) {
    Json out = Json::array();
    for (AgentIndex a : s) out.push_back(ground[a]);
    return out;
  };
  if (const auto* q = std::get_if<QuotaLinearChoice>(&c.rep())) {
    Json order = Json::array();
    for (AgentIndex a : q->order) order.push_back(ground[a]);
    return Json{{"kind", "quota_linear"}, {"order", order}, {"quota", q->quota}};
  }
  const ChoiceFunction listed = c.as_set_list();
  Json list = Json::array();
  for (AgentSet s : std::get<SetListChoice>(listed.rep()).list) list.push_back(names(s));
  return Json{{"kind", "set_list"}, {"list", list}};
}

Json order_to_json(const LinearPref& p, const std::vector<std::string>& ground) {
  Json order = Json::array();
  for (AgentIndex a : p.order()) order.push_back(ground[a]);
  return order;
}

}  // namespace

Json to_json(const Market& m) {
  Json firms = Json::object();
  for (AgentIndex f = 0; f < m.firm_count(); ++f) firms[m.firm_name(f)] = choice_to_json(m.firm_choice(f), m.worker_names());
  Json workers = Json::object();
  for (AgentIndex w = 0; w < m.worker_count(); ++w) {
    switch (m.variant()) {
      case MarketVariant::kManyToOne:
        workers[m.worker_name(w)] = Json{{"kind", "linear"}, {"order", order_to_json(m.worker_pref(w), m.firm_names())}};
        break;
      case MarketVariant::kManyToManyResponsive:
        workers[m.worker_name(w)] = Json{{"kind", "linear_quota"},
                                         {"order", order_to_json(m.worker_pref(w), m.firm_names())},
                                         {"quota", m.worker_quota(w)}};
        break;
      case MarketVariant::kManyToManySub:
        workers[m.worker_name(w)] = choice_to_json(m.worker_choice(w), m.firm_names());
        break;
    }
  }
  return Json{{"variant", std::string(to_string(m.variant()))}, {"firms", firms}, {"workers", workers}};
}

Json to_json(const Matching& mu, const Market& m) {
  Json assignments = Json::object();
  for (AgentIndex f = 0; f < mu.firm_count(); ++f) {
    if (!mu.of_firm(f).empty()) assignments[m.firm_name(f)] = worker_ids(mu.of_firm(f), m);
  }
  return Json{{"assignments", assignments}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace stablelat

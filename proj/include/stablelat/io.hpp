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

#ifndef STABLELAT_IO_HPP_
#define STABLELAT_IO_HPP_

// JSON encodings. A market file looks like
//
//   {"variant": "many_to_one",
//    "firms":   {"f1": {"kind": "set_list", "list": [["w4"], ["w1"]]}, ...},
//    "workers": {"w1": {"kind": "linear", "order": ["f2", "f1"]}, ...},
//    "matchings": {"mu": {"assignments": {"f1": ["w4"]}}}}
//
// where "matchings" is optional. Agents are indexed in file order.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stablelat/market.hpp"
#include "stablelat/matching.hpp"

namespace stablelat {

using Json = nlohmann::ordered_json;

struct MarketDocument {
  Market market;
  std::vector<std::pair<std::string, Matching>> matchings;

  /// Throws Error(kReferentialIntegrity) for an unknown name.
  const Matching& matching(std::string_view name) const;
};

/// Errors: kParseError (unreadable file, malformed JSON), kSchemaError
/// (wrong shape, bad quota, duplicate entries), kReferentialIntegrity
/// (ids that do not exist on the other side).
Json read_json_file(const std::filesystem::path& path);
Json parse_json(std::string_view text);

MarketDocument market_document_from_json(const Json& j);
Market market_from_json(const Json& j);
MarketDocument load_market_document(const std::filesystem::path& path);
Market load_market(const std::filesystem::path& path);

/// {"assignments": {"f1": ["w4"], ...}}, unmatched agents omitted. Checked
/// against the market's ids and the variant's limit on |μ(w)|.
Matching matching_from_json(const Json& j, const Market& m);
Matching load_matching(const std::filesystem::path& path, const Market& m);

Json to_json(const Market& m);
Json to_json(const Matching& mu, const Market& m);
/// Id arrays in index order.
Json worker_ids(AgentSet workers, const Market& m);
Json firm_ids(AgentSet firms, const Market& m);

/// Pretty-printed with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace stablelat

#endif  // STABLELAT_IO_HPP_

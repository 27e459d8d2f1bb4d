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

#include "stablelat/choice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "stablelat/error.hpp"

namespace stablelat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownAgent: return "UnknownAgent";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotWorkerQuasiStable: return "NotWorkerQuasiStable";
    case ErrorCode::kNotFirmQuasiStable: return "NotFirmQuasiStable";
    case ErrorCode::kNotStable: return "NotStable";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kPreimageNotStable: return "PreimageNotStable";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kReferentialIntegrity: return "ReferentialIntegrity";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

namespace {

void check_ground_size(std::size_t n) {
  if (n > kMaxAgentsPerSide) {
    std::ostringstream msg;
    msg << "ground set of " << n << " agents exceeds the limit of " << kMaxAgentsPerSide;
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

void check_order(std::size_t ground_size, const std::vector<AgentIndex>& order) {
  AgentSet seen;
  for (AgentIndex a : order) {
    if (a >= ground_size) throw Error(ErrorCode::kInvalidArgument, "order entry outside the ground set");
    if (seen.contains(a)) throw Error(ErrorCode::kInvalidArgument, "duplicate entry in order");
    seen.insert(a);
  }
}

AgentSet choose_impl(const ChoiceFunction::Rep& rep, AgentSet s);

struct ChooseVisitor {
  AgentSet s;

  AgentSet operator()(const SetListChoice& c) const {
    for (AgentSet x : c.list) {
      if (x.subset_of(s)) return x;
    }
    return {};
  }

  AgentSet operator()(const QuotaLinearChoice& c) const {
    AgentSet out;
    std::size_t taken = 0;
    for (AgentIndex a : c.order) {
      if (taken == c.quota) break;
      if (s.contains(a)) {
        out.insert(a);
        ++taken;
      }
    }
    return out;
  }

  AgentSet operator()(const QExtensionChoice& c) const {
    const auto& proj = *c.projection;
    AgentSet projected;
    for (AgentIndex r : s) projected.insert(proj[r]);
    const AgentSet chosen = c.base->choose_unchecked(projected);
    // Members of s are visited in increasing replica index, so the first
    // replica of each chosen base agent is its lowest copy.
    AgentSet out;
    AgentSet covered;
    for (AgentIndex r : s) {
      const AgentIndex b = proj[r];
      if (chosen.contains(b) && !covered.contains(b)) {
        out.insert(r);
        covered.insert(b);
      }
    }
    return out;
  }
};

AgentSet choose_impl(const ChoiceFunction::Rep& rep, AgentSet s) {
  return std::visit(ChooseVisitor{s}, rep);
}

}  // namespace

ChoiceFunction ChoiceFunction::set_list(std::size_t ground_size, std::vector<AgentSet> list) {
  check_ground_size(ground_size);
  const AgentSet ground = AgentSet::first(ground_size);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].empty()) throw Error(ErrorCode::kInvalidArgument, "listed set is empty");
    if (!list[i].subset_of(ground)) throw Error(ErrorCode::kInvalidArgument, "listed set leaves the ground set");
    for (std::size_t j = 0; j < i; ++j) {
      if (list[j] == list[i]) throw Error(ErrorCode::kInvalidArgument, "duplicate listed set");
    }
  }
  return ChoiceFunction(ground_size, SetListChoice{std::move(list)});
}

ChoiceFunction ChoiceFunction::quota_linear(std::size_t ground_size, std::vector<AgentIndex> order,
                                            std::size_t quota) {
  check_ground_size(ground_size);
  check_order(ground_size, order);
  if (quota == 0) throw Error(ErrorCode::kInvalidArgument, "quota must be at least 1");
  return ChoiceFunction(ground_size, QuotaLinearChoice{std::move(order), quota});
}

ChoiceFunction ChoiceFunction::q_extension(std::shared_ptr<const ChoiceFunction> base,
                                           std::shared_ptr<const std::vector<AgentIndex>> projection) {
  if (!base || !projection) throw Error(ErrorCode::kInvalidArgument, "q-extension needs a base and a projection");
  check_ground_size(projection->size());
  for (AgentIndex b : *projection) {
    if (b >= base->ground_size()) throw Error(ErrorCode::kInvalidArgument, "projection leaves the base ground set");
  }
  const std::size_t n = projection->size();
  return ChoiceFunction(n, QExtensionChoice{std::move(base), std::move(projection)});
}

AgentSet ChoiceFunction::choose(AgentSet offered) const {
  if (!offered.subset_of(ground())) {
    throw Error(ErrorCode::kUnknownAgent, "offered set contains an agent outside the ground set");
  }
  return choose_impl(rep_, offered);
}

AgentSet ChoiceFunction::choose_unchecked(AgentSet offered) const { return choose_impl(rep_, offered); }

AgentSet ChoiceFunction::acceptable() const {
  struct Visitor {
    AgentSet operator()(const SetListChoice& c) const {
      AgentSet out;
      for (AgentSet x : c.list) out |= x;
      return out;
    }
    AgentSet operator()(const QuotaLinearChoice& c) const {
      AgentSet out;
      for (AgentIndex a : c.order) out.insert(a);
      return out;
    }
    AgentSet operator()(const QExtensionChoice& c) const {
      const AgentSet base = c.base->acceptable();
      AgentSet out;
      for (std::size_t r = 0; r < c.projection->size(); ++r) {
        if (base.contains((*c.projection)[r])) out.insert(r);
      }
      return out;
    }
  };
  return std::visit(Visitor{}, rep_);
}

std::size_t ChoiceFunction::list_length() const {
  struct Visitor {
    std::size_t operator()(const SetListChoice& c) const { return c.list.size(); }
    std::size_t operator()(const QuotaLinearChoice& c) const { return c.order.size(); }
    std::size_t operator()(const QExtensionChoice& c) const { return c.base->list_length(); }
  };
  return std::visit(Visitor{}, rep_);
}

namespace {

// Index tuples 0 <= i_1 < ... < i_k < n in lexicographic order.
void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool advance(std::vector<std::size_t>& digit, const std::vector<AgentIndex>& members,
             const std::vector<std::vector<AgentIndex>>& copies) {
  for (std::size_t i = digit.size(); i > 0; --i) {
    if (++digit[i - 1] < copies[members[i - 1]].size()) return true;
    digit[i - 1] = 0;
  }
  return false;
}

}  // namespace

ChoiceFunction ChoiceFunction::as_set_list() const {
  struct Visitor {
    std::vector<AgentSet> operator()(const SetListChoice& c) const { return c.list; }

    std::vector<AgentSet> operator()(const QuotaLinearChoice& c) const {
      std::vector<AgentSet> out;
      for (std::size_t k = std::min(c.quota, c.order.size()); k > 0; --k) {
        for_each_combination(c.order.size(), k, [&](const std::vector<std::size_t>& idx) {
          AgentSet s;
          for (std::size_t i : idx) s.insert(c.order[i]);
          out.push_back(s);
        });
      }
      return out;
    }

    std::vector<AgentSet> operator()(const QExtensionChoice& c) const {
      const auto& proj = *c.projection;
      std::vector<std::vector<AgentIndex>> copies(c.base->ground_size());
      for (AgentIndex r = 0; r < proj.size(); ++r) copies[proj[r]].push_back(r);

      const ChoiceFunction base = c.base->as_set_list();
      std::vector<AgentSet> out;
      for (AgentSet y : std::get<SetListChoice>(base.rep()).list) {
        const std::vector<AgentIndex> members = y.members();
        std::vector<std::vector<std::size_t>> tuples;
        std::vector<std::size_t> digit(members.size(), 0);
        bool possible = true;
        for (AgentIndex b : members) possible = possible && !copies[b].empty();
        if (!possible) continue;
        do {
          tuples.push_back(digit);
        } while (advance(digit, members, copies));
        // Sum of copy positions first: a linear extension of the
        // componentwise order, so the lowest available copies win.
        std::stable_sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
          std::size_t sa = 0, sb = 0;
          for (std::size_t x : a) sa += x;
          for (std::size_t x : b) sb += x;
          return sa != sb ? sa < sb : a < b;
        });
        for (const auto& t : tuples) {
          AgentSet s;
          for (std::size_t i = 0; i < members.size(); ++i) s.insert(copies[members[i]][t[i]]);
          out.push_back(s);
        }
      }
      return out;
    }
  };
  return set_list(ground_size_, std::visit(Visitor{}, rep_));
}

LinearPref::LinearPref(std::size_t ground_size, std::vector<AgentIndex> order)
    : order_(std::move(order)), rank_(ground_size, 0) {
  check_ground_size(ground_size);
  check_order(ground_size, order_);
  std::fill(rank_.begin(), rank_.end(), order_.size() + 1);
  for (std::size_t i = 0; i < order_.size(); ++i) rank_[order_[i]] = i;
}

std::size_t LinearPref::rank(std::optional<AgentIndex> a) const {
  if (!a) return order_.size();
  return rank_[*a];
}

std::optional<AgentIndex> LinearPref::best(AgentSet s) const {
  for (AgentIndex a : order_) {
    if (s.contains(a)) return a;
  }
  return std::nullopt;
}

}  // namespace stablelat

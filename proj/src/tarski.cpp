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

#include "stablelat/tarski.hpp"

#include <sstream>

#include "engine.hpp"
#include "stablelat/error.hpp"

namespace stablelat {

std::string_view to_string(Side s) { return s == Side::kFirms ? "firms" : "workers"; }

std::optional<Side> parse_side(std::string_view tag) {
  if (tag == "firms") return Side::kFirms;
  if (tag == "workers") return Side::kWorkers;
  return std::nullopt;
}

bool side_geq(const Market& m, Side side, const Matching& a, const Matching& b) {
  return side == Side::kFirms ? blair_geq_firms(m, a, b) : worker_order_geq(m, a, b);
}

namespace {

void require_worker_quasi(const Market& m, const Matching& mu, const TarskiOptions& opts, const char* what) {
  check_matching(m, mu);
  if (opts.enforce_preconditions && !is_worker_quasi_stable(m, mu, opts.quasi)) {
    throw Error(ErrorCode::kNotWorkerQuasiStable, std::string(what) + " is not worker-quasi-stable");
  }
}

void require_firm_quasi(const Market& m, const Matching& mu, const TarskiOptions& opts, const char* what) {
  check_matching(m, mu);
  if (opts.enforce_preconditions && !is_firm_quasi_stable(m, mu, opts.quasi)) {
    throw Error(ErrorCode::kNotFirmQuasiStable, std::string(what) + " is not firm-quasi-stable");
  }
}

void require_stable(const Market& m, const Matching& mu, const char* what) {
  check_matching(m, mu);
  if (!is_stable(m, mu)) throw Error(ErrorCode::kNotStable, std::string(what) + " is not stable");
}

Matching raw_step(const Market& m, const Matching& mu, Side side) {
  if (side == Side::kFirms) return engine::firm_step(engine::firm_view(m), mu);
  return engine::firm_step(engine::worker_view(m), mu.transposed()).transposed();
}

TarskiOptions unchecked(const TarskiOptions& opts) {
  TarskiOptions out = opts;
  out.enforce_preconditions = false;
  return out;
}

}  // namespace

Matching lambda_join(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  require_worker_quasi(m, a, opts, "first matching");
  require_worker_quasi(m, b, opts, "second matching");
  return engine::lambda(engine::firm_view(m), a, b);
}

Matching gamma_join(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  require_firm_quasi(m, a, opts, "first matching");
  require_firm_quasi(m, b, opts, "second matching");
  return engine::lambda(engine::worker_view(m), a.transposed(), b.transposed()).transposed();
}

AgentSet firm_b_set(const Market& m, const Matching& mu, AgentIndex f) {
  check_matching(m, mu);
  return engine::b_set(engine::firm_view(m), mu, f);
}

AgentSet worker_b_set(const Market& m, const Matching& mu, AgentIndex w) {
  check_matching(m, mu);
  return engine::b_set(engine::worker_view(m), mu.transposed(), w);
}

Matching firm_step(const Market& m, const Matching& mu, const TarskiOptions& opts) {
  require_worker_quasi(m, mu, opts, "matching");
  return raw_step(m, mu, Side::kFirms);
}

Matching worker_step(const Market& m, const Matching& mu, const TarskiOptions& opts) {
  require_firm_quasi(m, mu, opts, "matching");
  return raw_step(m, mu, Side::kWorkers);
}

std::size_t iteration_cap(const Market& m) {
  return 2 * m.firm_count() * m.worker_count() * m.max_list_length() + 1;
}

OperatorTrace iterate_to_fixed_point(const Market& m, const Matching& mu, Side side, const TarskiOptions& opts) {
  if (side == Side::kFirms) {
    require_worker_quasi(m, mu, opts, "starting matching");
  } else {
    require_firm_quasi(m, mu, opts, "starting matching");
  }
  const std::size_t cap = opts.step_cap.value_or(iteration_cap(m));

  OperatorTrace trace;
  trace.side = side;
  trace.matchings.push_back(mu);
  trace.diagnostics.push_back({blocking_pairs(m, mu).size(), false, false});
  for (;;) {
    const Matching& current = trace.matchings.back();
    Matching next = raw_step(m, current, side);
    if (next == current) return trace;
    if (trace.steps() == cap) {
      std::ostringstream msg;
      msg << "no fixed point after " << cap << " steps of the " << to_string(side)
          << " operator; a choice function probably violates substitutability";
      throw Error(ErrorCode::kNonConvergence, msg.str());
    }
    const bool weak = side_geq(m, side, next, current);
    trace.diagnostics.push_back({blocking_pairs(m, next).size(), weak, weak});
    trace.matchings.push_back(std::move(next));
  }
}

Matching stable_join_firms(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  require_stable(m, a, "first matching");
  require_stable(m, b, "second matching");
  const TarskiOptions inner = unchecked(opts);
  return iterate_to_fixed_point(m, lambda_join(m, a, b, inner), Side::kFirms, inner).fixed_point();
}

Matching stable_meet_firms(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  require_stable(m, a, "first matching");
  require_stable(m, b, "second matching");
  const TarskiOptions inner = unchecked(opts);
  return iterate_to_fixed_point(m, gamma_join(m, a, b, inner), Side::kWorkers, inner).fixed_point();
}

Matching stable_join_workers(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  return stable_meet_firms(m, a, b, opts);
}

Matching stable_meet_workers(const Market& m, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  return stable_join_firms(m, a, b, opts);
}

Matching stable_join(const Market& m, Side side, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  return side == Side::kFirms ? stable_join_firms(m, a, b, opts) : stable_join_workers(m, a, b, opts);
}

Matching stable_meet(const Market& m, Side side, const Matching& a, const Matching& b, const TarskiOptions& opts) {
  return side == Side::kFirms ? stable_meet_firms(m, a, b, opts) : stable_meet_workers(m, a, b, opts);
}

}  // namespace stablelat

// Copyright 2026 The onlinemanip Authors.
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

// Exact alternating search over the pending voters. Coalition members are
// existential nodes, everyone else universal, and every node branches over
// all |C|! preference orders in lexicographic order of candidate indices.
//
// For scoring rules the future depends on the past only through the score
// vector, so positions are memoized on (score vector, next voter). The tiered
// system keeps the full vote list and is searched without a memo table.

#ifndef ONLINEMANIP_SOLVER_H_
#define ONLINEMANIP_SOLVER_H_

#include <cstdint>
#include <vector>

#include "onlinemanip/election.h"
#include "onlinemanip/instance.h"
#include "onlinemanip/rules.h"

namespace onlinemanip {

struct SolverOptions {
  // Visited positions (including memo hits) before a ResourceLimitError.
  std::uint64_t node_budget = 10'000'000;
  bool memoize = true;
  // At each node, try one order per class of orders with the same effect:
  // same score change for scoring rules (for k-approval/k-veto, the same
  // approved set), same decoded bits for the tiered system (a single class
  // for voters that set no block). The representative is the
  // lexicographically least order of its class, so answers and witnesses
  // are identical to full enumeration.
  bool canonicalize = false;
  // Attach the full StrategyTrace to yes-answers where u is a coalition
  // member. The trace branches over every adversary order.
  bool want_trace = false;
  // Schedule-robust solving: enumerate every order of the remaining voters
  // even when the rule makes order irrelevant.
  bool enumerate_orders = false;
};

// Decides the instance. ScheduleRobust mode is forwarded to
// SolveScheduleRobust. Throws InvalidInstanceError for invalid instances and
// ResourceLimitError when the node budget is exhausted.
Decision Solve(const Oms& oms, const VotingRule& rule,
               const ProblemVariant& variant, const SolverOptions& options = {});
Decision Solve(const Instance& instance, const SolverOptions& options = {});

// Bit c is the answer of Solve with distinguished candidate c, one Solve call
// per candidate.
std::vector<bool> FullProfile(const ElectionSnapshot& snapshot,
                              const PreferenceOrder& sigma,
                              const VotingRule& rule,
                              const ProblemVariant& variant,
                              const SolverOptions& options = {});

// Exists one vote per pending coalition member, fixed up front, such that for
// every order of the pending voters and every nonmanipulator vote the goal is
// met. Scoring rules collapse the order quantifier unless
// options.enumerate_orders is set.
Decision SolveScheduleRobust(const Oms& oms, const VotingRule& rule,
                             const ProblemVariant& variant,
                             const SolverOptions& options = {});

// True iff following `trace` meets the goal against every adversary line.
// Throws VerificationError if the trace is undefined at a reached history.
bool Replay(const StrategyTrace& trace, const Oms& oms, const VotingRule& rule,
            const ProblemVariant& variant,
            std::uint64_t node_budget = 10'000'000);

// All permutations of 0..m-1 in lexicographic order. Throws
// ResourceLimitError if m! exceeds `limit`.
std::vector<PreferenceOrder> AllOrders(int m, std::uint64_t limit = 10'000'000);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_SOLVER_H_

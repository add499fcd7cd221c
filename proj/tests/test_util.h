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

// Test helpers, including a deliberately naive game evaluator that shares no
// code with the library's solver: its own scoring, goal sets and leaf test,
// plain recursion with no memo.

#ifndef ONLINEMANIP_TESTS_TEST_UTIL_H_
#define ONLINEMANIP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "onlinemanip/election.h"
#include "onlinemanip/instance.h"

namespace onlinemanip::testing {

// "b>a>c" style order over the given candidate names.
inline PreferenceOrder Order(const std::vector<std::string>& names,
                             const std::string& text) {
  PreferenceOrder out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('>', start);
    if (end == std::string::npos) end = text.size();
    const std::string name = text.substr(start, end - start);
    out.push_back(static_cast<int>(
        std::find(names.begin(), names.end(), name) - names.begin()));
    start = end + 1;
  }
  return out;
}

inline std::vector<PreferenceOrder> NaiveOrders(int m) {
  std::vector<PreferenceOrder> out;
  PreferenceOrder p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// alpha for m candidates, as plain integers.
using Alpha = std::vector<long long>;

inline bool NaiveGoal(const std::vector<long long>& score, const Oms& oms,
                      const ProblemVariant& v) {
  const int m = static_cast<int>(score.size());
  const long long best = *std::max_element(score.begin(), score.end());
  std::vector<int> winners;
  for (int c = 0; c < m; ++c) {
    if (score[c] == best) winners.push_back(c);
  }
  auto rank = [&](int c) {
    return std::find(oms.sigma.begin(), oms.sigma.end(), c) - oms.sigma.begin();
  };
  const long long rd = rank(oms.d);
  // in_set: the goal set (constructive) or the forbidden set (destructive).
  auto in_set = [&](int c) {
    if (v.target == Target::kPinpoint) return c == oms.d;
    return v.direction == Direction::kConstructive ? rank(c) <= rd
                                                   : rank(c) >= rd;
  };
  const bool unique = winners.size() == 1;
  if (v.direction == Direction::kConstructive) {
    if (v.winner_model == WinnerModel::kUnique) {
      return unique && in_set(winners[0]);
    }
    for (int w : winners) {
      if (in_set(w)) return true;
    }
    return false;
  }
  if (v.winner_model == WinnerModel::kUnique) {
    return !(unique && in_set(winners[0]));
  }
  for (int w : winners) {
    if (in_set(w)) return false;
  }
  return true;
}

// Exists/forall recursion over pending voters for a scoring rule given by
// alpha. Weights must fit in long long.
inline bool NaiveSolve(const Oms& oms, const Alpha& alpha,
                       const ProblemVariant& v) {
  const ElectionSnapshot& s = oms.snapshot;
  const int m = s.num_candidates();
  const std::vector<PreferenceOrder> orders = NaiveOrders(m);
  std::vector<long long> score(m, 0);
  for (const CastVote& cv : s.cast) {
    for (int pos = 0; pos < m; ++pos) {
      score[cv.vote[pos]] += cv.weight.convert_to<long long>() * alpha[pos];
    }
  }
  auto rec = [&](auto&& self, size_t i) -> bool {
    if (i == s.pending.size()) return NaiveGoal(score, oms, v);
    const bool exists = s.pending[i].is_manipulator;
    const long long w = s.pending[i].weight.convert_to<long long>();
    for (const PreferenceOrder& p : orders) {
      for (int pos = 0; pos < m; ++pos) score[p[pos]] += w * alpha[pos];
      const bool r = self(self, i + 1);
      for (int pos = 0; pos < m; ++pos) score[p[pos]] -= w * alpha[pos];
      if (r == exists) return exists;
    }
    return !exists;
  };
  return rec(rec, 0);
}

inline Alpha PluralityAlpha(int m) {
  Alpha a(m, 0);
  a[0] = 1;
  return a;
}

inline Alpha ApprovalAlpha(int m, int ones) {
  Alpha a(m, 0);
  for (int i = 0; i < ones; ++i) a[i] = 1;
  return a;
}

}  // namespace onlinemanip::testing

#endif  // ONLINEMANIP_TESTS_TEST_UTIL_H_

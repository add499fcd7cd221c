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

#include "onlinemanip/election.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "onlinemanip/errors.h"

namespace onlinemanip {

std::optional<CandidateIndex> ElectionSnapshot::FindCandidate(
    std::string_view name) const {
  for (int i = 0; i < num_candidates(); ++i) {
    if (candidates[i] == name) return i;
  }
  return std::nullopt;
}

int ElectionSnapshot::NumPendingManipulators() const {
  return static_cast<int>(std::count_if(
      pending.begin(), pending.end(),
      [](const PendingVoter& v) { return v.is_manipulator; }));
}

std::string_view ToString(Direction d) {
  return d == Direction::kConstructive ? "constructive" : "destructive";
}

std::string_view ToString(Target t) {
  return t == Target::kSegment ? "segment" : "pinpoint";
}

std::string_view ToString(WinnerModel w) {
  return w == WinnerModel::kNonunique ? "nonunique" : "unique";
}

std::string_view ToString(QuantifierMode q) {
  switch (q) {
    case QuantifierMode::kOnline:
      return "online";
    case QuantifierMode::kFreeform:
      return "freeform";
    case QuantifierMode::kScheduleRobust:
      return "schedule_robust";
  }
  return "online";
}

bool IsPermutation(const PreferenceOrder& order, int m) {
  if (static_cast<int>(order.size()) != m) return false;
  std::vector<bool> seen(m, false);
  for (CandidateIndex c : order) {
    if (c < 0 || c >= m || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

CandidateSet GoalSet(const PreferenceOrder& sigma, CandidateIndex d,
                     Direction direction, Target target) {
  auto pos = std::find(sigma.begin(), sigma.end(), d);
  if (pos == sigma.end()) {
    throw InvalidInstanceError("distinguished candidate does not occur in sigma");
  }
  CandidateSet out;
  if (direction == Direction::kConstructive) {
    if (target == Target::kPinpoint) {
      out = {d};
    } else {
      out.assign(sigma.begin(), pos + 1);
    }
  } else {
    if (target == Target::kPinpoint) {
      throw InvalidInstanceError("destructive pinpoint problems are undefined");
    }
    out.assign(pos, sigma.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GoalMet(const CandidateSet& winners, const CandidateSet& goal,
             Direction direction, WinnerModel winner_model) {
  auto in_goal = [&goal](CandidateIndex c) {
    return std::binary_search(goal.begin(), goal.end(), c);
  };
  if (direction == Direction::kConstructive) {
    if (winner_model == WinnerModel::kUnique) {
      return winners.size() == 1 && in_goal(winners[0]);
    }
    return std::any_of(winners.begin(), winners.end(), in_goal);
  }
  // `goal` holds the forbidden candidates here.
  if (winner_model == WinnerModel::kUnique) {
    return !(winners.size() == 1 && in_goal(winners[0]));
  }
  return std::none_of(winners.begin(), winners.end(), in_goal);
}

std::vector<std::string> Validate(const Oms& oms,
                                  const ProblemVariant& variant) {
  std::vector<std::string> out;
  const ElectionSnapshot& s = oms.snapshot;
  const int m = s.num_candidates();

  if (m == 0) out.push_back("candidate set is empty");
  std::set<std::string> names;
  for (const std::string& c : s.candidates) {
    if (c.empty()) out.push_back("candidate names must be non-empty");
    if (!names.insert(c).second) {
      out.push_back("duplicate candidate name '" + c + "'");
    }
  }

  std::set<std::string> voters;
  for (size_t i = 0; i < s.cast.size(); ++i) {
    const CastVote& v = s.cast[i];
    const std::string where = "cast[" + std::to_string(i) + "]";
    if (!IsPermutation(v.vote, m)) {
      out.push_back(where + ": vote is not a permutation of the candidates");
    }
    if (v.weight < 0) out.push_back(where + ": negative weight");
    if (!voters.insert(v.voter_name).second) {
      out.push_back(where + ": duplicate voter name '" + v.voter_name + "'");
    }
  }
  for (size_t i = 0; i < s.pending.size(); ++i) {
    const PendingVoter& v = s.pending[i];
    const std::string where = "pending[" + std::to_string(i) + "]";
    if (v.weight < 0) out.push_back(where + ": negative weight");
    if (!voters.insert(v.voter_name).second) {
      out.push_back(where + ": duplicate voter name '" + v.voter_name + "'");
    }
  }

  if (!IsPermutation(oms.sigma, m)) {
    out.push_back("sigma is not a permutation of the candidates");
  }
  if (oms.d < 0 || oms.d >= m) {
    out.push_back("distinguished candidate is not a candidate");
  }

  if (s.pending.empty()) {
    out.push_back("no pending voters: online problems need a current voter u");
  } else if (variant.mode == QuantifierMode::kOnline &&
             !s.pending.front().is_manipulator) {
    out.push_back("u must be coalition member");
  }

  if (variant.direction == Direction::kDestructive &&
      variant.target == Target::kPinpoint) {
    out.push_back("pinpoint target is only defined for constructive problems");
  }

  if (variant.manipulator_bound) {
    const int k = *variant.manipulator_bound;
    if (k < 1) {
      out.push_back("manipulator bound must be positive");
    } else if (s.NumPendingManipulators() > k) {
      out.push_back("manipulators from u onward (" +
                    std::to_string(s.NumPendingManipulators()) +
                    ") exceed bound k=" + std::to_string(k));
    }
  }

  if (!variant.weighted) {
    const bool unit =
        std::all_of(s.cast.begin(), s.cast.end(),
                    [](const CastVote& v) { return v.weight == 1; }) &&
        std::all_of(s.pending.begin(), s.pending.end(),
                    [](const PendingVoter& v) { return v.weight == 1; });
    if (!unit) out.push_back("unweighted problem requires all weights to be 1");
  }
  return out;
}

void ValidateOrThrow(const Oms& oms, const ProblemVariant& variant) {
  std::vector<std::string> v = Validate(oms, variant);
  if (v.empty()) return;
  std::string msg = "invalid instance:";
  for (const std::string& s : v) msg += "\n  " + s;
  throw InvalidInstanceError(msg);
}

std::pair<Oms, ProblemVariant> EmbedStandardWcm(
    const std::vector<std::string>& candidates,
    const std::vector<WeightedVote>& nonmanipulators,
    const std::vector<Weight>& manipulator_weights, CandidateIndex target,
    Direction direction) {
  if (manipulator_weights.empty()) {
    throw InvalidInstanceError("embedding requires a nonempty coalition");
  }
  const int m = static_cast<int>(candidates.size());
  if (target < 0 || target >= m) {
    throw InvalidInstanceError("target is not a candidate");
  }
  Oms oms;
  oms.snapshot.candidates = candidates;
  for (size_t i = 0; i < nonmanipulators.size(); ++i) {
    oms.snapshot.cast.push_back({"n" + std::to_string(i + 1),
                                 nonmanipulators[i].weight,
                                 nonmanipulators[i].vote});
  }
  for (size_t i = 0; i < manipulator_weights.size(); ++i) {
    oms.snapshot.pending.push_back(
        {"m" + std::to_string(i + 1), manipulator_weights[i], true});
  }
  std::vector<CandidateIndex> rest;
  for (int c = 0; c < m; ++c) {
    if (c != target) rest.push_back(c);
  }
  if (direction == Direction::kConstructive) {
    oms.sigma.push_back(target);
    oms.sigma.insert(oms.sigma.end(), rest.begin(), rest.end());
  } else {
    oms.sigma = rest;
    oms.sigma.push_back(target);
  }
  oms.d = target;

  ProblemVariant variant;
  variant.direction = direction;
  variant.weighted = true;
  return {std::move(oms), variant};
}

}  // namespace onlinemanip

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

#ifndef ONLINEMANIP_ELECTION_H_
#define ONLINEMANIP_ELECTION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace onlinemanip {

// Voter weights and scores. Reduction outputs routinely exceed 64 bits.
using Weight = boost::multiprecision::cpp_int;

// Candidates are referred to by their index into ElectionSnapshot::candidates.
using CandidateIndex = int;

// A total order over the candidate indices, most preferred first.
using PreferenceOrder = std::vector<CandidateIndex>;

// Sorted, duplicate-free list of candidate indices.
using CandidateSet = std::vector<CandidateIndex>;

struct CastVote {
  std::string voter_name;
  Weight weight = 1;
  PreferenceOrder vote;

  friend bool operator==(const CastVote&, const CastVote&) = default;
};

struct PendingVoter {
  std::string voter_name;
  Weight weight = 1;
  bool is_manipulator = false;

  friend bool operator==(const PendingVoter&, const PendingVoter&) = default;
};

// Voters in the order they vote: `cast` already voted, `pending` are still to
// come. When non-empty, pending[0] is the voter u whose move is being decided.
struct ElectionSnapshot {
  std::vector<std::string> candidates;
  std::vector<CastVote> cast;
  std::vector<PendingVoter> pending;

  int num_candidates() const { return static_cast<int>(candidates.size()); }
  std::optional<CandidateIndex> FindCandidate(std::string_view name) const;
  int NumPendingManipulators() const;

  friend bool operator==(const ElectionSnapshot&, const ElectionSnapshot&) =
      default;
};

// Online manipulation setting: snapshot, coalition preference and the
// distinguished candidate.
struct Oms {
  ElectionSnapshot snapshot;
  PreferenceOrder sigma;
  CandidateIndex d = 0;

  friend bool operator==(const Oms&, const Oms&) = default;
};

enum class Direction { kConstructive, kDestructive };
enum class Target { kSegment, kPinpoint };
enum class WinnerModel { kNonunique, kUnique };
enum class QuantifierMode { kOnline, kFreeform, kScheduleRobust };

struct ProblemVariant {
  Direction direction = Direction::kConstructive;
  Target target = Target::kSegment;
  WinnerModel winner_model = WinnerModel::kNonunique;
  QuantifierMode mode = QuantifierMode::kOnline;
  bool weighted = true;
  // Upper bound on the number of manipulators from u onward.
  std::optional<int> manipulator_bound;

  friend bool operator==(const ProblemVariant&, const ProblemVariant&) =
      default;
};

// Maps the votes cast from u onward (a reachable history) to the coalition's
// vote at that history. Only histories ending at a manipulator's turn appear.
using StrategyTrace = std::map<std::vector<PreferenceOrder>, PreferenceOrder>;

struct Decision {
  bool answer = false;
  // u's vote, present when the answer is yes and u is a coalition member.
  std::optional<PreferenceOrder> first_move;
  std::optional<StrategyTrace> trace;
  // Schedule-robust witness: one vote per pending manipulator, in pending
  // order, fixed before any remaining voter moves.
  std::vector<PreferenceOrder> upfront_votes;
  std::uint64_t nodes = 0;
};

std::string_view ToString(Direction d);
std::string_view ToString(Target t);
std::string_view ToString(WinnerModel w);
std::string_view ToString(QuantifierMode q);

// True iff `order` is a permutation of 0..m-1.
bool IsPermutation(const PreferenceOrder& order, int m);

// Constructive/Segment: {c : c >=_sigma d}. Constructive/Pinpoint: {d}.
// Destructive/Segment: the forbidden set {c : d >=_sigma c}; the goal is a
// winner set disjoint from it. Destructive/Pinpoint is undefined and rejected.
CandidateSet GoalSet(const PreferenceOrder& sigma, CandidateIndex d,
                     Direction direction, Target target);

// Leaf test shared by the solver and the replayer. `goal` is the result of
// GoalSet for the same direction.
bool GoalMet(const CandidateSet& winners, const CandidateSet& goal,
             Direction direction, WinnerModel winner_model);

// Checks every structural invariant of `oms` against `variant`. Returns
// human-readable violations; empty means valid.
std::vector<std::string> Validate(const Oms& oms,
                                  const ProblemVariant& variant);

// Throws InvalidInstanceError listing all violations, if any.
void ValidateOrThrow(const Oms& oms, const ProblemVariant& variant);

struct WeightedVote {
  Weight weight = 1;
  PreferenceOrder vote;
};

// Embeds a standard (simultaneous) weighted coalitional manipulation instance:
// nonmanipulators become cast votes, manipulators become pending voters with
// u first. Constructive puts `target` on top of sigma; destructive at the
// bottom. Throws InvalidInstanceError for an empty coalition.
std::pair<Oms, ProblemVariant> EmbedStandardWcm(
    const std::vector<std::string>& candidates,
    const std::vector<WeightedVote>& nonmanipulators,
    const std::vector<Weight>& manipulator_weights, CandidateIndex target,
    Direction direction = Direction::kConstructive);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_ELECTION_H_

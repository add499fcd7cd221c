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

// Seeded random instances and exhaustive instance grids. Votes are drawn
// uniformly from all m! orders, weights uniformly from [min, max].

#ifndef ONLINEMANIP_GENERATE_H_
#define ONLINEMANIP_GENERATE_H_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "onlinemanip/election.h"
#include "onlinemanip/instance.h"
#include "onlinemanip/reductions.h"
#include "onlinemanip/rules.h"

namespace onlinemanip {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi]. Portable: the same seed gives the same values
// with every standard library.
std::int64_t UniformInt(Rng& rng, std::int64_t lo, std::int64_t hi);

// Uniform permutation of 0..m-1 (Fisher-Yates over UniformInt).
PreferenceOrder RandomOrder(Rng& rng, int m);

// Candidate names "a", "b", ... for m <= 26, then "c01", "c02", ...
std::vector<std::string> DefaultCandidateNames(int m);

struct GenOptions {
  int m = 3;
  int cast = 1;
  int pending = 2;
  VotingRule rule = Plurality{};
  std::int64_t min_weight = 1;
  std::int64_t max_weight = 1;
  // Probability that a pending voter after u is a coalition member. u is
  // always one, except in freeform mode where u's role is drawn too.
  double manipulator_probability = 0.5;
  ProblemVariant variant;
  // Otherwise sigma is the identity and d the first candidate.
  bool random_sigma = true;
  bool random_d = true;
};

// Inconsistencies that make GenOptions unusable (m < k, min > max, ...).
std::vector<std::string> CheckGenOptions(const GenOptions& options);

// Throws InvalidInstanceError if CheckGenOptions reports anything.
Instance RandomInstance(const GenOptions& options, Rng& rng);

// Random Partition instance with `z` items in [1, max_weight] and an even
// total (the last item is bumped by one when needed, staying <= max_weight+1).
PartitionInstance RandomPartition(Rng& rng, int z, std::int64_t max_weight);

// Random QBF with `blocks` blocks of 1..max_per_block variables each. Every
// variable occurs in the matrix, so every block is inhabited.
QbfInstance RandomQbf(Rng& rng, int blocks, int max_per_block);

// Exhaustive grid of snapshots: every split of at most `max_voters` voters
// into cast and pending (pending >= 1), every cast vote order and weight,
// every pending weight and every role pattern with u a coalition member.
struct SnapshotGrid {
  int m = 2;
  int max_voters = 2;
  int max_cast = -1;  // -1: no limit beyond max_voters - 1
  int max_pending = -1;
  std::vector<Weight> cast_weights = {1};
  std::vector<Weight> pending_weights = {1};
};

// Calls `fn` for each snapshot; stops early when `fn` returns false.
// Returns the number of snapshots visited.
std::uint64_t ForEachSnapshot(
    const SnapshotGrid& grid,
    const std::function<bool(const ElectionSnapshot&)>& fn);

// Every multiset of `max_items` or fewer integers in [1, max_weight] with an
// even total, as non-decreasing sequences.
std::vector<PartitionInstance> PartitionGrid(int max_items,
                                             std::int64_t max_weight);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_GENERATE_H_

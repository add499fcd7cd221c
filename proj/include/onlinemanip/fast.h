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

// Rule-specific deciders for the online manipulation problems that admit
// them. Each one answers exactly what Solve() answers on the same instance;
// the crosscheck grids enforce that.

#ifndef ONLINEMANIP_FAST_H_
#define ONLINEMANIP_FAST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onlinemanip/election.h"
#include "onlinemanip/errors.h"
#include "onlinemanip/instance.h"
#include "onlinemanip/rules.h"

namespace onlinemanip {

// Thrown by FastSolve for (rule, variant) combinations without a fast
// algorithm.
class NoFastAlgorithmError : public InvalidInstanceError {
 public:
  using InvalidInstanceError::InvalidInstanceError;
};

// x ⊖ y = max(x - y, 0).
Weight ProperSubtract(const Weight& x, const Weight& y);

// Constructive, nonunique-winner, weighted plurality: the coalition piles all
// remaining weight on its strongest goal candidate, the adversary on its
// strongest non-goal candidate.
bool PluralityWcm(const Oms& oms, const VotingRule& rule = Plurality{});

// Destructive counterpart: some non-forbidden candidate must strictly beat
// every forbidden one.
bool PluralityDwcm(const Oms& oms, const VotingRule& rule = Plurality{});

// Unweighted k-approval / k-veto, constructive, nonunique. Simulates the
// remaining voters: goal candidates sorted by descending current approvals,
// then the rest by ascending approvals (ties by candidate index); coalition
// members approve the first ℓ, everyone else the last ℓ.
bool ApprovalVetoUcmGreedy(const Oms& oms, const VotingRule& rule);

// Unweighted 1-veto, constructive, nonunique: the threshold characterization.
bool Veto1Threshold(const Oms& oms, const VotingRule& rule = KVeto{1});

struct ThresholdReport {
  Weight t1 = 0;
  Weight t2 = 0;
  // Coalition weights grouped by the candidate they veto, for the candidates
  // ranked below d (sigma order).
  std::vector<std::vector<Weight>> coalition_partition;
  // Nonmanipulator weights grouped likewise over d and the candidates above.
  std::vector<std::vector<Weight>> adversary_partition;
  // Candidates for the groups above, in the same order.
  std::vector<CandidateIndex> coalition_bins;
  std::vector<CandidateIndex> adversary_bins;
};

struct VetoWcmResult {
  bool answer = false;
  ThresholdReport report;
};

// Weighted veto, constructive, nonunique: accept iff t1 <= t2 where t1 (t2)
// is the least threshold the coalition (the adversary) can hold the
// candidates below d (at or above d) to.
VetoWcmResult VetoWcmPnp(const Oms& oms, const VotingRule& rule = KVeto{1},
                         std::uint64_t state_budget = 10'000'000);

// Can `weights` be split into |demands| groups (each weight in exactly one
// group) with group sum j >= demands[j] for every j? Exact search with
// memoization on (next weight, clamped residual demands). Throws
// ResourceLimitError past `state_budget` states.
bool PartitionFeasible(const std::vector<Weight>& weights,
                       const std::vector<Weight>& demands,
                       std::uint64_t state_budget = 10'000'000);

// As PartitionFeasible, returning group indices parallel to `weights`.
std::optional<std::vector<int>> FindPartition(
    const std::vector<Weight>& weights, const std::vector<Weight>& demands,
    std::uint64_t state_budget = 10'000'000);

enum class RuleClass { kPolynomialTime, kNPHard };

std::string_view ToString(RuleClass c);

// Polynomial time iff alpha_2 == alpha_m (always for m <= 2). Throws
// InvalidInstanceError on a non-monotone or empty vector.
RuleClass ClassifyScoringRule(const std::vector<Weight>& alpha);

struct FastResult {
  bool answer = false;
  std::string algorithm;
  std::optional<ThresholdReport> thresholds;
};

// Picks the applicable fast algorithm for the instance. Throws
// NoFastAlgorithmError listing the supported combinations otherwise.
FastResult FastSolve(const Instance& instance);

// Human-readable list of what FastSolve supports.
std::string SupportedFastCombinations();

}  // namespace onlinemanip

#endif  // ONLINEMANIP_FAST_H_

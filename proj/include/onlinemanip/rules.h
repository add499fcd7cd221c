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

#ifndef ONLINEMANIP_RULES_H_
#define ONLINEMANIP_RULES_H_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "onlinemanip/election.h"

namespace onlinemanip {

struct Plurality {
  friend bool operator==(const Plurality&, const Plurality&) = default;
};
struct KApproval {
  int k = 1;
  friend bool operator==(const KApproval&, const KApproval&) = default;
};
struct KVeto {
  int k = 1;
  friend bool operator==(const KVeto&, const KVeto&) = default;
};
// Explicit scoring vector alpha_1 >= ... >= alpha_m >= 0.
struct GeneralScoring {
  std::vector<Weight> alpha;
  friend bool operator==(const GeneralScoring&, const GeneralScoring&) =
      default;
};
// The formula-driven system: the lexicographically least candidate name is
// read as a tiered formula, voters' bottom-ranked candidates assign its
// variables, and either everyone wins or everyone loses.
struct TieredRule {
  friend bool operator==(const TieredRule&, const TieredRule&) = default;
};

using VotingRule =
    std::variant<Plurality, KApproval, KVeto, GeneralScoring, TieredRule>;

std::string RuleName(const VotingRule& rule);

bool IsScoringRule(const VotingRule& rule);

// Problems with applying `rule` to m candidates (k > m, bad alpha, ...).
std::vector<std::string> ValidateRule(const VotingRule& rule, int m);

// The m-candidate scoring vector. Throws InvalidInstanceError for the tiered
// system or when the rule does not apply to m candidates.
std::vector<Weight> ScoringVectorFor(const VotingRule& rule, int m);

// Number of leading 1-positions for rules whose vector is (1,...,1,0,...,0):
// k for k-approval, m-k for k-veto, 1 for plurality. Throws otherwise.
int ApprovalsPerVote(const VotingRule& rule, int m);

// score(c) = sum over votes of weight * alpha[pos(c)]. Scoring rules only.
std::vector<Weight> Scores(const VotingRule& rule, int m,
                           std::span<const CastVote> votes);

// Indices of the top-scoring candidates.
CandidateSet ArgMax(const std::vector<Weight>& scores);

// Winner set of any rule. Scoring rules always return a nonempty set; the
// tiered system returns either all candidates or none.
CandidateSet Winners(const VotingRule& rule,
                     const std::vector<std::string>& candidates,
                     std::span<const CastVote> votes);

CandidateSet TieredWinners(const std::vector<std::string>& candidates,
                           std::span<const CastVote> votes);

// Bit vector of length `width` read off the 2*width least preferred
// candidates of `vote` once `c` is removed. Throws InvalidInstanceError if
// fewer than 1 + 2*width candidates are present.
std::vector<bool> DecodeAssignment(const PreferenceOrder& vote,
                                   const std::vector<std::string>& candidates,
                                   CandidateIndex c, int width);

// Index of the bytewise-least candidate name.
CandidateIndex LeastNamedCandidate(const std::vector<std::string>& candidates);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_RULES_H_

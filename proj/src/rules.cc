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

#include "onlinemanip/rules.h"

#include <algorithm>
#include <numeric>

#include "onlinemanip/errors.h"
#include "onlinemanip/formula.h"

namespace onlinemanip {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Weight> Ones(int ones, int m) {
  std::vector<Weight> alpha(m, 0);
  std::fill(alpha.begin(), alpha.begin() + ones, Weight(1));
  return alpha;
}

}  // namespace

std::string RuleName(const VotingRule& rule) {
  return std::visit(
      Overloaded{
          [](const Plurality&) -> std::string { return "plurality"; },
          [](const KApproval& r) { return std::to_string(r.k) + "-approval"; },
          [](const KVeto& r) { return std::to_string(r.k) + "-veto"; },
          [](const GeneralScoring& r) {
            std::string s = "scoring(";
            for (size_t i = 0; i < r.alpha.size(); ++i) {
              if (i) s += ",";
              s += r.alpha[i].str();
            }
            return s + ")";
          },
          [](const TieredRule&) -> std::string { return "tiered"; }},
      rule);
}

bool IsScoringRule(const VotingRule& rule) {
  return !std::holds_alternative<TieredRule>(rule);
}

std::vector<std::string> ValidateRule(const VotingRule& rule, int m) {
  std::vector<std::string> out;
  std::visit(
      Overloaded{
          [](const Plurality&) {},
          [&](const KApproval& r) {
            if (r.k < 1) out.push_back("k-approval needs k >= 1");
            if (r.k > m) out.push_back("k-approval needs m >= k");
          },
          [&](const KVeto& r) {
            if (r.k < 1) out.push_back("k-veto needs k >= 1");
            if (r.k > m) out.push_back("k-veto needs m >= k");
          },
          [&](const GeneralScoring& r) {
            if (static_cast<int>(r.alpha.size()) != m) {
              out.push_back("scoring vector length " +
                            std::to_string(r.alpha.size()) +
                            " does not match m=" + std::to_string(m));
            }
            for (size_t i = 0; i < r.alpha.size(); ++i) {
              if (r.alpha[i] < 0) out.push_back("scoring vector is negative");
              if (i > 0 && r.alpha[i] > r.alpha[i - 1]) {
                out.push_back("scoring vector is not nonincreasing");
              }
            }
          },
          [](const TieredRule&) {}},
      rule);
  return out;
}

std::vector<Weight> ScoringVectorFor(const VotingRule& rule, int m) {
  if (!IsScoringRule(rule)) {
    throw InvalidInstanceError("the tiered system has no scoring vector");
  }
  std::vector<std::string> problems = ValidateRule(rule, m);
  if (!problems.empty()) throw InvalidInstanceError(problems.front());
  return std::visit(
      Overloaded{
          [m](const Plurality&) { return Ones(1, m); },
          [m](const KApproval& r) { return Ones(r.k, m); },
          [m](const KVeto& r) { return Ones(m - r.k, m); },
          [](const GeneralScoring& r) { return r.alpha; },
          [](const TieredRule&) { return std::vector<Weight>{}; }},
      rule);
}

int ApprovalsPerVote(const VotingRule& rule, int m) {
  if (std::holds_alternative<Plurality>(rule)) return 1;
  if (auto* r = std::get_if<KApproval>(&rule)) return r->k;
  if (auto* r = std::get_if<KVeto>(&rule)) return m - r->k;
  throw InvalidInstanceError("rule " + RuleName(rule) +
                             " is not k-approval or k-veto");
}

std::vector<Weight> Scores(const VotingRule& rule, int m,
                           std::span<const CastVote> votes) {
  const std::vector<Weight> alpha = ScoringVectorFor(rule, m);
  std::vector<Weight> score(m, 0);
  for (const CastVote& v : votes) {
    if (!IsPermutation(v.vote, m)) {
      throw InvalidInstanceError("vote of '" + v.voter_name +
                                 "' is not a permutation of the candidates");
    }
    for (int pos = 0; pos < m; ++pos) {
      if (alpha[pos] != 0) score[v.vote[pos]] += v.weight * alpha[pos];
    }
  }
  return score;
}

CandidateSet ArgMax(const std::vector<Weight>& scores) {
  CandidateSet out;
  if (scores.empty()) return out;
  const Weight& best = *std::max_element(scores.begin(), scores.end());
  for (int c = 0; c < static_cast<int>(scores.size()); ++c) {
    if (scores[c] == best) out.push_back(c);
  }
  return out;
}

CandidateSet Winners(const VotingRule& rule,
                     const std::vector<std::string>& candidates,
                     std::span<const CastVote> votes) {
  if (candidates.empty()) throw InvalidInstanceError("empty candidate set");
  if (!IsScoringRule(rule)) return TieredWinners(candidates, votes);
  return ArgMax(
      Scores(rule, static_cast<int>(candidates.size()), votes));
}

CandidateIndex LeastNamedCandidate(const std::vector<std::string>& candidates) {
  return static_cast<CandidateIndex>(
      std::min_element(candidates.begin(), candidates.end()) -
      candidates.begin());
}

std::vector<bool> DecodeAssignment(const PreferenceOrder& vote,
                                   const std::vector<std::string>& candidates,
                                   CandidateIndex c, int width) {
  PreferenceOrder rest;
  rest.reserve(vote.size());
  for (CandidateIndex x : vote) {
    if (x != c) rest.push_back(x);
  }
  if (width < 0 || static_cast<int>(rest.size()) < 2 * width) {
    throw InvalidInstanceError("vote too short to decode " +
                               std::to_string(width) + " bits");
  }
  // bottom[0] is the least preferred remaining candidate.
  std::vector<CandidateIndex> bottom(rest.rbegin(), rest.rbegin() + 2 * width);
  std::vector<bool> bits(width);
  for (int l = 0; l < width; ++l) {
    bits[l] = !(candidates.at(bottom[2 * l]) < candidates.at(bottom[2 * l + 1]));
  }
  return bits;
}

CandidateSet TieredWinners(const std::vector<std::string>& candidates,
                           std::span<const CastVote> votes) {
  const int m = static_cast<int>(candidates.size());
  if (m == 0) return {};
  const CandidateIndex c = LeastNamedCandidate(candidates);

  TieredFormula formula;
  try {
    formula = TieredFormula::Parse(candidates[c]);
  } catch (const ParseError&) {
    return {};
  }
  if (static_cast<int>(votes.size()) < formula.blocks()) return {};
  if (m < 1 + 2 * formula.width()) return {};
  if (!formula.AllBlocksInhabited()) return {};

  std::vector<const CastVote*> order;
  order.reserve(votes.size());
  for (const CastVote& v : votes) order.push_back(&v);
  std::sort(order.begin(), order.end(),
            [](const CastVote* a, const CastVote* b) {
              if (a->voter_name != b->voter_name) {
                return a->voter_name < b->voter_name;
              }
              return a->vote < b->vote;
            });

  std::vector<std::vector<bool>> assignment;
  for (int i = 0; i < formula.blocks(); ++i) {
    if (!IsPermutation(order[i]->vote, m)) return {};
    assignment.push_back(
        DecodeAssignment(order[i]->vote, candidates, c, formula.width()));
  }
  if (!formula.Evaluate(assignment)) return {};
  CandidateSet all(m);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace onlinemanip

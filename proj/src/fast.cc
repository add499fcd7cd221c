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

#include "onlinemanip/fast.h"

#include <algorithm>
#include <numeric>
#include <set>

namespace onlinemanip {
namespace {

// Number of leading ones if alpha is (1,...,1,0,...,0).
std::optional<int> ZeroOneApprovals(const std::vector<Weight>& alpha) {
  int ones = 0;
  while (ones < static_cast<int>(alpha.size()) && alpha[ones] == 1) ++ones;
  for (size_t i = ones; i < alpha.size(); ++i) {
    if (alpha[i] != 0) return std::nullopt;
  }
  return ones;
}

// alpha = (a, 0, ..., 0) with a > 0; returns a.
std::optional<Weight> PluralityScale(const std::vector<Weight>& alpha) {
  if (alpha.empty() || alpha[0] <= 0) return std::nullopt;
  for (size_t i = 1; i < alpha.size(); ++i) {
    if (alpha[i] != 0) return std::nullopt;
  }
  return alpha[0];
}

bool IsVetoVector(const std::vector<Weight>& alpha) {
  const int m = static_cast<int>(alpha.size());
  return m >= 2 && ZeroOneApprovals(alpha) == m - 1;
}

std::vector<Weight> RuleVector(const Oms& oms, const VotingRule& rule) {
  if (!IsScoringRule(rule)) {
    throw InvalidInstanceError("fast algorithms need a scoring rule");
  }
  return ScoringVectorFor(rule, oms.snapshot.num_candidates());
}

void RequireCurrentManipulator(const Oms& oms) {
  const auto& p = oms.snapshot.pending;
  if (p.empty() || !p.front().is_manipulator) {
    throw InvalidInstanceError("u must be coalition member");
  }
}

void RequireUnweighted(const Oms& oms) {
  const ElectionSnapshot& s = oms.snapshot;
  for (const CastVote& v : s.cast) {
    if (v.weight != 1) throw InvalidInstanceError("weighted instance");
  }
  for (const PendingVoter& v : s.pending) {
    if (v.weight != 1) throw InvalidInstanceError("weighted instance");
  }
}

void RequireWellFormed(const Oms& oms) {
  ProblemVariant v;
  std::vector<std::string> problems = Validate(oms, v);
  if (!problems.empty()) throw InvalidInstanceError(problems.front());
}

struct PendingTotals {
  Weight coalition = 0;
  Weight adversary = 0;
};

PendingTotals Totals(const ElectionSnapshot& s) {
  PendingTotals t;
  for (const PendingVoter& v : s.pending) {
    (v.is_manipulator ? t.coalition : t.adversary) += v.weight;
  }
  return t;
}

// Position of d in sigma (0-based).
int SigmaRank(const Oms& oms) {
  return static_cast<int>(std::find(oms.sigma.begin(), oms.sigma.end(),
                                    oms.d) -
                          oms.sigma.begin());
}

class PartitionSearch {
 public:
  PartitionSearch(const std::vector<Weight>& weights,
                  const std::vector<Weight>& demands, std::uint64_t budget)
      : demands_(demands), budget_(budget) {
    order_.resize(weights.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return weights[a] > weights[b]; });
    for (int i : order_) sorted_.push_back(weights[i]);
    suffix_.assign(sorted_.size() + 1, 0);
    for (int i = static_cast<int>(sorted_.size()) - 1; i >= 0; --i) {
      suffix_[i] = suffix_[i + 1] + sorted_[i];
    }
  }

  std::optional<std::vector<int>> Run() {
    const size_t n = sorted_.size();
    if (demands_.empty()) {
      if (n == 0) return std::vector<int>{};
      return std::nullopt;
    }
    std::vector<Weight> residual = demands_;
    for (Weight& r : residual) r = r < 0 ? Weight(0) : r;
    std::vector<int> group(n, 0);
    if (!Dfs(0, residual, group)) return std::nullopt;
    std::vector<int> out(n);
    for (size_t k = 0; k < n; ++k) out[order_[k]] = group[k];
    return out;
  }

 private:
  bool Dfs(size_t k, std::vector<Weight>& residual, std::vector<int>& group) {
    if (++states_ > budget_) {
      throw ResourceLimitError("partition search exceeded " +
                               std::to_string(budget_) + " states");
    }
    Weight outstanding = 0;
    for (const Weight& r : residual) outstanding += r;
    if (outstanding == 0) {
      // Leftover weights can go anywhere.
      for (size_t i = k; i < group.size(); ++i) group[i] = 0;
      return true;
    }
    if (k == sorted_.size() || suffix_[k] < outstanding) return false;

    std::vector<Weight> key = residual;
    std::sort(key.begin(), key.end());
    if (failed_.count({k, key})) return false;

    std::set<Weight> tried;
    for (size_t j = 0; j < residual.size(); ++j) {
      // Groups with equal residual demand are interchangeable.
      if (!tried.insert(residual[j]).second) continue;
      const Weight before = residual[j];
      residual[j] = ProperSubtract(before, sorted_[k]);
      group[k] = static_cast<int>(j);
      const bool ok = Dfs(k + 1, residual, group);
      residual[j] = before;
      if (ok) return true;
    }
    failed_.insert({k, std::move(key)});
    return false;
  }

  std::vector<Weight> demands_;
  std::uint64_t budget_;
  std::uint64_t states_ = 0;
  std::vector<int> order_;
  std::vector<Weight> sorted_;
  std::vector<Weight> suffix_;
  std::set<std::pair<size_t, std::vector<Weight>>> failed_;
};

struct Threshold {
  Weight t = 0;
  std::vector<int> groups;
};

// Least t in [0, hi] with FindPartition(weights, maxscore ⊖ t) feasible.
// Requires feasibility at hi.
Threshold MinimalThreshold(const std::vector<Weight>& weights,
                           const std::vector<Weight>& maxscores,
                           const Weight& hi, std::uint64_t budget) {
  auto probe = [&](const Weight& t) {
    std::vector<Weight> demands;
    for (const Weight& s : maxscores) demands.push_back(ProperSubtract(s, t));
    return FindPartition(weights, demands, budget);
  };
  Weight lo = 0;
  Weight high = hi;
  std::optional<std::vector<int>> best = probe(high);
  if (!best) throw InvalidInstanceError("threshold search: infeasible bound");
  while (lo < high) {
    const Weight mid = (lo + high) / 2;
    if (auto p = probe(mid)) {
      high = mid;
      best = std::move(p);
    } else {
      lo = mid + 1;
    }
  }
  return {high, std::move(*best)};
}

std::vector<std::vector<Weight>> Group(const std::vector<Weight>& weights,
                                       const std::vector<int>& groups,
                                       size_t bins) {
  std::vector<std::vector<Weight>> out(bins);
  for (size_t i = 0; i < weights.size(); ++i) {
    out[groups[i]].push_back(weights[i]);
  }
  return out;
}

}  // namespace

Weight ProperSubtract(const Weight& x, const Weight& y) {
  return x > y ? Weight(x - y) : Weight(0);
}

bool PluralityWcm(const Oms& oms, const VotingRule& rule) {
  RequireWellFormed(oms);
  const auto scale = PluralityScale(RuleVector(oms, rule));
  if (!scale) throw InvalidInstanceError("rule is not plurality");
  RequireCurrentManipulator(oms);

  const ElectionSnapshot& s = oms.snapshot;
  const std::vector<Weight> score =
      Scores(rule, s.num_candidates(), s.cast);
  const PendingTotals totals = Totals(s);
  const CandidateSet goal =
      GoalSet(oms.sigma, oms.d, Direction::kConstructive, Target::kSegment);

  std::optional<Weight> best_goal, best_other;
  for (CandidateIndex c = 0; c < s.num_candidates(); ++c) {
    auto& slot = std::binary_search(goal.begin(), goal.end(), c) ? best_goal
                                                                  : best_other;
    if (!slot || score[c] > *slot) slot = score[c];
  }
  if (!best_other) return true;
  return *best_goal + *scale * totals.coalition >=
         *best_other + *scale * totals.adversary;
}

bool PluralityDwcm(const Oms& oms, const VotingRule& rule) {
  RequireWellFormed(oms);
  const auto scale = PluralityScale(RuleVector(oms, rule));
  if (!scale) throw InvalidInstanceError("rule is not plurality");
  RequireCurrentManipulator(oms);

  const ElectionSnapshot& s = oms.snapshot;
  const std::vector<Weight> score =
      Scores(rule, s.num_candidates(), s.cast);
  const PendingTotals totals = Totals(s);
  const CandidateSet forbidden =
      GoalSet(oms.sigma, oms.d, Direction::kDestructive, Target::kSegment);

  std::optional<Weight> best_good, best_forbidden;
  for (CandidateIndex c = 0; c < s.num_candidates(); ++c) {
    auto& slot = std::binary_search(forbidden.begin(), forbidden.end(), c)
                     ? best_forbidden
                     : best_good;
    if (!slot || score[c] > *slot) slot = score[c];
  }
  // Some forbidden candidate always wins when nothing else is on the ballot.
  if (!best_good) return false;
  return *best_good + *scale * totals.coalition >
         *best_forbidden + *scale * totals.adversary;
}

bool ApprovalVetoUcmGreedy(const Oms& oms, const VotingRule& rule) {
  RequireWellFormed(oms);
  const std::vector<Weight> alpha = RuleVector(oms, rule);
  const auto approvals_per_vote = ZeroOneApprovals(alpha);
  if (!approvals_per_vote) {
    throw InvalidInstanceError("rule is not k-approval or k-veto");
  }
  RequireUnweighted(oms);
  RequireCurrentManipulator(oms);

  const ElectionSnapshot& s = oms.snapshot;
  const int m = s.num_candidates();
  const int l = *approvals_per_vote;
  std::vector<Weight> approvals = Scores(rule, m, s.cast);
  const CandidateSet goal =
      GoalSet(oms.sigma, oms.d, Direction::kConstructive, Target::kSegment);
  std::vector<CandidateIndex> good, rest;
  for (CandidateIndex c = 0; c < m; ++c) {
    (std::binary_search(goal.begin(), goal.end(), c) ? good : rest).push_back(c);
  }

  for (const PendingVoter& voter : s.pending) {
    std::stable_sort(good.begin(), good.end(), [&](int a, int b) {
      if (approvals[a] != approvals[b]) return approvals[a] > approvals[b];
      return a < b;
    });
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
      if (approvals[a] != approvals[b]) return approvals[a] < approvals[b];
      return a < b;
    });
    std::vector<CandidateIndex> order = good;
    order.insert(order.end(), rest.begin(), rest.end());
    if (voter.is_manipulator) {
      for (int i = 0; i < l; ++i) approvals[order[i]] += 1;
    } else {
      for (int i = m - l; i < m; ++i) approvals[order[i]] += 1;
    }
  }
  const CandidateSet winners = ArgMax(approvals);
  return GoalMet(winners, goal, Direction::kConstructive,
                 WinnerModel::kNonunique);
}

bool Veto1Threshold(const Oms& oms, const VotingRule& rule) {
  RequireWellFormed(oms);
  if (!IsVetoVector(RuleVector(oms, rule))) {
    throw InvalidInstanceError("rule is not 1-veto");
  }
  RequireUnweighted(oms);
  RequireCurrentManipulator(oms);

  const ElectionSnapshot& s = oms.snapshot;
  const int m = s.num_candidates();
  const int rank = SigmaRank(oms);
  if (rank == m - 1) return true;

  const std::vector<Weight> score = Scores(rule, m, s.cast);
  const Weight voters_left = static_cast<long>(s.pending.size());
  const Weight n1 = s.NumPendingManipulators();
  const Weight n0 = voters_left - n1;

  std::vector<Weight> maxscore(m);
  Weight top = 0;
  for (CandidateIndex c = 0; c < m; ++c) {
    maxscore[c] = score[c] + voters_left;
    top = std::max(top, maxscore[c]);
  }
  for (Weight t = 0; t <= top; ++t) {
    Weight below = 0;
    for (int r = rank + 1; r < m; ++r) {
      below += ProperSubtract(maxscore[oms.sigma[r]], t);
    }
    if (below > n1) continue;
    Weight above = 0;
    for (int r = 0; r <= rank; ++r) {
      above += ProperSubtract(maxscore[oms.sigma[r]], t - 1);
    }
    if (above > n0) return true;
  }
  return false;
}

VetoWcmResult VetoWcmPnp(const Oms& oms, const VotingRule& rule,
                         std::uint64_t state_budget) {
  RequireWellFormed(oms);
  if (!IsVetoVector(RuleVector(oms, rule))) {
    throw InvalidInstanceError("rule is not veto");
  }
  RequireCurrentManipulator(oms);

  const ElectionSnapshot& s = oms.snapshot;
  const int m = s.num_candidates();
  const int rank = SigmaRank(oms);
  const std::vector<Weight> score = Scores(rule, m, s.cast);

  std::vector<Weight> coalition, adversary;
  Weight pending_total = 0;
  for (const PendingVoter& v : s.pending) {
    (v.is_manipulator ? coalition : adversary).push_back(v.weight);
    pending_total += v.weight;
  }

  VetoWcmResult out;
  ThresholdReport& rep = out.report;
  std::vector<Weight> bad_max, good_max;
  Weight hi = 0;
  for (int r = 0; r < m; ++r) {
    const CandidateIndex c = oms.sigma[r];
    const Weight maxscore = score[c] + pending_total;
    hi = std::max(hi, maxscore);
    if (r <= rank) {
      rep.adversary_bins.push_back(c);
      good_max.push_back(maxscore);
    } else {
      rep.coalition_bins.push_back(c);
      bad_max.push_back(maxscore);
    }
  }

  if (bad_max.empty()) {
    // d is ranked last: nothing to hold down.
    rep.t1 = 0;
  } else {
    Threshold t1 = MinimalThreshold(coalition, bad_max, hi, state_budget);
    rep.t1 = t1.t;
    rep.coalition_partition = Group(coalition, t1.groups, bad_max.size());
  }
  Threshold t2 = MinimalThreshold(adversary, good_max, hi, state_budget);
  rep.t2 = t2.t;
  rep.adversary_partition = Group(adversary, t2.groups, good_max.size());
  out.answer = rep.t1 <= rep.t2;
  return out;
}

bool PartitionFeasible(const std::vector<Weight>& weights,
                       const std::vector<Weight>& demands,
                       std::uint64_t state_budget) {
  return FindPartition(weights, demands, state_budget).has_value();
}

std::optional<std::vector<int>> FindPartition(
    const std::vector<Weight>& weights, const std::vector<Weight>& demands,
    std::uint64_t state_budget) {
  return PartitionSearch(weights, demands, state_budget).Run();
}

std::string_view ToString(RuleClass c) {
  return c == RuleClass::kPolynomialTime ? "polynomial_time" : "np_hard";
}

RuleClass ClassifyScoringRule(const std::vector<Weight>& alpha) {
  if (alpha.empty()) throw InvalidInstanceError("empty scoring vector");
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0 || (i > 0 && alpha[i] > alpha[i - 1])) {
      throw InvalidInstanceError("scoring vector must be nonincreasing and "
                                 "nonnegative");
    }
  }
  if (alpha.size() <= 2 || alpha[1] == alpha.back()) {
    return RuleClass::kPolynomialTime;
  }
  return RuleClass::kNPHard;
}

std::string SupportedFastCombinations() {
  return "online/segment/nonunique with u a coalition member, and one of:\n"
         "  plurality (any weights), constructive or destructive\n"
         "  k-approval or k-veto, unweighted, constructive\n"
         "  veto (1-veto), weighted, constructive";
}

FastResult FastSolve(const Instance& instance) {
  std::vector<std::string> problems = ValidateInstance(instance);
  if (!problems.empty()) throw InvalidInstanceError(problems.front());

  const ProblemVariant& v = instance.variant;
  auto unsupported = [&]() -> NoFastAlgorithmError {
    return NoFastAlgorithmError("no fast algorithm for rule " +
                                RuleName(instance.rule) + " with this variant;"
                                " supported: " + SupportedFastCombinations());
  };
  if (v.mode != QuantifierMode::kOnline || v.target != Target::kSegment ||
      v.winner_model != WinnerModel::kNonunique ||
      !IsScoringRule(instance.rule)) {
    throw unsupported();
  }
  const std::vector<Weight> alpha = ScoringVectorFor(
      instance.rule, instance.oms.snapshot.num_candidates());
  const bool constructive = v.direction == Direction::kConstructive;

  FastResult out;
  if (IsVetoVector(alpha) && v.weighted && constructive) {
    VetoWcmResult r = VetoWcmPnp(instance.oms, instance.rule);
    out.answer = r.answer;
    out.algorithm = "veto_wcm_pnp";
    out.thresholds = std::move(r.report);
    return out;
  }
  if (PluralityScale(alpha)) {
    out.algorithm = constructive ? "plurality_wcm" : "plurality_dwcm";
    out.answer = constructive ? PluralityWcm(instance.oms, instance.rule)
                              : PluralityDwcm(instance.oms, instance.rule);
    return out;
  }
  if (ZeroOneApprovals(alpha) && !v.weighted && constructive) {
    out.algorithm = "approval_veto_ucm_greedy";
    out.answer = ApprovalVetoUcmGreedy(instance.oms, instance.rule);
    return out;
  }
  throw unsupported();
}

}  // namespace onlinemanip

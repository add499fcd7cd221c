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

#include "onlinemanip/solver.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

#include "onlinemanip/errors.h"
#include "onlinemanip/formula.h"

namespace onlinemanip {
namespace {

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void Tick() {
    if (++used_ > limit_) {
      throw ResourceLimitError("node budget of " + std::to_string(limit_) +
                               " exhausted");
    }
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

struct SearchVoter {
  std::string name;
  Weight weight;
  bool existential = false;
  int forced = -1;  // index into the order table when the vote is fixed
};

struct MemoKey {
  int index;
  std::vector<Weight> scores;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  size_t operator()(const MemoKey& k) const {
    size_t h = std::hash<int>()(k.index);
    for (const Weight& w : k.scores) {
      h ^= boost::multiprecision::hash_value(w) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Everything the tiered system needs that does not depend on the votes.
struct TieredPlan {
  bool everyone_loses = true;
  CandidateIndex formula_candidate = 0;
  TieredFormula formula;
  // For block i (0-based): the voter that sets it, as a cast index or a
  // search position.
  struct Source {
    bool is_cast;
    int index;
  };
  std::vector<Source> sources;
};

class Game {
 public:
  Game(const ElectionSnapshot& snapshot, const VotingRule& rule,
       CandidateSet goal, Direction direction, WinnerModel winner_model,
       std::vector<SearchVoter> voters, const SolverOptions& options,
       const std::vector<PreferenceOrder>& orders, Budget& budget)
      : snapshot_(snapshot),
        goal_(std::move(goal)),
        direction_(direction),
        winner_model_(winner_model),
        voters_(std::move(voters)),
        options_(options),
        orders_(orders),
        budget_(budget),
        scoring_(IsScoringRule(rule)) {
    const int m = snapshot.num_candidates();
    if (scoring_) {
      const std::vector<Weight> alpha = ScoringVectorFor(rule, m);
      gains_.resize(orders_.size());
      std::map<std::vector<Weight>, int> classes;
      for (size_t p = 0; p < orders_.size(); ++p) {
        std::vector<Weight> effect(m, 0);
        for (int pos = 0; pos < m; ++pos) {
          if (alpha[pos] != 0) {
            gains_[p].push_back({orders_[p][pos], alpha[pos]});
            effect[orders_[p][pos]] = alpha[pos];
          }
        }
        if (classes.emplace(effect, static_cast<int>(p)).second) {
          class_reps_.push_back(static_cast<int>(p));
        }
      }
      initial_scores_ = Scores(rule, m, snapshot.cast);
    }
    all_.resize(orders_.size());
    std::iota(all_.begin(), all_.end(), 0);
    if (!scoring_) PlanTiered();
    for (const SearchVoter& v : voters_) {
      forced_lists_.push_back(v.forced >= 0 ? std::vector<int>{v.forced}
                                            : std::vector<int>{});
    }
  }

  const std::vector<Weight>& initial_scores() const { return initial_scores_; }
  int num_voters() const { return static_cast<int>(voters_.size()); }
  const SearchVoter& voter(int i) const { return voters_[i]; }

  bool Value(int index, const std::vector<Weight>& scores) {
    budget_.Tick();
    if (index == num_voters()) return Leaf(scores);

    const bool use_memo = scoring_ && options_.memoize;
    MemoKey key;
    if (use_memo) {
      key = {index, scores};
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }

    const bool existential = voters_[index].existential;
    bool result = !existential;
    for (int p : Children(index)) {
      chosen_.push_back(p);
      const bool v = Value(index + 1, Apply(scores, index, p));
      chosen_.pop_back();
      if (v == existential) {
        result = existential;
        break;
      }
    }
    if (use_memo) memo_.emplace(std::move(key), result);
    return result;
  }

  // First order (in enumeration order) at `index` whose subgame is won.
  std::optional<int> FirstWinningChoice(int index,
                                        const std::vector<Weight>& scores) {
    for (int p : Children(index)) {
      chosen_.push_back(p);
      const bool v = Value(index + 1, Apply(scores, index, p));
      chosen_.pop_back();
      if (v) return p;
    }
    return std::nullopt;
  }

  // Requires Value(index, scores) to be true.
  void BuildTrace(int index, const std::vector<Weight>& scores,
                  std::vector<PreferenceOrder>& history, StrategyTrace& trace) {
    if (index == num_voters()) return;
    budget_.Tick();
    auto descend = [&](int p) {
      history.push_back(orders_[p]);
      chosen_.push_back(p);
      BuildTrace(index + 1, Apply(scores, index, p), history, trace);
      chosen_.pop_back();
      history.pop_back();
    };
    if (voters_[index].existential) {
      const std::optional<int> p = FirstWinningChoice(index, scores);
      trace[history] = orders_[*p];
      descend(*p);
    } else {
      for (int p : all_) descend(p);
    }
  }

  // Walks the existential prefix, recording the first winning choice at each
  // coalition node. Used for schedule-robust witnesses.
  std::vector<int> ExistentialPrefixChoices() {
    std::vector<int> out;
    std::vector<Weight> scores = initial_scores_;
    for (int i = 0; i < num_voters() && voters_[i].existential; ++i) {
      const int p = *FirstWinningChoice(i, scores);
      out.push_back(p);
      chosen_.push_back(p);
      scores = Apply(scores, i, p);
    }
    chosen_.clear();
    return out;
  }

 private:
  const std::vector<int>& Children(int index) {
    const SearchVoter& v = voters_[index];
    if (v.forced >= 0) return forced_lists_[index];
    if (options_.canonicalize) {
      if (scoring_) return v.weight == 0 ? first_only_ : class_reps_;
      return tiered_children_[index];
    }
    return all_;
  }

  std::vector<Weight> Apply(const std::vector<Weight>& scores, int index,
                            int p) const {
    if (!scoring_) return scores;
    std::vector<Weight> next = scores;
    const Weight& w = voters_[index].weight;
    if (w == 0) return next;
    for (const auto& [c, a] : gains_[p]) next[c] += w * a;
    return next;
  }

  bool Leaf(const std::vector<Weight>& scores) const {
    CandidateSet winners;
    if (scoring_) {
      winners = ArgMax(scores);
    } else if (TieredFormulaHolds()) {
      winners.resize(snapshot_.num_candidates());
      std::iota(winners.begin(), winners.end(), 0);
    }
    return GoalMet(winners, goal_, direction_, winner_model_);
  }

  // With canonicalization, a voter that sets no block gets a single child
  // and a block-setting voter one order per decoded bit vector.
  void PlanTiered() {
    tiered_children_.assign(num_voters(), first_only_);
    const auto& names = snapshot_.candidates;
    TieredPlan& plan = tiered_;
    plan.formula_candidate = LeastNamedCandidate(names);
    try {
      plan.formula = TieredFormula::Parse(names[plan.formula_candidate]);
    } catch (const ParseError&) {
      return;
    }
    const int total_voters =
        static_cast<int>(snapshot_.cast.size()) + num_voters();
    if (total_voters < plan.formula.blocks()) return;
    if (snapshot_.num_candidates() < 1 + 2 * plan.formula.width()) return;
    if (!plan.formula.AllBlocksInhabited()) return;

    std::vector<std::pair<std::string, TieredPlan::Source>> all;
    for (size_t i = 0; i < snapshot_.cast.size(); ++i) {
      all.push_back({snapshot_.cast[i].voter_name,
                     {true, static_cast<int>(i)}});
    }
    for (int i = 0; i < num_voters(); ++i) {
      all.push_back({voters_[i].name, {false, i}});
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.first < b.first;
    });
    for (int b = 0; b < plan.formula.blocks(); ++b) {
      plan.sources.push_back(all[b].second);
    }
    plan.everyone_loses = false;

    std::vector<int> reps;
    std::set<std::vector<bool>> seen;
    for (int p : all_) {
      if (seen.insert(DecodeAssignment(orders_[p], names,
                                       plan.formula_candidate,
                                       plan.formula.width()))
              .second) {
        reps.push_back(p);
      }
    }
    for (const TieredPlan::Source& s : plan.sources) {
      if (!s.is_cast) tiered_children_[s.index] = reps;
    }
  }

  bool TieredFormulaHolds() const {
    const TieredPlan& plan = tiered_;
    if (plan.everyone_loses) return false;
    std::vector<std::vector<bool>> assignment;
    assignment.reserve(plan.sources.size());
    for (const TieredPlan::Source& s : plan.sources) {
      const PreferenceOrder& vote =
          s.is_cast ? snapshot_.cast[s.index].vote : orders_[chosen_[s.index]];
      assignment.push_back(DecodeAssignment(vote, snapshot_.candidates,
                                            plan.formula_candidate,
                                            plan.formula.width()));
    }
    return plan.formula.Evaluate(assignment);
  }

  const ElectionSnapshot& snapshot_;
  CandidateSet goal_;
  Direction direction_;
  WinnerModel winner_model_;
  std::vector<SearchVoter> voters_;
  const SolverOptions& options_;
  const std::vector<PreferenceOrder>& orders_;
  Budget& budget_;
  bool scoring_;

  std::vector<std::vector<std::pair<CandidateIndex, Weight>>> gains_;
  std::vector<int> class_reps_;
  std::vector<int> all_;
  std::vector<int> first_only_{0};
  std::vector<std::vector<int>> forced_lists_;
  std::vector<std::vector<int>> tiered_children_;
  std::vector<Weight> initial_scores_;
  TieredPlan tiered_;

  std::vector<int> chosen_;  // orders picked on the current path
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
};

void CheckSolvable(const Oms& oms, const VotingRule& rule,
                   const ProblemVariant& variant) {
  ValidateOrThrow(oms, variant);
  std::vector<std::string> problems =
      ValidateRule(rule, oms.snapshot.num_candidates());
  if (!problems.empty()) {
    throw InvalidInstanceError("rule not applicable: " + problems.front());
  }
}

std::vector<SearchVoter> VotersOf(const ElectionSnapshot& s) {
  std::vector<SearchVoter> out;
  for (const PendingVoter& v : s.pending) {
    out.push_back({v.voter_name, v.weight, v.is_manipulator, -1});
  }
  return out;
}

CandidateSet GoalFor(const Oms& oms, const ProblemVariant& variant) {
  return GoalSet(oms.sigma, oms.d, variant.direction, variant.target);
}

}  // namespace

std::vector<PreferenceOrder> AllOrders(int m, std::uint64_t limit) {
  std::uint64_t count = 1;
  for (int i = 2; i <= m; ++i) {
    count *= static_cast<std::uint64_t>(i);
    if (count > limit) {
      throw ResourceLimitError(std::to_string(m) +
                               "! preference orders exceed the budget");
    }
  }
  std::vector<PreferenceOrder> out;
  out.reserve(count);
  PreferenceOrder p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Decision Solve(const Oms& oms, const VotingRule& rule,
               const ProblemVariant& variant, const SolverOptions& options) {
  if (variant.mode == QuantifierMode::kScheduleRobust) {
    return SolveScheduleRobust(oms, rule, variant, options);
  }
  CheckSolvable(oms, rule, variant);

  const std::vector<PreferenceOrder> orders =
      AllOrders(oms.snapshot.num_candidates(), options.node_budget);
  Budget budget(options.node_budget);
  Game game(oms.snapshot, rule, GoalFor(oms, variant), variant.direction,
            variant.winner_model, VotersOf(oms.snapshot), options, orders,
            budget);

  Decision out;
  out.answer = game.Value(0, game.initial_scores());
  if (out.answer && game.voter(0).existential) {
    out.first_move = orders[*game.FirstWinningChoice(0, game.initial_scores())];
  }
  if (out.answer && options.want_trace) {
    StrategyTrace trace;
    std::vector<PreferenceOrder> history;
    game.BuildTrace(0, game.initial_scores(), history, trace);
    out.trace = std::move(trace);
  }
  out.nodes = budget.used();
  return out;
}

Decision Solve(const Instance& instance, const SolverOptions& options) {
  return Solve(instance.oms, instance.rule, instance.variant, options);
}

std::vector<bool> FullProfile(const ElectionSnapshot& snapshot,
                              const PreferenceOrder& sigma,
                              const VotingRule& rule,
                              const ProblemVariant& variant,
                              const SolverOptions& options) {
  SolverOptions per_call = options;
  per_call.want_trace = false;
  std::vector<bool> out;
  for (CandidateIndex d = 0; d < snapshot.num_candidates(); ++d) {
    out.push_back(Solve(Oms{snapshot, sigma, d}, rule, variant, per_call).answer);
  }
  return out;
}

Decision SolveScheduleRobust(const Oms& oms, const VotingRule& rule,
                             const ProblemVariant& variant,
                             const SolverOptions& options) {
  CheckSolvable(oms, rule, variant);
  const std::vector<PreferenceOrder> orders =
      AllOrders(oms.snapshot.num_candidates(), options.node_budget);
  const CandidateSet goal = GoalFor(oms, variant);
  Budget budget(options.node_budget);
  const std::vector<SearchVoter> pending = VotersOf(oms.snapshot);

  Decision out;
  auto finish = [&](const std::vector<int>& choices) {
    for (int p : choices) out.upfront_votes.push_back(orders[p]);
    if (!pending.empty() && pending[0].existential) {
      out.first_move = out.upfront_votes.front();
    }
  };

  if (IsScoringRule(rule) && !options.enumerate_orders) {
    // Scores do not depend on the order of the votes, so the coalition
    // committing first and the rest voting afterwards is the whole game.
    std::vector<SearchVoter> voters;
    for (const SearchVoter& v : pending) {
      if (v.existential) voters.push_back(v);
    }
    for (const SearchVoter& v : pending) {
      if (!v.existential) voters.push_back(v);
    }
    Game game(oms.snapshot, rule, goal, variant.direction,
              variant.winner_model, voters, options, orders, budget);
    out.answer = game.Value(0, game.initial_scores());
    if (out.answer) finish(game.ExistentialPrefixChoices());
    out.nodes = budget.used();
    return out;
  }

  std::vector<int> members;
  for (int i = 0; i < static_cast<int>(pending.size()); ++i) {
    if (pending[i].existential) members.push_back(i);
  }
  std::vector<int> choice(members.size(), 0);
  const int num_orders = static_cast<int>(orders.size());

  auto robust = [&]() {
    std::vector<int> schedule(pending.size());
    std::iota(schedule.begin(), schedule.end(), 0);
    do {
      std::vector<SearchVoter> voters;
      for (int i : schedule) {
        SearchVoter v = pending[i];
        auto it = std::find(members.begin(), members.end(), i);
        if (it != members.end()) v.forced = choice[it - members.begin()];
        voters.push_back(std::move(v));
      }
      Game game(oms.snapshot, rule, goal, variant.direction,
                variant.winner_model, std::move(voters), options, orders,
                budget);
      if (!game.Value(0, game.initial_scores())) return false;
    } while (std::next_permutation(schedule.begin(), schedule.end()));
    return true;
  };

  // Odometer over the coalition's joint up-front votes, lexicographic.
  while (true) {
    if (robust()) {
      out.answer = true;
      finish(choice);
      break;
    }
    int pos = static_cast<int>(choice.size()) - 1;
    while (pos >= 0 && ++choice[pos] == num_orders) choice[pos--] = 0;
    if (pos < 0) break;
  }
  out.nodes = budget.used();
  return out;
}

bool Replay(const StrategyTrace& trace, const Oms& oms, const VotingRule& rule,
            const ProblemVariant& variant, std::uint64_t node_budget) {
  CheckSolvable(oms, rule, variant);
  const ElectionSnapshot& s = oms.snapshot;
  const int m = s.num_candidates();
  const std::vector<PreferenceOrder> orders = AllOrders(m, node_budget);
  const CandidateSet goal = GoalFor(oms, variant);
  Budget budget(node_budget);

  std::vector<CastVote> ballots = s.cast;
  std::vector<PreferenceOrder> history;

  auto rec = [&](auto&& self, size_t index) -> bool {
    budget.Tick();
    if (index == s.pending.size()) {
      return GoalMet(Winners(rule, s.candidates, ballots), goal,
                     variant.direction, variant.winner_model);
    }
    const PendingVoter& voter = s.pending[index];
    auto play = [&](const PreferenceOrder& vote) {
      ballots.push_back({voter.voter_name, voter.weight, vote});
      history.push_back(vote);
      const bool ok = self(self, index + 1);
      history.pop_back();
      ballots.pop_back();
      return ok;
    };
    if (voter.is_manipulator) {
      auto it = trace.find(history);
      if (it == trace.end()) {
        throw VerificationError("trace undefined at a history of length " +
                                std::to_string(history.size()));
      }
      if (!IsPermutation(it->second, m)) {
        throw VerificationError("trace holds a vote that is not a permutation");
      }
      return play(it->second);
    }
    for (const PreferenceOrder& vote : orders) {
      if (!play(vote)) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

}  // namespace onlinemanip

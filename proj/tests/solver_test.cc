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

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "onlinemanip/errors.h"
#include "onlinemanip/generate.h"
#include "onlinemanip/reductions.h"
#include "test_util.h"

namespace onlinemanip {
namespace {

using ::testing::ElementsAre;
using testing::ApprovalAlpha;
using testing::NaiveOrders;
using testing::NaiveSolve;
using testing::Order;
using testing::PluralityAlpha;

Oms Oms1(std::vector<std::string> names, std::vector<PendingVoter> pending,
         CandidateIndex d, std::vector<CastVote> cast = {}) {
  Oms oms;
  oms.snapshot.candidates = std::move(names);
  oms.snapshot.cast = std::move(cast);
  oms.snapshot.pending = std::move(pending);
  oms.sigma.resize(oms.snapshot.candidates.size());
  std::iota(oms.sigma.begin(), oms.sigma.end(), 0);
  oms.d = d;
  return oms;
}

TEST(SolveTest, SoleManipulatorDictates) {
  const Oms oms = Oms1({"a", "b"}, {{"u", 1, true}}, 0);
  const Decision d = Solve(oms, Plurality{}, {});
  EXPECT_TRUE(d.answer);
  ASSERT_TRUE(d.first_move.has_value());
  EXPECT_EQ(*d.first_move, (PreferenceOrder{0, 1}));
}

// u (weight 1) then a heavier nonmanipulator (weight 2), sigma a > b > c.
Oms AdversaryOms(CandidateIndex d) {
  return Oms1({"a", "b", "c"}, {{"u", 1, true}, {"w", 2, false}}, d);
}

TEST(SolveTest, HeavierAdversaryBlocksTop) {
  // Independent check over all 6 x 6 vote pairs: for each u vote some
  // adversary vote keeps a out of the winner set.
  const auto orders = NaiveOrders(3);
  bool exists_good_u_vote = false;
  for (const auto& uv : orders) {
    bool all_adv_fail = true;
    for (const auto& av : orders) {
      std::vector<int> score(3, 0);
      score[uv[0]] += 1;
      score[av[0]] += 2;
      const int best = *std::max_element(score.begin(), score.end());
      if (score[0] == best) all_adv_fail = false;
    }
    if (all_adv_fail) continue;
    bool all_adv_ok = true;
    for (const auto& av : orders) {
      std::vector<int> score(3, 0);
      score[uv[0]] += 1;
      score[av[0]] += 2;
      const int best = *std::max_element(score.begin(), score.end());
      if (score[0] != best) all_adv_ok = false;
    }
    exists_good_u_vote |= all_adv_ok;
  }
  ASSERT_FALSE(exists_good_u_vote);
  EXPECT_FALSE(Solve(AdversaryOms(0), Plurality{}, {}).answer);
  EXPECT_FALSE(Solve(AdversaryOms(1), Plurality{}, {}).answer);
  EXPECT_TRUE(Solve(AdversaryOms(2), Plurality{}, {}).answer);
}

TEST(SolveTest, RejectsInvalidAndOversizedInstances) {
  Oms oms = AdversaryOms(0);
  oms.snapshot.pending[0].is_manipulator = false;
  EXPECT_THROW(Solve(oms, Plurality{}, {}), InvalidInstanceError);
  EXPECT_THROW(Solve(AdversaryOms(0), KApproval{4}, {}), InvalidInstanceError);
  SolverOptions tiny;
  tiny.node_budget = 5;
  EXPECT_THROW(Solve(AdversaryOms(0), Plurality{}, {}, tiny),
               ResourceLimitError);
}

TEST(SolveTest, PinpointAndUniqueVariants) {
  // Two manipulators of weight 1, sigma a > b > c, d = b.
  const Oms oms = Oms1({"a", "b", "c"}, {{"u", 1, true}, {"u2", 1, true}}, 1);
  ProblemVariant v;
  v.target = Target::kPinpoint;
  EXPECT_TRUE(Solve(oms, Plurality{}, v).answer);
  v.winner_model = WinnerModel::kUnique;
  EXPECT_TRUE(Solve(oms, Plurality{}, v).answer);
  // A nonmanipulator of equal weight can always force a tie.
  Oms tie = Oms1({"a", "b"}, {{"u", 1, true}, {"w", 1, false}}, 1);
  ProblemVariant unique;
  unique.winner_model = WinnerModel::kUnique;
  EXPECT_FALSE(Solve(tie, Plurality{}, unique).answer);
  EXPECT_TRUE(Solve(tie, Plurality{}, {}).answer);
}

// Random small instances of every variant against the naive evaluator.
TEST(SolveTest, MatchesNaiveEvaluator) {
  Rng rng(21);
  int yes = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    GenOptions g;
    g.m = static_cast<int>(UniformInt(rng, 1, 4));
    g.cast = static_cast<int>(UniformInt(rng, 0, 2));
    g.pending = static_cast<int>(UniformInt(rng, 1, g.m == 4 ? 2 : 3));
    g.min_weight = 0;
    g.max_weight = 3;
    testing::Alpha alpha;
    switch (UniformInt(rng, 0, 2)) {
      case 0:
        g.rule = Plurality{};
        alpha = PluralityAlpha(g.m);
        break;
      case 1: {
        const int k = static_cast<int>(UniformInt(rng, 1, g.m));
        g.rule = KVeto{k};
        alpha = ApprovalAlpha(g.m, g.m - k);
        break;
      }
      default: {
        std::vector<Weight> a;
        long long x = UniformInt(rng, 0, 3);
        for (int i = 0; i < g.m; ++i) {
          a.push_back(x);
          alpha.push_back(x);
          x -= UniformInt(rng, 0, x);
        }
        g.rule = GeneralScoring{a};
      }
    }
    g.variant.direction = UniformInt(rng, 0, 1) ? Direction::kDestructive
                                                : Direction::kConstructive;
    if (g.variant.direction == Direction::kConstructive && UniformInt(rng, 0, 3) == 0) {
      g.variant.target = Target::kPinpoint;
    }
    if (UniformInt(rng, 0, 1)) g.variant.winner_model = WinnerModel::kUnique;
    if (UniformInt(rng, 0, 3) == 0) g.variant.mode = QuantifierMode::kFreeform;
    const Instance inst = RandomInstance(g, rng);
    const bool expected = NaiveSolve(inst.oms, alpha, inst.variant);
    yes += expected;
    EXPECT_EQ(Solve(inst).answer, expected) << SerializeInstance(inst);
  }
  // Both answers occur often enough for the comparison to mean something.
  EXPECT_GT(yes, 300);
  EXPECT_LT(yes, 1200);
}

// No nonmanipulators left: the answer is a single existential over joint
// coalition votes.
TEST(SolveTest, DegenerateAdversaryIsPlainExistence) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    GenOptions g;
    g.m = static_cast<int>(UniformInt(rng, 2, 3));
    g.cast = static_cast<int>(UniformInt(rng, 0, 2));
    g.pending = static_cast<int>(UniformInt(rng, 1, 3));
    g.manipulator_probability = 1.0;
    g.max_weight = 3;
    if (UniformInt(rng, 0, 1)) g.variant.winner_model = WinnerModel::kUnique;
    const Instance inst = RandomInstance(g, rng);
    const auto orders = NaiveOrders(g.m);
    const auto& s = inst.oms.snapshot;
    const CandidateSet goal = GoalSet(inst.oms.sigma, inst.oms.d,
                                      Direction::kConstructive, Target::kSegment);
    bool exists = false;
    std::vector<size_t> pick(s.pending.size(), 0);
    while (!exists) {
      std::vector<CastVote> votes = s.cast;
      for (size_t i = 0; i < pick.size(); ++i) {
        votes.push_back({s.pending[i].voter_name, s.pending[i].weight,
                         orders[pick[i]]});
      }
      const CandidateSet w = Winners(Plurality{}, s.candidates, votes);
      if (inst.variant.winner_model == WinnerModel::kUnique) {
        exists = w.size() == 1 &&
                 std::binary_search(goal.begin(), goal.end(), w[0]);
      } else {
        for (CandidateIndex c : w) {
          exists |= std::binary_search(goal.begin(), goal.end(), c);
        }
      }
      size_t pos = 0;
      while (pos < pick.size() && ++pick[pos] == orders.size()) pick[pos++] = 0;
      if (pos == pick.size()) break;
    }
    EXPECT_EQ(Solve(inst).answer, exists);
  }
}

TEST(SolveTest, FreeformWithManipulatorUEqualsOnline) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    GenOptions g;
    g.m = 3;
    g.pending = static_cast<int>(UniformInt(rng, 1, 3));
    g.max_weight = 3;
    g.rule = KVeto{1};
    Instance inst = RandomInstance(g, rng);
    const bool online = Solve(inst).answer;
    inst.variant.mode = QuantifierMode::kFreeform;
    EXPECT_EQ(Solve(inst).answer, online);
  }
}

TEST(SolveTest, FreeformAllowsAdversarialU) {
  // u is a nonmanipulator of weight 2 followed by a manipulator of weight 1.
  Oms oms = Oms1({"a", "b"}, {{"u", 2, false}, {"m", 1, true}}, 0);
  ProblemVariant v;
  v.mode = QuantifierMode::kFreeform;
  const Decision d = Solve(oms, Plurality{}, v);
  EXPECT_FALSE(d.answer);
  EXPECT_FALSE(d.first_move.has_value());
  oms.d = 1;
  const Decision all = Solve(oms, Plurality{}, v);
  EXPECT_TRUE(all.answer);
  EXPECT_FALSE(all.first_move.has_value());
}

TEST(SolveTest, MemoizedEqualsUnmemoizedAndCanonicalEqualsFull) {
  Rng rng(12);
  for (int trial = 0; trial < 400; ++trial) {
    GenOptions g;
    g.m = static_cast<int>(UniformInt(rng, 2, 4));
    g.cast = static_cast<int>(UniformInt(rng, 0, 2));
    g.pending = static_cast<int>(UniformInt(rng, 1, 3));
    g.min_weight = 0;
    g.max_weight = 2;
    const int k = static_cast<int>(UniformInt(rng, 1, g.m));
    g.rule = UniformInt(rng, 0, 1) ? VotingRule(KApproval{k}) : VotingRule(KVeto{k});
    if (UniformInt(rng, 0, 1)) g.variant.winner_model = WinnerModel::kUnique;
    const Instance inst = RandomInstance(g, rng);
    SolverOptions plain, nomemo, canon;
    nomemo.memoize = false;
    canon.canonicalize = true;
    const Decision a = Solve(inst, plain);
    const Decision b = Solve(inst, nomemo);
    const Decision c = Solve(inst, canon);
    EXPECT_EQ(a.answer, b.answer);
    EXPECT_EQ(a.answer, c.answer);
    EXPECT_EQ(a.first_move, b.first_move);
    EXPECT_EQ(a.first_move, c.first_move);
  }
}

TEST(SolveTest, TieredCanonicalizationMatchesFullSearch) {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const QbfInstance q = RandomQbf(rng, static_cast<int>(UniformInt(rng, 1, 2)), 2);
    const Instance inst = ReduceQbfToOnlineUcm(q).instance;
    SolverOptions canon;
    canon.canonicalize = true;
    const Decision a = Solve(inst);
    const Decision b = Solve(inst, canon);
    EXPECT_EQ(a.answer, b.answer);
    EXPECT_EQ(a.first_move, b.first_move);
    EXPECT_LE(b.nodes, a.nodes);
  }
}

TEST(SolveTest, DeterministicWitness) {
  const Oms oms = Oms1({"a", "b", "c"}, {{"u", 2, true}, {"w", 1, false}}, 1);
  const Decision a = Solve(oms, Plurality{}, {});
  const Decision b = Solve(oms, Plurality{}, {});
  ASSERT_TRUE(a.answer);
  EXPECT_EQ(a.first_move, b.first_move);
  EXPECT_EQ(*a.first_move, (PreferenceOrder{0, 1, 2}));
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(FullProfileTest, NoNoYes) {
  const std::vector<bool> bits =
      FullProfile(AdversaryOms(0).snapshot, {0, 1, 2}, Plurality{}, {});
  EXPECT_THAT(bits, ElementsAre(false, false, true));
}

TEST(FullProfileTest, SingleVoterIsAllOnes) {
  const Oms oms = Oms1({"a", "b", "c"}, {{"u", 1, true}}, 0);
  EXPECT_THAT(FullProfile(oms.snapshot, oms.sigma, Plurality{}, {}),
              ElementsAre(true, true, true));
}

// Moving d down sigma only grows the goal set (or shrinks the forbidden
// set), so answers never go from yes to no.
TEST(FullProfileTest, SigmaMonotone) {
  Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    GenOptions g;
    g.m = static_cast<int>(UniformInt(rng, 2, 4));
    g.cast = static_cast<int>(UniformInt(rng, 0, 2));
    g.pending = static_cast<int>(UniformInt(rng, 1, 2));
    g.max_weight = 3;
    g.rule = KVeto{1};
    if (UniformInt(rng, 0, 1)) g.variant.direction = Direction::kDestructive;
    const Instance inst = RandomInstance(g, rng);
    const std::vector<bool> bits = FullProfile(
        inst.oms.snapshot, inst.oms.sigma, inst.rule, inst.variant);
    for (int r = 0; r + 1 < g.m; ++r) {
      const bool upper = bits[inst.oms.sigma[r]];
      const bool lower = bits[inst.oms.sigma[r + 1]];
      EXPECT_LE(upper, lower);
    }
  }
}

TEST(ReplayTest, TraceOfTrivialInstance) {
  SolverOptions opts;
  opts.want_trace = true;
  const Oms oms = Oms1({"a", "b"}, {{"u", 1, true}}, 0);
  const Decision d = Solve(oms, Plurality{}, {}, opts);
  ASSERT_TRUE(d.trace.has_value());
  EXPECT_EQ(d.trace->size(), 1u);
  EXPECT_TRUE(Replay(*d.trace, oms, Plurality{}, {}));
}

TEST(ReplayTest, CorruptedRootVoteFails) {
  // u (weight 2) and a weight-1 adversary, two candidates, d = a.
  SolverOptions opts;
  opts.want_trace = true;
  const Oms oms = Oms1({"a", "b"}, {{"u", 2, true}, {"w", 1, false}}, 0);
  const Decision d = Solve(oms, Plurality{}, {}, opts);
  ASSERT_TRUE(d.answer);
  ASSERT_TRUE(d.trace.has_value());
  EXPECT_TRUE(Replay(*d.trace, oms, Plurality{}, {}));
  StrategyTrace bad = *d.trace;
  bad[{}] = {1, 0};
  EXPECT_FALSE(Replay(bad, oms, Plurality{}, {}));
  StrategyTrace empty;
  EXPECT_THROW(Replay(empty, oms, Plurality{}, {}), VerificationError);
}

TEST(ReplayTest, NoTraceOnNoInstance) {
  SolverOptions opts;
  opts.want_trace = true;
  const Decision d = Solve(AdversaryOms(0), Plurality{}, {}, opts);
  EXPECT_FALSE(d.answer);
  EXPECT_FALSE(d.trace.has_value());
  EXPECT_FALSE(d.first_move.has_value());
}

TEST(ReplayTest, EveryYesTraceReplays) {
  Rng rng(15);
  SolverOptions opts;
  opts.want_trace = true;
  int yes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GenOptions g;
    g.m = static_cast<int>(UniformInt(rng, 2, 3));
    g.cast = static_cast<int>(UniformInt(rng, 0, 2));
    g.pending = static_cast<int>(UniformInt(rng, 1, 3));
    g.max_weight = 3;
    if (UniformInt(rng, 0, 1)) g.variant.winner_model = WinnerModel::kUnique;
    if (UniformInt(rng, 0, 1)) g.variant.direction = Direction::kDestructive;
    const Instance inst = RandomInstance(g, rng);
    const Decision d = Solve(inst, opts);
    if (!d.answer) continue;
    ++yes;
    ASSERT_TRUE(d.trace.has_value());
    EXPECT_TRUE(Replay(*d.trace, inst.oms, inst.rule, inst.variant));
  }
  EXPECT_GT(yes, 50);
}

TEST(ScheduleRobustTest, SingleManipulatorEqualsSolve) {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    GenOptions g;
    g.m = 3;
    g.cast = 2;
    g.pending = 1;
    g.max_weight = 3;
    Instance inst = RandomInstance(g, rng);
    const bool online = Solve(inst).answer;
    inst.variant.mode = QuantifierMode::kScheduleRobust;
    EXPECT_EQ(Solve(inst).answer, online);
  }
}

TEST(ScheduleRobustTest, OneAndOneCollapsedMatchesDefinition) {
  // Two candidates, one manipulator and one nonmanipulator left, with ties
  // in play. Compare the collapsed form, the definition-level enumeration and
  // a hand-rolled check over both orders.
  const auto orders = NaiveOrders(2);
  for (int cast_a = 0; cast_a <= 2; ++cast_a) {
    for (int wm = 0; wm <= 2; ++wm) {
      for (int wn = 0; wn <= 2; ++wn) {
        for (int d = 0; d < 2; ++d) {
          for (bool manip_first : {true, false}) {
            Oms oms;
            oms.snapshot.candidates = {"a", "b"};
            if (cast_a > 0) oms.snapshot.cast = {{"v", cast_a, {0, 1}}};
            PendingVoter m{"m", wm, true}, n{"n", wn, false};
            oms.snapshot.pending = manip_first
                                       ? std::vector<PendingVoter>{m, n}
                                       : std::vector<PendingVoter>{n, m};
            oms.sigma = {0, 1};
            oms.d = d;
            ProblemVariant v;
            v.mode = QuantifierMode::kScheduleRobust;
            SolverOptions defn;
            defn.enumerate_orders = true;
            const bool collapsed = Solve(oms, Plurality{}, v).answer;
            const bool definition = Solve(oms, Plurality{}, v, defn).answer;
            bool expected = false;
            for (const auto& mv : orders) {
              bool all = true;
              for (const auto& nv : orders) {
                int sa = cast_a, sb = 0;
                (mv[0] == 0 ? sa : sb) += wm;
                (nv[0] == 0 ? sa : sb) += wn;
                const bool a_wins = sa >= sb, b_wins = sb >= sa;
                all &= d == 1 ? true : a_wins;
                (void)b_wins;
              }
              expected |= all;
            }
            EXPECT_EQ(collapsed, expected);
            EXPECT_EQ(definition, expected);
          }
        }
      }
    }
  }
}

TEST(ScheduleRobustTest, ImpliesOnlineForEveryOrder) {
  Rng rng(17);
  int robust_yes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    GenOptions g;
    g.m = 3;
    g.cast = static_cast<int>(UniformInt(rng, 0, 2));
    g.pending = static_cast<int>(UniformInt(rng, 2, 3));
    g.max_weight = 3;
    g.variant.mode = QuantifierMode::kScheduleRobust;
    const Instance inst = RandomInstance(g, rng);
    const Decision sr = Solve(inst);
    if (!sr.answer) continue;
    ++robust_yes;
    EXPECT_EQ(sr.upfront_votes.size(),
              static_cast<size_t>(inst.oms.snapshot.NumPendingManipulators()));
    std::vector<PendingVoter> pending = inst.oms.snapshot.pending;
    std::sort(pending.begin(), pending.end(),
              [](const auto& a, const auto& b) { return a.voter_name < b.voter_name; });
    do {
      if (!pending[0].is_manipulator) continue;
      Instance fixed = inst;
      fixed.oms.snapshot.pending = pending;
      fixed.variant.mode = QuantifierMode::kOnline;
      EXPECT_TRUE(Solve(fixed).answer);
    } while (std::next_permutation(
        pending.begin(), pending.end(),
        [](const auto& a, const auto& b) { return a.voter_name < b.voter_name; }));
  }
  EXPECT_GT(robust_yes, 10);
}

TEST(ScheduleRobustTest, TieredEnumeratesOrders) {
  // A 2-block formula x_{1,1} & x_{2,1}: the coalition member's vote sets
  // block 1 (name "1"), the nonmanipulator ("2") sets block 2 and can always
  // falsify, whatever the order.
  QbfInstance q;
  q.blocks = {{"a"}, {"b"}};
  q.matrix = BoolExpr::Parse("(a&b)");
  Instance inst = ReduceQbfToOnlineUcm(q).instance;
  inst.variant.mode = QuantifierMode::kScheduleRobust;
  EXPECT_FALSE(Solve(inst).answer);
  q.matrix = BoolExpr::Parse("(a|(b&!b))");
  inst = ReduceQbfToOnlineUcm(q).instance;
  inst.variant.mode = QuantifierMode::kScheduleRobust;
  const Decision d = Solve(inst);
  EXPECT_TRUE(d.answer);
  EXPECT_EQ(d.upfront_votes.size(), 1u);
}

TEST(AllOrdersTest, LexicographicAndBudgeted) {
  const auto orders = AllOrders(3);
  ASSERT_EQ(orders.size(), 6u);
  EXPECT_EQ(orders.front(), (PreferenceOrder{0, 1, 2}));
  EXPECT_EQ(orders.back(), (PreferenceOrder{2, 1, 0}));
  EXPECT_TRUE(std::is_sorted(orders.begin(), orders.end()));
  EXPECT_THROW(AllOrders(12, 1000), ResourceLimitError);
}

}  // namespace
}  // namespace onlinemanip

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

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "onlinemanip/errors.h"
#include "onlinemanip/formula.h"
#include "onlinemanip/generate.h"
#include "test_util.h"

namespace onlinemanip {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using testing::Order;

const std::vector<std::string> kAb = {"a", "b"};
const std::vector<std::string> kAbc = {"a", "b", "c"};

TEST(ScoresTest, PluralitySumsWeights) {
  const std::vector<CastVote> votes = {{"v1", 2, Order(kAb, "a>b")},
                                       {"v2", 1, Order(kAb, "b>a")}};
  EXPECT_THAT(Scores(Plurality{}, 2, votes), ElementsAre(2, 1));
  EXPECT_THAT(Winners(Plurality{}, kAb, votes), ElementsAre(0));
}

TEST(ScoresTest, VetoScoresAllButLast) {
  const std::vector<CastVote> votes = {{"v1", 1, Order(kAbc, "a>b>c")}};
  EXPECT_THAT(Scores(KVeto{1}, 3, votes), ElementsAre(1, 1, 0));
  EXPECT_THAT(Winners(KVeto{1}, kAbc, votes), ElementsAre(0, 1));
}

TEST(ScoresTest, GeneralScoringReadsAlpha) {
  const std::vector<CastVote> votes = {{"v1", 1, Order(kAbc, "a>b>c")}};
  EXPECT_THAT(Scores(GeneralScoring{{2, 1, 0}}, 3, votes), ElementsAre(2, 1, 0));
}

TEST(ScoresTest, ZeroWeightVotesMakeEveryoneWin) {
  const std::vector<CastVote> votes = {{"v1", 0, Order(kAbc, "a>b>c")}};
  EXPECT_THAT(Winners(Plurality{}, kAbc, votes), ElementsAre(0, 1, 2));
  EXPECT_THAT(Winners(Plurality{}, kAbc, {}), ElementsAre(0, 1, 2));
}

TEST(ScoresTest, NonPermutationVoteAndEmptyCandidatesThrow) {
  const std::vector<CastVote> bad = {{"v1", 1, {0, 0, 1}}};
  EXPECT_THROW(Scores(Plurality{}, 3, bad), InvalidInstanceError);
  EXPECT_THROW(Winners(Plurality{}, {}, {}), InvalidInstanceError);
}

TEST(RulesTest, ValidateRuleChecksK) {
  EXPECT_THAT(ValidateRule(KApproval{2}, 2), IsEmpty());
  EXPECT_FALSE(ValidateRule(KApproval{3}, 2).empty());
  EXPECT_FALSE(ValidateRule(KVeto{0}, 2).empty());
  EXPECT_FALSE(ValidateRule(GeneralScoring{{0, 1}}, 2).empty());
  EXPECT_FALSE(ValidateRule(GeneralScoring{{1, 0, 0}}, 2).empty());
}

TEST(RulesTest, NamedRulesMatchTheirVectors) {
  EXPECT_THAT(ScoringVectorFor(Plurality{}, 3), ElementsAre(1, 0, 0));
  EXPECT_THAT(ScoringVectorFor(KApproval{2}, 4), ElementsAre(1, 1, 0, 0));
  EXPECT_THAT(ScoringVectorFor(KVeto{1}, 3), ElementsAre(1, 1, 0));
  EXPECT_THAT(ScoringVectorFor(KVeto{2}, 4), ElementsAre(1, 1, 0, 0));
  EXPECT_EQ(ApprovalsPerVote(KVeto{1}, 5), 4);
  EXPECT_THROW(ScoringVectorFor(TieredRule{}, 3), InvalidInstanceError);
}

// Sum of scores is total weight times the sum of alpha; k-veto equals its
// explicit vector; vote order never matters; winners is nonempty.
TEST(ScoresPropertyTest, ConservationAnonymityAndVetoVector) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = static_cast<int>(UniformInt(rng, 1, 6));
    std::vector<Weight> alpha;
    Weight a = UniformInt(rng, 0, 5);
    for (int i = 0; i < m; ++i) {
      alpha.push_back(a);
      a -= UniformInt(rng, 0, static_cast<std::int64_t>(a));
    }
    std::vector<CastVote> votes;
    Weight total = 0;
    const int n = static_cast<int>(UniformInt(rng, 0, 6));
    for (int i = 0; i < n; ++i) {
      votes.push_back({"v" + std::to_string(i), UniformInt(rng, 0, 9),
                       RandomOrder(rng, m)});
      total += votes.back().weight;
    }
    const GeneralScoring rule{alpha};
    const std::vector<Weight> s = Scores(rule, m, votes);
    Weight sum = 0, alpha_sum = 0;
    for (const Weight& x : s) sum += x;
    for (const Weight& x : alpha) alpha_sum += x;
    EXPECT_EQ(sum, total * alpha_sum);

    std::vector<CastVote> shuffled = votes;
    std::reverse(shuffled.begin(), shuffled.end());
    EXPECT_EQ(Scores(rule, m, shuffled), s);
    const std::vector<std::string> names = DefaultCandidateNames(m);
    EXPECT_FALSE(Winners(rule, names, votes).empty());

    const int k = static_cast<int>(UniformInt(rng, 1, m));
    std::vector<Weight> veto(m, 1);
    for (int i = m - k; i < m; ++i) veto[i] = 0;
    EXPECT_EQ(Scores(KVeto{k}, m, votes),
              Scores(GeneralScoring{veto}, m, votes));
  }
}

// Candidates: formula "x_{1,1}" plus two successors. The formula candidate
// sorts first.
const std::vector<std::string> kTiered1 = {"x_{1,1}", "x_{1,1}1",
                                           "x_{1,1}2"};

TEST(TieredWinnersTest, SmallerNameAboveLargerGivesBitOneAndEveryoneWins) {
  // Without c the vote is x_{1,1}1 > x_{1,1}2: the least preferred pair is
  // (c1, c2) = (x_{1,1}2, x_{1,1}1); name(c1) > name(c2), so the bit is 1.
  const std::vector<CastVote> votes = {
      {"1", 1, Order(kTiered1, "x_{1,1}>x_{1,1}1>x_{1,1}2")}};
  EXPECT_THAT(TieredWinners(kTiered1, votes), ElementsAre(0, 1, 2));
  EXPECT_THAT(Winners(TieredRule{}, kTiered1, votes), ElementsAre(0, 1, 2));
}

TEST(TieredWinnersTest, ReversedPairGivesBitZeroAndEveryoneLoses) {
  const std::vector<CastVote> votes = {
      {"1", 1, Order(kTiered1, "x_{1,1}2>x_{1,1}1>x_{1,1}")}};
  EXPECT_THAT(TieredWinners(kTiered1, votes), IsEmpty());
}

TEST(TieredWinnersTest, NonFormulaLeastNameLoses) {
  const std::vector<std::string> names = {"apple", "x_{1,1}", "zebra"};
  const std::vector<CastVote> votes = {
      {"1", 1, Order(names, "apple>x_{1,1}>zebra")}};
  EXPECT_THAT(TieredWinners(names, votes), IsEmpty());
}

TEST(TieredWinnersTest, TooFewVotersLoses) {
  const std::vector<std::string> names = {"(x_{1,1}|x_{2,1})", "z1", "z2"};
  const std::vector<CastVote> votes = {{"1", 1, Order(names, "z1>z2>(x_{1,1}|x_{2,1})")}};
  EXPECT_THAT(TieredWinners(names, votes), IsEmpty());
  std::vector<CastVote> two = votes;
  two.push_back({"2", 1, Order(names, "z1>z2>(x_{1,1}|x_{2,1})")});
  // z2 below z1 in both votes: bit 1 each, formula true.
  EXPECT_THAT(TieredWinners(names, two), ElementsAre(0, 1, 2));
}

TEST(TieredWinnersTest, TooFewCandidatesAndEmptyBlockLose) {
  const std::vector<std::string> two = {"x_{1,1}", "y"};
  const std::vector<CastVote> one = {{"1", 1, {0, 1}}};
  EXPECT_THAT(TieredWinners(two, one), IsEmpty());
  // Block 1 missing: only x_{2,1} appears.
  const std::vector<std::string> names = {"x_{2,1}", "y1", "y2"};
  const std::vector<CastVote> votes = {{"1", 1, {1, 2, 0}}, {"2", 1, {1, 2, 0}}};
  EXPECT_THAT(TieredWinners(names, votes), IsEmpty());
}

TEST(TieredWinnersTest, VotersAreReadInNameOrderAndWeightsIgnored) {
  // Formula x_{1,1} & !x_{2,1}: voter "a" sets block 1, voter "b" block 2.
  const std::vector<std::string> names = {"(x_{1,1}&!x_{2,1})", "p", "q"};
  const PreferenceOrder one = Order(names, "p>q>(x_{1,1}&!x_{2,1})");   // bit 1
  const PreferenceOrder zero = Order(names, "q>p>(x_{1,1}&!x_{2,1})");  // bit 0
  const std::vector<CastVote> votes = {{"b", 0, zero}, {"a", 7, one}};
  EXPECT_THAT(TieredWinners(names, votes), ElementsAre(0, 1, 2));
  const std::vector<CastVote> swapped = {{"b", 1, one}, {"a", 1, zero}};
  EXPECT_THAT(TieredWinners(names, swapped), IsEmpty());
}

TEST(DecodeAssignmentTest, PairOrderSetsBit) {
  const std::vector<std::string> names = {"c", "m", "n"};
  EXPECT_THAT(DecodeAssignment(Order(names, "c>n>m"), names, 0, 1),
              ElementsAre(false));
  EXPECT_THAT(DecodeAssignment(Order(names, "c>m>n"), names, 0, 1),
              ElementsAre(true));
}

TEST(DecodeAssignmentTest, WidthTwoOverFiveCandidates) {
  const std::vector<std::string> names = {"c", "p", "q", "r", "s"};
  // Least preferred first: s, p, r, q. Pair 1 = (s, p): "s" > "p" -> 1.
  // Pair 2 = (r, q): "r" > "q" -> 1.
  EXPECT_THAT(DecodeAssignment(Order(names, "q>r>c>p>s"), names, 0, 2),
              ElementsAre(true, true));
  // Least preferred first: p, s, q, r. (p, s) -> 0; (q, r) -> 0.
  EXPECT_THAT(DecodeAssignment(Order(names, "r>q>s>c>p"), names, 0, 2),
              ElementsAre(false, false));
  EXPECT_THROW(DecodeAssignment(Order(names, "r>q>s>c>p"), names, 0, 3),
               InvalidInstanceError);
}

TEST(DecodeAssignmentTest, IgnoresTopCandidates) {
  const std::vector<std::string> names = {"c", "p", "q", "r", "s"};
  const auto a = DecodeAssignment(Order(names, "p>c>q>r>s"), names, 0, 1);
  const auto b = DecodeAssignment(Order(names, "c>p>q>r>s"), names, 0, 1);
  EXPECT_EQ(a, b);
}

TEST(LeastNamedCandidateTest, BytewiseOrder) {
  EXPECT_EQ(LeastNamedCandidate({"b", "B", "a"}), 1);
  EXPECT_EQ(LeastNamedCandidate({"x_{1,1}1", "x_{1,1}"}), 1);
}

}  // namespace
}  // namespace onlinemanip

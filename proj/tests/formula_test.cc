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

#include "onlinemanip/formula.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "onlinemanip/errors.h"
#include "onlinemanip/generate.h"

namespace onlinemanip {
namespace {

using ::testing::ElementsAre;

TEST(TieredFormulaTest, SingleVariable) {
  const TieredFormula f = TieredFormula::Parse("x_{1,1}");
  EXPECT_EQ(f.width(), 1);
  EXPECT_EQ(f.blocks(), 1);
  EXPECT_TRUE(f.AllBlocksInhabited());
}

TEST(TieredFormulaTest, TwoBlocks) {
  const TieredFormula f = TieredFormula::Parse("(x_{1,1}&!x_{2,1})");
  EXPECT_EQ(f.width(), 1);
  EXPECT_EQ(f.blocks(), 2);
  EXPECT_TRUE(f.Evaluate({{true}, {false}}));
  EXPECT_FALSE(f.Evaluate({{true}, {true}}));
}

TEST(TieredFormulaTest, WidthIsMaxPosition) {
  const TieredFormula f = TieredFormula::Parse("(x_{1,3}|x_{3,1})");
  EXPECT_EQ(f.width(), 3);
  EXPECT_EQ(f.blocks(), 3);
  EXPECT_FALSE(f.AllBlocksInhabited());
}

TEST(TieredFormulaTest, RejectsZeroSubscriptsAndOtherNames) {
  EXPECT_THROW(TieredFormula::Parse("x_{0,1}"), ParseError);
  EXPECT_THROW(TieredFormula::Parse("x_{1,0}"), ParseError);
  EXPECT_THROW(TieredFormula::Parse("x_{01,1}"), ParseError);
  EXPECT_THROW(TieredFormula::Parse("y"), ParseError);
  EXPECT_THROW(TieredFormula::Parse("x_{1,1"), ParseError);
  EXPECT_THROW(TieredFormula::Parse("(x_{1,1} & x_{1,2})"), ParseError);
}

TEST(BoolExprTest, StrictGrammar) {
  EXPECT_THROW(BoolExpr::Parse(""), ParseError);
  EXPECT_THROW(BoolExpr::Parse("(a&b"), ParseError);
  EXPECT_THROW(BoolExpr::Parse("a&b"), ParseError);
  EXPECT_THROW(BoolExpr::Parse("(a&b)c"), ParseError);
  EXPECT_THROW(BoolExpr::Parse("(a^b)"), ParseError);
  EXPECT_THROW(BoolExpr::Parse("( a & b )"), ParseError);
  EXPECT_NO_THROW(BoolExpr::Parse("( a & b )", /*allow_whitespace=*/true));
}

TEST(BoolExprTest, EvaluatesAndDedupesVariables) {
  const BoolExpr e = BoolExpr::Parse("((a|!b)&!(a&b))");
  EXPECT_THAT(e.variables(), ElementsAre("a", "b"));
  EXPECT_TRUE(e.Evaluate({true, false}));
  EXPECT_FALSE(e.Evaluate({true, true}));
  EXPECT_TRUE(e.Evaluate({false, false}));
  EXPECT_FALSE(e.Evaluate({false, true}));
}

TEST(BoolExprTest, BuildersMatchParser) {
  const BoolExpr built = BoolExpr::Or(BoolExpr::Not(BoolExpr::Var("p")),
                                      BoolExpr::And(BoolExpr::Var("q"),
                                                    BoolExpr::Var("p")));
  EXPECT_EQ(built.ToString(), "(!p|(q&p))");
  EXPECT_THAT(built.variables(), ElementsAre("p", "q"));
}

TEST(BoolExprTest, RoundTripOnRandomFormulas) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const QbfInstance q = RandomQbf(rng, 3, 3);
    const std::string text = q.matrix.ToString();
    EXPECT_EQ(BoolExpr::Parse(text).ToString(), text);
  }
}

TEST(BoolExprTest, DeepNestingIsRejectedNotCrashing) {
  const std::string deep = std::string(100000, '!') + "a";
  EXPECT_THROW(BoolExpr::Parse(deep), ParseError);
  const std::string ok = std::string(1000, '!') + "a";
  EXPECT_TRUE(BoolExpr::Parse(ok).Evaluate({true}));
}

}  // namespace
}  // namespace onlinemanip

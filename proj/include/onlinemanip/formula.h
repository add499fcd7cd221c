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

// Boolean formulas over named variables, and the "tiered" restriction whose
// variables are all named x_{i,j}.
//
// Grammar (ASCII, no whitespace in strict mode):
//   F   ::= VAR | '!' F | '(' F '&' F ')' | '(' F '|' F ')'
//   VAR ::= one or more of [A-Za-z0-9_{},]
// Tiered formulas additionally require VAR ::= 'x_{' INT ',' INT '}' with
// INT a decimal integer >= 1 without leading zeros.

#ifndef ONLINEMANIP_FORMULA_H_
#define ONLINEMANIP_FORMULA_H_

#include <string>
#include <string_view>
#include <vector>

namespace onlinemanip {

class BoolExpr {
 public:
  enum class Kind { kVar, kNot, kAnd, kOr };
  struct Node {
    Kind kind;
    int var = -1;  // index into variables() for kVar
    int lhs = -1;
    int rhs = -1;
  };

  // Throws ParseError. With `allow_whitespace`, blanks between tokens are
  // skipped.
  static BoolExpr Parse(std::string_view text, bool allow_whitespace = false);

  static BoolExpr Var(std::string name);
  static BoolExpr Not(const BoolExpr& e);
  static BoolExpr And(const BoolExpr& a, const BoolExpr& b);
  static BoolExpr Or(const BoolExpr& a, const BoolExpr& b);

  // Distinct variable names in order of first occurrence.
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return root_; }

  // `values[k]` is the value of variables()[k].
  bool Evaluate(const std::vector<bool>& values) const;

  // Canonical text in the strict grammar; Parse(ToString()) reproduces it.
  std::string ToString() const;

 private:
  int AddVar(const std::string& name);
  int Splice(const BoolExpr& other);

  std::vector<Node> nodes_;
  std::vector<std::string> variables_;
  int root_ = -1;
};

struct TieredVar {
  int block = 0;     // i in x_{i,j}
  int position = 0;  // j in x_{i,j}
};

class TieredFormula {
 public:
  // Throws ParseError on syntax errors, zero subscripts or non-tiered
  // variable names.
  static TieredFormula Parse(std::string_view text);

  // Formats x_{block,position}.
  static std::string VarName(int block, int position);

  const BoolExpr& expr() const { return expr_; }
  int width() const { return width_; }
  int blocks() const { return blocks_; }
  // True iff every block 1..blocks() has at least one variable.
  bool AllBlocksInhabited() const;

  // assignment[i-1][j-1] is the value of x_{i,j}. Must cover every variable.
  bool Evaluate(const std::vector<std::vector<bool>>& assignment) const;

 private:
  BoolExpr expr_;
  std::vector<TieredVar> vars_;  // parallel to expr_.variables()
  int width_ = 0;
  int blocks_ = 0;
};

}  // namespace onlinemanip

#endif  // ONLINEMANIP_FORMULA_H_

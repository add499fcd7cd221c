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

#include <algorithm>
#include <cctype>
#include <optional>

#include "onlinemanip/errors.h"

namespace onlinemanip {
namespace {

constexpr int kMaxDepth = 4096;
constexpr int kMaxSubscript = 1'000'000;

bool IsVarChar(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
         ch == '{' || ch == '}' || ch == ',';
}

class Parser {
 public:
  Parser(std::string_view text, bool allow_ws)
      : text_(text), allow_ws_(allow_ws) {}

  BoolExpr Run() {
    BoolExpr e = Formula(0);
    SkipWs();
    if (pos_ != text_.size()) Fail("trailing characters");
    return e;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError("formula: " + what + " at offset " +
                     std::to_string(pos_));
  }

  void SkipWs() {
    if (!allow_ws_) return;
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void Expect(char ch) {
    SkipWs();
    if (pos_ >= text_.size() || text_[pos_] != ch) {
      Fail(std::string("expected '") + ch + "'");
    }
    ++pos_;
  }

  BoolExpr Formula(int depth) {
    if (depth > kMaxDepth) Fail("nesting too deep");
    SkipWs();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '!') {
      ++pos_;
      return BoolExpr::Not(Formula(depth + 1));
    }
    if (ch == '(') {
      ++pos_;
      BoolExpr lhs = Formula(depth + 1);
      SkipWs();
      if (pos_ >= text_.size()) Fail("unexpected end of input");
      const char op = text_[pos_];
      if (op != '&' && op != '|') Fail("expected '&' or '|'");
      ++pos_;
      BoolExpr rhs = Formula(depth + 1);
      Expect(')');
      return op == '&' ? BoolExpr::And(lhs, rhs) : BoolExpr::Or(lhs, rhs);
    }
    const size_t start = pos_;
    while (pos_ < text_.size() && IsVarChar(text_[pos_])) ++pos_;
    if (pos_ == start) Fail("expected a variable");
    return BoolExpr::Var(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  bool allow_ws_;
  size_t pos_ = 0;
};

// Parses a positive decimal without leading zeros.
std::optional<int> ParseSubscript(std::string_view s) {
  if (s.empty() || s[0] == '0') return std::nullopt;
  long value = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + (ch - '0');
    if (value > kMaxSubscript) return std::nullopt;
  }
  return static_cast<int>(value);
}

std::optional<TieredVar> ParseTieredName(std::string_view name) {
  constexpr std::string_view kPrefix = "x_{";
  if (name.size() < kPrefix.size() + 4 || name.substr(0, 3) != kPrefix ||
      name.back() != '}') {
    return std::nullopt;
  }
  std::string_view body = name.substr(3, name.size() - 4);
  const size_t comma = body.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto i = ParseSubscript(body.substr(0, comma));
  auto j = ParseSubscript(body.substr(comma + 1));
  if (!i || !j) return std::nullopt;
  return TieredVar{*i, *j};
}

}  // namespace

BoolExpr BoolExpr::Parse(std::string_view text, bool allow_whitespace) {
  return Parser(text, allow_whitespace).Run();
}

int BoolExpr::AddVar(const std::string& name) {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it != variables_.end()) return static_cast<int>(it - variables_.begin());
  variables_.push_back(name);
  return static_cast<int>(variables_.size()) - 1;
}

// Copies `other`'s nodes into this pool and returns the index of its root.
int BoolExpr::Splice(const BoolExpr& other) {
  const int offset = static_cast<int>(nodes_.size());
  for (const Node& n : other.nodes_) {
    Node copy = n;
    if (copy.kind == Kind::kVar) copy.var = AddVar(other.variables_[n.var]);
    if (copy.lhs >= 0) copy.lhs += offset;
    if (copy.rhs >= 0) copy.rhs += offset;
    nodes_.push_back(copy);
  }
  return other.root_ + offset;
}

BoolExpr BoolExpr::Var(std::string name) {
  BoolExpr e;
  e.nodes_.push_back({Kind::kVar, e.AddVar(name), -1, -1});
  e.root_ = 0;
  return e;
}

BoolExpr BoolExpr::Not(const BoolExpr& x) {
  BoolExpr e;
  const int child = e.Splice(x);
  e.nodes_.push_back({Kind::kNot, -1, child, -1});
  e.root_ = static_cast<int>(e.nodes_.size()) - 1;
  return e;
}

BoolExpr BoolExpr::And(const BoolExpr& a, const BoolExpr& b) {
  BoolExpr e;
  const int l = e.Splice(a);
  const int r = e.Splice(b);
  e.nodes_.push_back({Kind::kAnd, -1, l, r});
  e.root_ = static_cast<int>(e.nodes_.size()) - 1;
  return e;
}

BoolExpr BoolExpr::Or(const BoolExpr& a, const BoolExpr& b) {
  BoolExpr e;
  const int l = e.Splice(a);
  const int r = e.Splice(b);
  e.nodes_.push_back({Kind::kOr, -1, l, r});
  e.root_ = static_cast<int>(e.nodes_.size()) - 1;
  return e;
}

bool BoolExpr::Evaluate(const std::vector<bool>& values) const {
  // Children always precede their parent in the pool.
  std::vector<char> v(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Kind::kVar:
        v[i] = values.at(n.var);
        break;
      case Kind::kNot:
        v[i] = !v[n.lhs];
        break;
      case Kind::kAnd:
        v[i] = v[n.lhs] && v[n.rhs];
        break;
      case Kind::kOr:
        v[i] = v[n.lhs] || v[n.rhs];
        break;
    }
  }
  return v[root_];
}

std::string BoolExpr::ToString() const {
  std::vector<std::string> s(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Kind::kVar:
        s[i] = variables_[n.var];
        break;
      case Kind::kNot:
        s[i] = "!" + s[n.lhs];
        break;
      case Kind::kAnd:
        s[i] = "(" + s[n.lhs] + "&" + s[n.rhs] + ")";
        break;
      case Kind::kOr:
        s[i] = "(" + s[n.lhs] + "|" + s[n.rhs] + ")";
        break;
    }
  }
  return s[root_];
}

TieredFormula TieredFormula::Parse(std::string_view text) {
  TieredFormula f;
  f.expr_ = BoolExpr::Parse(text, /*allow_whitespace=*/false);
  for (const std::string& name : f.expr_.variables()) {
    auto var = ParseTieredName(name);
    if (!var) {
      throw ParseError("formula: '" + name +
                       "' is not a tiered variable x_{i,j} with i,j >= 1");
    }
    f.vars_.push_back(*var);
    f.width_ = std::max(f.width_, var->position);
    f.blocks_ = std::max(f.blocks_, var->block);
  }
  return f;
}

std::string TieredFormula::VarName(int block, int position) {
  return "x_{" + std::to_string(block) + "," + std::to_string(position) + "}";
}

bool TieredFormula::AllBlocksInhabited() const {
  std::vector<bool> seen(blocks_ + 1, false);
  for (const TieredVar& v : vars_) seen[v.block] = true;
  return std::all_of(seen.begin() + 1, seen.end(), [](bool b) { return b; });
}

bool TieredFormula::Evaluate(
    const std::vector<std::vector<bool>>& assignment) const {
  std::vector<bool> values(vars_.size());
  for (size_t k = 0; k < vars_.size(); ++k) {
    values[k] = assignment.at(vars_[k].block - 1).at(vars_[k].position - 1);
  }
  return expr_.Evaluate(values);
}

}  // namespace onlinemanip

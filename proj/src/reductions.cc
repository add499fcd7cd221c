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

#include "onlinemanip/reductions.h"

#include <algorithm>
#include <map>
#include <set>

#include "onlinemanip/errors.h"

namespace onlinemanip {
namespace {

using nlohmann::json;

constexpr int kMaxPartitionItems = 30;

Weight HalfTotal(const PartitionInstance& p) {
  Weight total = 0;
  for (const Weight& w : p.w) total += w;
  return total / 2;
}

json PartitionJson(const PartitionInstance& p) {
  json w = json::array();
  for (const Weight& x : p.w) w.push_back(WeightToJson(x));
  return w;
}

// Shared cast voters and candidates of both Partition reductions.
Instance PartitionBase(const PartitionInstance& p, int m) {
  CheckPartitionPromise(p);
  if (m < 2) throw InvalidInstanceError("reduction needs m >= 2 candidates");
  const Weight half = HalfTotal(p);

  Instance inst;
  ElectionSnapshot& s = inst.oms.snapshot;
  for (int i = 1; i <= m; ++i) s.candidates.push_back("c" + std::to_string(i));
  for (int i = 1; i <= m - 2; ++i) {
    PreferenceOrder vote = {i - 1};
    for (int c = 0; c < m; ++c) {
      if (c != i - 1) vote.push_back(c);
    }
    s.cast.push_back({"v" + std::to_string(i), (m - 1) * half - i, vote});
  }
  for (int c = 0; c < m; ++c) inst.oms.sigma.push_back(c);
  inst.rule = Plurality{};
  inst.variant.target = Target::kSegment;
  inst.variant.winner_model = WinnerModel::kUnique;
  inst.variant.mode = QuantifierMode::kOnline;
  inst.variant.weighted = true;
  return inst;
}

int DecimalWidth(int n) { return static_cast<int>(std::to_string(n).size()); }

}  // namespace

void CheckPartitionPromise(const PartitionInstance& p) {
  if (p.w.empty()) throw InvalidInstanceError("partition: empty sequence");
  Weight total = 0;
  for (const Weight& x : p.w) {
    if (x <= 0) throw InvalidInstanceError("partition: weights must be positive");
    total += x;
  }
  if (total % 2 != 0) {
    throw InvalidInstanceError("partition: total " + total.str() +
                               " is odd (promise violated)");
  }
}

bool PartitionBruteforce(const PartitionInstance& p) {
  CheckPartitionPromise(p);
  const size_t z = p.w.size();
  if (z > kMaxPartitionItems) {
    throw ResourceLimitError("partition brute force limited to " +
                             std::to_string(kMaxPartitionItems) + " items");
  }
  const Weight half = HalfTotal(p);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << z); ++mask) {
    Weight sum = 0;
    for (size_t i = 0; i < z; ++i) {
      if (mask >> i & 1) sum += p.w[i];
    }
    if (sum == half) return true;
  }
  return false;
}

Reduction ReducePartitionDwcmUw(const PartitionInstance& p, int m) {
  Reduction r;
  r.instance = PartitionBase(p, m);
  Instance& inst = r.instance;
  for (size_t i = 0; i < p.w.size(); ++i) {
    inst.oms.snapshot.pending.push_back(
        {"u" + std::to_string(i + 1), (m - 1) * p.w[i], true});
  }
  inst.oms.d = 0;
  inst.variant.direction = Direction::kDestructive;
  r.provenance = {{"reduction", "partition-dwcm"},
                  {"source", {{"problem", "partition"}, {"w", PartitionJson(p)}}},
                  {"m", m},
                  {"expected", "solve answer equals partition answer"}};
  return r;
}

Reduction ReducePartitionCoWcmUw(const PartitionInstance& p, int m) {
  Reduction r;
  r.instance = PartitionBase(p, m);
  Instance& inst = r.instance;
  inst.oms.snapshot.pending.push_back({"u0", 0, true});
  for (size_t i = 0; i < p.w.size(); ++i) {
    inst.oms.snapshot.pending.push_back(
        {"u" + std::to_string(i + 1), (m - 1) * p.w[i], false});
  }
  inst.oms.d = m - 1;
  inst.variant.direction = Direction::kConstructive;
  r.provenance = {{"reduction", "partition-cowcm"},
                  {"source", {{"problem", "partition"}, {"w", PartitionJson(p)}}},
                  {"m", m},
                  {"expected", "solve answer is the negation of partition"}};
  return r;
}

void CheckQbf(const QbfInstance& q) {
  if (q.blocks.empty()) throw InvalidInstanceError("qbf: no quantifier blocks");
  std::map<std::string, int> block_of;
  for (size_t i = 0; i < q.blocks.size(); ++i) {
    if (q.blocks[i].empty()) {
      throw InvalidInstanceError("qbf: block " + std::to_string(i + 1) +
                                 " is empty");
    }
    for (const std::string& v : q.blocks[i]) {
      if (!block_of.emplace(v, static_cast<int>(i)).second) {
        throw InvalidInstanceError("qbf: variable '" + v +
                                   "' quantified twice");
      }
    }
  }
  std::set<int> used;
  for (const std::string& v : q.matrix.variables()) {
    auto it = block_of.find(v);
    if (it == block_of.end()) {
      throw InvalidInstanceError("qbf: free variable '" + v + "'");
    }
    used.insert(it->second);
  }
  for (size_t i = 0; i < q.blocks.size(); ++i) {
    if (!used.count(static_cast<int>(i))) {
      throw InvalidInstanceError("qbf: block " + std::to_string(i + 1) +
                                 " has no variable occurring in the matrix");
    }
  }
}

bool EvalQbf(const QbfInstance& q, int max_variables) {
  CheckQbf(q);
  int total = 0;
  for (const auto& b : q.blocks) total += static_cast<int>(b.size());
  if (total > max_variables) {
    throw ResourceLimitError("qbf has " + std::to_string(total) +
                             " variables, limit " +
                             std::to_string(max_variables));
  }
  // slot[k] = position of matrix variable k in the flat quantifier order.
  std::map<std::string, int> flat;
  for (const auto& b : q.blocks) {
    for (const std::string& v : b) flat.emplace(v, static_cast<int>(flat.size()));
  }
  std::vector<int> slot;
  for (const std::string& v : q.matrix.variables()) slot.push_back(flat.at(v));

  std::vector<bool> values(total, false);
  auto rec = [&](auto&& self, size_t block, int offset) -> bool {
    if (block == q.blocks.size()) {
      std::vector<bool> args(slot.size());
      for (size_t k = 0; k < slot.size(); ++k) args[k] = values[slot[k]];
      return q.matrix.Evaluate(args);
    }
    const int n = static_cast<int>(q.blocks[block].size());
    const bool exists = block % 2 == 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      for (int j = 0; j < n; ++j) values[offset + j] = mask >> j & 1;
      const bool v = self(self, block + 1, offset + n);
      if (v == exists) return exists;
    }
    return !exists;
  };
  return rec(rec, 0, 0);
}

QbfInstance QbfFromJson(const json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j.contains("matrix")) {
    throw ParseError("qbf: expected an object with 'blocks' and 'matrix'");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "blocks" && key != "matrix") {
      throw ParseError("qbf: unknown field '" + key + "'");
    }
  }
  QbfInstance q;
  if (!j["blocks"].is_array()) throw ParseError("qbf: 'blocks' must be an array");
  for (const json& b : j["blocks"]) {
    if (!b.is_array()) throw ParseError("qbf: each block must be an array");
    std::vector<std::string> vars;
    for (const json& v : b) {
      if (!v.is_string()) throw ParseError("qbf: variable names are strings");
      vars.push_back(v.get<std::string>());
    }
    q.blocks.push_back(std::move(vars));
  }
  if (!j["matrix"].is_string()) throw ParseError("qbf: 'matrix' must be a string");
  q.matrix = BoolExpr::Parse(j["matrix"].get<std::string>(),
                             /*allow_whitespace=*/true);
  return q;
}

json QbfToJson(const QbfInstance& q) {
  return {{"blocks", q.blocks}, {"matrix", q.matrix.ToString()}};
}

std::string SuccessorName(const std::string& base, int index, int count) {
  std::string digits = std::to_string(index);
  const int width = DecimalWidth(count);
  return base + std::string(width - static_cast<int>(digits.size()), '0') +
         digits;
}

Reduction ReduceQbfToOnlineUcm(const QbfInstance& q) {
  CheckQbf(q);

  // Block-major renaming into x_{i,j}.
  std::map<std::string, std::string> rename;
  json mapping = json::object();
  int max_block = 0;
  for (size_t i = 0; i < q.blocks.size(); ++i) {
    max_block = std::max(max_block, static_cast<int>(q.blocks[i].size()));
    for (size_t j = 0; j < q.blocks[i].size(); ++j) {
      const std::string tiered = TieredFormula::VarName(
          static_cast<int>(i + 1), static_cast<int>(j + 1));
      rename[q.blocks[i][j]] = tiered;
      mapping[q.blocks[i][j]] = tiered;
    }
  }
  // Rebuild the matrix over the renamed variables.
  const BoolExpr& src = q.matrix;
  std::vector<BoolExpr> built;
  built.reserve(src.nodes().size());
  for (const BoolExpr::Node& n : src.nodes()) {
    switch (n.kind) {
      case BoolExpr::Kind::kVar:
        built.push_back(BoolExpr::Var(rename.at(src.variables()[n.var])));
        break;
      case BoolExpr::Kind::kNot:
        built.push_back(BoolExpr::Not(built[n.lhs]));
        break;
      case BoolExpr::Kind::kAnd:
        built.push_back(BoolExpr::And(built[n.lhs], built[n.rhs]));
        break;
      case BoolExpr::Kind::kOr:
        built.push_back(BoolExpr::Or(built[n.lhs], built[n.rhs]));
        break;
    }
  }
  const std::string formula = built[src.root()].ToString();

  Reduction r;
  Instance& inst = r.instance;
  ElectionSnapshot& s = inst.oms.snapshot;
  const int extra = 2 * max_block;
  s.candidates.push_back(formula);
  for (int k = 1; k <= extra; ++k) {
    s.candidates.push_back(SuccessorName(formula, k, extra));
  }
  const int l = static_cast<int>(q.blocks.size());
  for (int i = 1; i <= l; ++i) {
    s.pending.push_back({SuccessorName("", i, l), 1, i % 2 == 1});
  }
  // c sorts first, so index order puts c on top of sigma.
  for (int c = 0; c <= extra; ++c) inst.oms.sigma.push_back(c);
  inst.oms.d = 0;
  inst.rule = TieredRule{};
  inst.variant = ProblemVariant{};
  inst.variant.weighted = false;

  r.provenance = {{"reduction", "qbf"},
                  {"source", {{"problem", "qbf"}, {"qbf", QbfToJson(q)}}},
                  {"mapping", mapping},
                  {"expected", "solve answer equals qbf truth value"}};
  return r;
}

}  // namespace onlinemanip

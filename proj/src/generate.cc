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

#include "onlinemanip/generate.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "onlinemanip/errors.h"
#include "onlinemanip/solver.h"

namespace onlinemanip {
namespace {

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) out += (out.empty() ? "" : "; ") + l;
  return out;
}

// Coin flip with probability p, from 53 random bits.
bool Bernoulli(Rng& rng, double p) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p;
}

}  // namespace

std::int64_t UniformInt(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidInstanceError("UniformInt: empty range");
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::int64_t>(rng());
  }
  const std::uint64_t range = span + 1;
  // Reject the top partial bucket so every value is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

PreferenceOrder RandomOrder(Rng& rng, int m) {
  PreferenceOrder order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    std::swap(order[i], order[UniformInt(rng, 0, i)]);
  }
  return order;
}

std::vector<std::string> DefaultCandidateNames(int m) {
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) {
    if (m <= 26) {
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    } else {
      std::string digits = std::to_string(i + 1);
      const size_t width = std::to_string(m).size();
      names.push_back("c" + std::string(width - digits.size(), '0') + digits);
    }
  }
  return names;
}

std::vector<std::string> CheckGenOptions(const GenOptions& o) {
  std::vector<std::string> errors;
  if (o.m < 1) errors.push_back("m must be at least 1");
  if (o.cast < 0) errors.push_back("cast voter count must be nonnegative");
  if (o.pending < 1) errors.push_back("at least one pending voter is needed");
  if (o.min_weight < 0) errors.push_back("weights must be nonnegative");
  if (o.min_weight > o.max_weight) {
    errors.push_back("min weight exceeds max weight");
  }
  if (!o.variant.weighted && (o.min_weight != 1 || o.max_weight != 1)) {
    errors.push_back("unweighted instances need weight range [1, 1]");
  }
  if (o.manipulator_probability < 0 || o.manipulator_probability > 1) {
    errors.push_back("manipulator probability must lie in [0, 1]");
  }
  if (o.variant.direction == Direction::kDestructive &&
      o.variant.target == Target::kPinpoint) {
    errors.push_back("destructive pinpoint is not a defined problem");
  }
  if (o.variant.manipulator_bound && *o.variant.manipulator_bound < 1) {
    errors.push_back("manipulator bound must be positive");
  }
  if (o.m >= 1) {
    for (const std::string& e : ValidateRule(o.rule, o.m)) errors.push_back(e);
  }
  return errors;
}

Instance RandomInstance(const GenOptions& o, Rng& rng) {
  const std::vector<std::string> errors = CheckGenOptions(o);
  if (!errors.empty()) throw InvalidInstanceError(JoinLines(errors));

  Instance inst;
  inst.rule = o.rule;
  inst.variant = o.variant;
  ElectionSnapshot& s = inst.oms.snapshot;
  s.candidates = DefaultCandidateNames(o.m);
  for (int i = 0; i < o.cast; ++i) {
    s.cast.push_back({"v" + std::to_string(i + 1),
                      UniformInt(rng, o.min_weight, o.max_weight),
                      RandomOrder(rng, o.m)});
  }
  int manipulators = 0;
  const int bound = o.variant.manipulator_bound.value_or(o.pending);
  for (int i = 0; i < o.pending; ++i) {
    bool manip;
    if (i == 0 && o.variant.mode != QuantifierMode::kFreeform) {
      manip = true;
    } else {
      manip = Bernoulli(rng, o.manipulator_probability);
    }
    if (manip && manipulators >= bound) manip = false;
    manipulators += manip;
    s.pending.push_back({"p" + std::to_string(i + 1),
                         UniformInt(rng, o.min_weight, o.max_weight), manip});
  }
  if (o.random_sigma) {
    inst.oms.sigma = RandomOrder(rng, o.m);
  } else {
    inst.oms.sigma.resize(o.m);
    std::iota(inst.oms.sigma.begin(), inst.oms.sigma.end(), 0);
  }
  inst.oms.d = o.random_d ? static_cast<int>(UniformInt(rng, 0, o.m - 1)) : 0;
  return inst;
}

PartitionInstance RandomPartition(Rng& rng, int z, std::int64_t max_weight) {
  if (z < 1 || max_weight < 1) {
    throw InvalidInstanceError("partition generator needs z >= 1, max >= 1");
  }
  PartitionInstance p;
  Weight total = 0;
  for (int i = 0; i < z; ++i) {
    p.w.push_back(UniformInt(rng, 1, max_weight));
    total += p.w.back();
  }
  if (total % 2 != 0) p.w.back() += 1;
  return p;
}

QbfInstance RandomQbf(Rng& rng, int blocks, int max_per_block) {
  if (blocks < 1 || max_per_block < 1) {
    throw InvalidInstanceError("qbf generator needs blocks >= 1, width >= 1");
  }
  QbfInstance q;
  std::vector<BoolExpr> leaves;
  for (int i = 1; i <= blocks; ++i) {
    const int n = static_cast<int>(UniformInt(rng, 1, max_per_block));
    std::vector<std::string> block;
    for (int j = 1; j <= n; ++j) {
      block.push_back("q" + std::to_string(i) + "_" + std::to_string(j));
      leaves.push_back(BoolExpr::Var(block.back()));
    }
    q.blocks.push_back(std::move(block));
  }
  // A few repeated occurrences make the matrices less tree-like.
  const int total = static_cast<int>(leaves.size());
  const int extra = static_cast<int>(UniformInt(rng, 0, 2));
  for (int e = 0; e < extra; ++e) {
    leaves.push_back(leaves[UniformInt(rng, 0, total - 1)]);
  }
  for (BoolExpr& leaf : leaves) {
    if (Bernoulli(rng, 0.4)) leaf = BoolExpr::Not(leaf);
  }
  // Random binary tree: repeatedly merge two random subtrees.
  while (leaves.size() > 1) {
    const size_t i = UniformInt(rng, 0, leaves.size() - 1);
    BoolExpr a = leaves[i];
    leaves.erase(leaves.begin() + i);
    const size_t j = UniformInt(rng, 0, leaves.size() - 1);
    BoolExpr b = leaves[j];
    BoolExpr merged =
        Bernoulli(rng, 0.5) ? BoolExpr::And(a, b) : BoolExpr::Or(a, b);
    if (Bernoulli(rng, 0.15)) merged = BoolExpr::Not(merged);
    leaves[j] = std::move(merged);
  }
  q.matrix = leaves.front();
  return q;
}

std::uint64_t ForEachSnapshot(
    const SnapshotGrid& grid,
    const std::function<bool(const ElectionSnapshot&)>& fn) {
  const std::vector<PreferenceOrder> orders = AllOrders(grid.m);
  const int max_cast =
      grid.max_cast < 0 ? grid.max_voters - 1 : grid.max_cast;
  const int max_pending =
      grid.max_pending < 0 ? grid.max_voters : grid.max_pending;
  std::uint64_t visited = 0;

  ElectionSnapshot s;
  s.candidates = DefaultCandidateNames(grid.m);
  for (int n = 1; n <= grid.max_voters; ++n) {
    for (int cast = 0; cast <= std::min(n - 1, max_cast); ++cast) {
      const int pending = n - cast;
      if (pending > max_pending) continue;
      // Odometer over cast (order, weight) and pending (weight, role).
      const size_t co = orders.size(), cw = grid.cast_weights.size();
      const size_t pw = grid.pending_weights.size();
      std::vector<size_t> digits(2 * cast + 2 * pending, 0);
      std::vector<size_t> radix;
      for (int i = 0; i < cast; ++i) {
        radix.push_back(co);
        radix.push_back(cw);
      }
      for (int i = 0; i < pending; ++i) {
        radix.push_back(pw);
        radix.push_back(i == 0 ? 1 : 2);
      }
      while (true) {
        s.cast.clear();
        s.pending.clear();
        for (int i = 0; i < cast; ++i) {
          s.cast.push_back({"v" + std::to_string(i + 1),
                            grid.cast_weights[digits[2 * i + 1]],
                            orders[digits[2 * i]]});
        }
        for (int i = 0; i < pending; ++i) {
          const size_t base = 2 * cast + 2 * i;
          s.pending.push_back({"p" + std::to_string(i + 1),
                               grid.pending_weights[digits[base]],
                               i == 0 || digits[base + 1] == 1});
        }
        ++visited;
        if (!fn(s)) return visited;
        size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == radix[pos]) {
          digits[pos++] = 0;
        }
        if (pos == digits.size()) break;
      }
    }
  }
  return visited;
}

std::vector<PartitionInstance> PartitionGrid(int max_items,
                                             std::int64_t max_weight) {
  std::vector<PartitionInstance> out;
  std::vector<std::int64_t> seq;
  auto rec = [&](auto&& self, std::int64_t min_next, std::int64_t sum) -> void {
    if (!seq.empty() && sum % 2 == 0) {
      PartitionInstance p;
      for (std::int64_t x : seq) p.w.push_back(x);
      out.push_back(std::move(p));
    }
    if (static_cast<int>(seq.size()) == max_items) return;
    for (std::int64_t x = min_next; x <= max_weight; ++x) {
      seq.push_back(x);
      self(self, x, sum + x);
      seq.pop_back();
    }
  };
  rec(rec, 1, 0);
  return out;
}

}  // namespace onlinemanip

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

// Instance generators for the hardness reductions (Partition to unique-winner
// plurality manipulation, QBF to manipulation of the tiered system), each
// paired with a brute-force decider of its source problem.

#ifndef ONLINEMANIP_REDUCTIONS_H_
#define ONLINEMANIP_REDUCTIONS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "onlinemanip/formula.h"
#include "onlinemanip/instance.h"

namespace onlinemanip {

// Positive integers with an even total 2W.
struct PartitionInstance {
  std::vector<Weight> w;
};

// Throws InvalidInstanceError unless w is nonempty, positive and sums to an
// even number.
void CheckPartitionPromise(const PartitionInstance& p);

// Is there a subset summing to W? Exhaustive over all 2^z subsets.
bool PartitionBruteforce(const PartitionInstance& p);

// (Q_1 X_1)(Q_2 X_2)...(Q_l X_l)[matrix], Q_1 = exists, alternating.
struct QbfInstance {
  std::vector<std::vector<std::string>> blocks;
  BoolExpr matrix;
};

// Throws InvalidInstanceError if a block is empty, a variable is quantified
// twice, the matrix mentions an unquantified variable, or some block has no
// variable occurring in the matrix.
void CheckQbf(const QbfInstance& q);

// Truth value by exhaustive recursion over the blocks. Throws
// ResourceLimitError past `max_variables` quantified variables.
bool EvalQbf(const QbfInstance& q, int max_variables = 24);

// {"blocks": [["a","b"],["c"]], "matrix": "(a&!c)"}; whitespace is allowed in
// the matrix.
QbfInstance QbfFromJson(const nlohmann::json& j);
nlohmann::json QbfToJson(const QbfInstance& q);

struct Reduction {
  Instance instance;
  // Source instance and the name mapping, for the provenance sidecar.
  nlohmann::json provenance;
};

// Candidates c1..cm, sigma c1 > ... > cm, d = c1 (everything forbidden).
// Cast voters v_i (i <= m-2) rank c_i first with weight (m-1)W - i; pending
// manipulators u_i of weight (m-1)w_i. Plurality, destructive, unique winner.
// The coalition can force a tie iff the Partition instance is a yes-instance.
Reduction ReducePartitionDwcmUw(const PartitionInstance& p, int m);

// Same cast voters; pending: a weight-0 manipulator u followed by
// nonmanipulators u_i of weight (m-1)w_i. d = cm (goal = everyone), unique
// winner, constructive. Solve answers no iff the Partition instance is a
// yes-instance.
Reduction ReducePartitionCoWcmUw(const PartitionInstance& p, int m);

// Candidate names: the formula text c (variables renamed block-major to
// x_{i,j}) plus 2*max_i |X_i| names c + zero-padded 1, 2, ...; voters
// named by zero-padded 1..l, odd ones in the coalition; sigma lists the
// candidates in name order, which puts c on top; d = c; tiered rule.
Reduction ReduceQbfToOnlineUcm(const QbfInstance& q);

// Suffix scheme for successor names: `base` followed by `index` (1-based)
// zero-padded to the width of `count`. Names sort in index order and all
// sort after `base`.
std::string SuccessorName(const std::string& base, int index, int count);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_REDUCTIONS_H_

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

// Named instance grids on which a fast procedure (or a reduction) is
// compared with the exhaustive solver.
//
//   plurality      m in {2,3}, <= 4 voters, weights {0,1,2}, every d, both
//                  directions: plurality_wcm / plurality_dwcm vs solve
//   approval-veto  k in {1,2}, k-approval and k-veto, m in {2,3,4}, m >= k,
//                  <= 4 unit-weight voters, every d: greedy vs solve, and
//                  veto1_threshold vs greedy on 1-veto
//   veto-random    m = 4, <= 5 pending voters, weights <= 5, `count` seeded
//                  instances: veto_wcm_pnp vs solve plus threshold minimality
//   veto-m3        m = 3 exhaustive slice of the same
//   partition      every Partition multiset with <= 8 items <= 6, m in
//                  {2,3}: both Partition reductions vs brute force
//   qbf            `count` seeded QBFs, <= 3 blocks of <= 2 variables: the
//                  tiered reduction vs exhaustive evaluation

#ifndef ONLINEMANIP_CROSSCHECK_H_
#define ONLINEMANIP_CROSSCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "onlinemanip/election.h"
#include "onlinemanip/fast.h"

namespace onlinemanip {

struct CrosscheckOptions {
  std::uint64_t seed = 1;
  std::uint64_t count = 1000;
  std::uint64_t node_budget = 10'000'000;
  // Disagreements kept verbatim in the summary.
  std::size_t max_reported = 5;
};

struct CrosscheckSummary {
  std::string grid;
  std::uint64_t instances = 0;
  std::uint64_t checks = 0;
  std::uint64_t agreements = 0;
  std::uint64_t nodes = 0;
  // False when a resource limit cut the run short.
  bool complete = true;
  std::string incomplete_reason;
  std::vector<nlohmann::json> disagreements;
  // Grid-specific counters (yes/no balance and the like).
  nlohmann::json extra = nlohmann::json::object();

  bool ok() const { return complete && checks == agreements; }
};

std::vector<std::string> CrosscheckGrids();

// Throws InvalidInstanceError for an unknown grid name.
CrosscheckSummary RunCrosscheck(const std::string& grid,
                                const CrosscheckOptions& options);

nlohmann::json SummaryToJson(const CrosscheckSummary& summary);

// Recomputes the demands behind `report` from the instance and checks that
// each threshold is feasible and (when positive) that one less is not.
bool ThresholdsMinimal(const Oms& oms, const ThresholdReport& report,
                       std::uint64_t state_budget = 10'000'000);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_CROSSCHECK_H_

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

// Machine-readable run reports. The schema is versioned; golden files pin
// it. Reports are reproducible: equal inputs and seed give equal reports
// once wall_ms is dropped.

#ifndef ONLINEMANIP_REPORT_H_
#define ONLINEMANIP_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "onlinemanip/election.h"
#include "onlinemanip/fast.h"

namespace onlinemanip {

inline constexpr char kReportSchema[] = "onlinemanip.report/1";

struct RunReport {
  std::string command;
  // InstanceDigest of the input, empty when there is no single instance.
  std::string digest;
  std::optional<bool> answer;
  // Command-specific payload: witness, thresholds, engine answers, counts.
  nlohmann::json details = nlohmann::json::object();
  std::uint64_t nodes = 0;
  double wall_ms = 0;
  std::optional<std::uint64_t> seed;
};

nlohmann::json ReportToJson(const RunReport& report,
                            bool include_wall_time = true);

// One compact JSON line.
std::string FormatReportJson(const RunReport& report,
                             bool include_wall_time = true);

// Two-column "key  value" table for humans.
std::string FormatReportTable(const RunReport& report,
                              bool include_wall_time = true);

// answer, first_move, upfront votes and (if present) the trace as a list of
// {"history": [...], "vote": [...]} entries, all by candidate name.
nlohmann::json DecisionToJson(const Decision& decision,
                              const std::vector<std::string>& candidates);

nlohmann::json ThresholdReportToJson(const ThresholdReport& report,
                                     const std::vector<std::string>& candidates);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_REPORT_H_

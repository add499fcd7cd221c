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

#include "onlinemanip/report.h"

#include <algorithm>
#include <sstream>

#include "onlinemanip/instance.h"

namespace onlinemanip {

using nlohmann::json;

json ReportToJson(const RunReport& r, bool include_wall_time) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = r.command;
  j["digest"] = r.digest;
  j["answer"] = r.answer ? json(*r.answer) : json(nullptr);
  j["details"] = r.details;
  j["nodes"] = r.nodes;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  if (include_wall_time) j["wall_ms"] = r.wall_ms;
  return j;
}

std::string FormatReportJson(const RunReport& r, bool include_wall_time) {
  return ReportToJson(r, include_wall_time).dump();
}

std::string FormatReportTable(const RunReport& r, bool include_wall_time) {
  const json j = ReportToJson(r, include_wall_time);
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [key, value] : j.items()) {
    if (key == "details") continue;
    rows.emplace_back(key, value.is_string() ? value.get<std::string>()
                                             : value.dump());
  }
  for (const auto& [key, value] : r.details.items()) {
    rows.emplace_back(key, value.is_string() ? value.get<std::string>()
                                             : value.dump());
  }
  size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::ostringstream out;
  for (const auto& [key, value] : rows) {
    out << key << std::string(width - key.size() + 2, ' ') << value << "\n";
  }
  return out.str();
}

json DecisionToJson(const Decision& d,
                    const std::vector<std::string>& candidates) {
  json j;
  j["answer"] = d.answer;
  j["first_move"] =
      d.first_move ? OrderToJson(*d.first_move, candidates) : json(nullptr);
  if (!d.upfront_votes.empty()) {
    json votes = json::array();
    for (const PreferenceOrder& v : d.upfront_votes) {
      votes.push_back(OrderToJson(v, candidates));
    }
    j["upfront_votes"] = votes;
  }
  if (d.trace) {
    json entries = json::array();
    for (const auto& [history, vote] : *d.trace) {
      json h = json::array();
      for (const PreferenceOrder& v : history) h.push_back(OrderToJson(v, candidates));
      entries.push_back({{"history", h}, {"vote", OrderToJson(vote, candidates)}});
    }
    j["trace"] = entries;
  }
  return j;
}

json ThresholdReportToJson(const ThresholdReport& t,
                           const std::vector<std::string>& candidates) {
  auto groups = [&](const std::vector<std::vector<Weight>>& parts,
                    const std::vector<CandidateIndex>& bins) {
    json out = json::object();
    for (size_t i = 0; i < bins.size(); ++i) {
      json ws = json::array();
      for (const Weight& w : parts[i]) ws.push_back(WeightToJson(w));
      out[candidates[bins[i]]] = ws;
    }
    return out;
  };
  return {{"t1", WeightToJson(t.t1)},
          {"t2", WeightToJson(t.t2)},
          {"coalition_partition",
           groups(t.coalition_partition, t.coalition_bins)},
          {"adversary_partition",
           groups(t.adversary_partition, t.adversary_bins)}};
}

}  // namespace onlinemanip

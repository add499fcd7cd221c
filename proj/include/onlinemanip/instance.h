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

// The instance file format: one JSON document
//
//   {
//     "candidates": ["a", "b", "c"],
//     "cast":    [{"name": "v1", "weight": 1, "vote": ["b", "a", "c"]}],
//     "pending": [{"name": "u", "weight": 2, "manipulator": true}],
//     "sigma":   ["a", "b", "c"],
//     "d":       "b",
//     "variant": {"direction": "constructive", "target": "segment",
//                 "winner_model": "nonunique", "mode": "online",
//                 "k": 3, "weighted": true},
//     "rule":    {"type": "plurality"}
//   }
//
// Weights are JSON integers or decimal strings (for values beyond 64 bits).
// "k" and "weighted" are optional; "weighted" defaults to whether any weight
// differs from 1. Unknown fields anywhere are rejected.

#ifndef ONLINEMANIP_INSTANCE_H_
#define ONLINEMANIP_INSTANCE_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "onlinemanip/election.h"
#include "onlinemanip/rules.h"

namespace onlinemanip {

struct Instance {
  Oms oms;
  ProblemVariant variant;
  VotingRule rule = Plurality{};

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws ParseError; messages carry the line number of the offending value.
Instance ParseInstance(std::string_view text);
Instance InstanceFromJson(const nlohmann::json& j);

nlohmann::json InstanceToJson(const Instance& instance);
// Pretty-printed with a trailing newline.
std::string SerializeInstance(const Instance& instance);

nlohmann::json RuleToJson(const VotingRule& rule);
VotingRule RuleFromJson(const nlohmann::json& j);

nlohmann::json WeightToJson(const Weight& w);
Weight WeightFromJson(const nlohmann::json& j);

nlohmann::json OrderToJson(const PreferenceOrder& order,
                           const std::vector<std::string>& candidates);

// Validate() plus rule applicability.
std::vector<std::string> ValidateInstance(const Instance& instance);

// 64-bit FNV-1a over the compact serialization, as 16 hex digits.
std::string InstanceDigest(const Instance& instance);

}  // namespace onlinemanip

#endif  // ONLINEMANIP_INSTANCE_H_

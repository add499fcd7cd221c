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

#include "onlinemanip/instance.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "onlinemanip/errors.h"

namespace onlinemanip {
namespace {

using nlohmann::json;

struct SchemaError {
  std::string pointer;
  std::string message;
};

[[noreturn]] void Fail(const std::string& pointer, const std::string& msg) {
  throw SchemaError{pointer, msg};
}

std::string Child(const std::string& pointer, std::string_view key) {
  std::string out = pointer + "/";
  for (char ch : key) {
    if (ch == '~') {
      out += "~0";
    } else if (ch == '/') {
      out += "~1";
    } else {
      out += ch;
    }
  }
  return out;
}

std::string Child(const std::string& pointer, size_t index) {
  return pointer + "/" + std::to_string(index);
}

void CheckObject(const json& j, const std::string& ptr,
                 const std::set<std::string>& required,
                 const std::set<std::string>& optional) {
  if (!j.is_object()) Fail(ptr, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!required.count(key) && !optional.count(key)) {
      Fail(Child(ptr, key), "unknown field '" + key + "'");
    }
  }
  for (const std::string& key : required) {
    if (!j.contains(key)) Fail(ptr, "missing field '" + key + "'");
  }
}

std::string GetString(const json& j, const std::string& ptr) {
  if (!j.is_string()) Fail(ptr, "expected a string");
  return j.get<std::string>();
}

Weight GetWeight(const json& j, const std::string& ptr) {
  try {
    return WeightFromJson(j);
  } catch (const ParseError& e) {
    Fail(ptr, e.what());
  }
}

CandidateIndex GetCandidate(const json& j, const std::string& ptr,
                            const std::vector<std::string>& candidates) {
  const std::string name = GetString(j, ptr);
  auto it = std::find(candidates.begin(), candidates.end(), name);
  if (it == candidates.end()) Fail(ptr, "unknown candidate '" + name + "'");
  return static_cast<CandidateIndex>(it - candidates.begin());
}

PreferenceOrder GetOrder(const json& j, const std::string& ptr,
                         const std::vector<std::string>& candidates) {
  if (!j.is_array()) Fail(ptr, "expected an array of candidate names");
  PreferenceOrder out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(GetCandidate(j[i], Child(ptr, i), candidates));
  }
  return out;
}

template <class E>
E GetEnum(const json& j, const std::string& ptr,
          const std::vector<std::pair<std::string, E>>& table) {
  const std::string s = GetString(j, ptr);
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : table) {
    allowed += (allowed.empty() ? "" : ", ") + name;
  }
  Fail(ptr, "unknown value '" + s + "' (expected one of: " + allowed + ")");
}

VotingRule RuleAt(const json& j, const std::string& ptr) {
  if (!j.is_object() || !j.contains("type")) {
    Fail(ptr, "rule must be an object with a 'type' field");
  }
  const std::string type = GetString(j["type"], Child(ptr, "type"));
  auto get_k = [&]() {
    CheckObject(j, ptr, {"type", "k"}, {});
    const json& k = j["k"];
    if (!k.is_number_integer() || k.get<long long>() < 1 ||
        k.get<long long>() > 1'000'000) {
      Fail(Child(ptr, "k"), "k must be a positive integer");
    }
    return k.get<int>();
  };
  if (type == "plurality") {
    CheckObject(j, ptr, {"type"}, {});
    return Plurality{};
  }
  if (type == "kapproval") return KApproval{get_k()};
  if (type == "kveto") return KVeto{get_k()};
  if (type == "scoring") {
    CheckObject(j, ptr, {"type", "alpha"}, {});
    const json& a = j["alpha"];
    if (!a.is_array()) Fail(Child(ptr, "alpha"), "expected an array");
    GeneralScoring r;
    for (size_t i = 0; i < a.size(); ++i) {
      r.alpha.push_back(GetWeight(a[i], Child(Child(ptr, "alpha"), i)));
    }
    return r;
  }
  if (type == "tiered") {
    CheckObject(j, ptr, {"type"}, {});
    return TieredRule{};
  }
  Fail(Child(ptr, "type"), "unknown rule type '" + type + "'");
}

Instance InstanceAt(const json& j) {
  const std::string root;
  CheckObject(j, root,
              {"candidates", "cast", "pending", "sigma", "d", "variant",
               "rule"},
              {});
  Instance inst;
  ElectionSnapshot& s = inst.oms.snapshot;

  const json& cands = j["candidates"];
  if (!cands.is_array()) Fail("/candidates", "expected an array of strings");
  for (size_t i = 0; i < cands.size(); ++i) {
    s.candidates.push_back(GetString(cands[i], Child("/candidates", i)));
  }

  const json& cast = j["cast"];
  if (!cast.is_array()) Fail("/cast", "expected an array");
  for (size_t i = 0; i < cast.size(); ++i) {
    const std::string ptr = Child("/cast", i);
    CheckObject(cast[i], ptr, {"name", "weight", "vote"}, {});
    CastVote v;
    v.voter_name = GetString(cast[i]["name"], Child(ptr, "name"));
    v.weight = GetWeight(cast[i]["weight"], Child(ptr, "weight"));
    v.vote = GetOrder(cast[i]["vote"], Child(ptr, "vote"), s.candidates);
    s.cast.push_back(std::move(v));
  }

  const json& pending = j["pending"];
  if (!pending.is_array()) Fail("/pending", "expected an array");
  for (size_t i = 0; i < pending.size(); ++i) {
    const std::string ptr = Child("/pending", i);
    CheckObject(pending[i], ptr, {"name", "weight", "manipulator"}, {});
    PendingVoter v;
    v.voter_name = GetString(pending[i]["name"], Child(ptr, "name"));
    v.weight = GetWeight(pending[i]["weight"], Child(ptr, "weight"));
    if (!pending[i]["manipulator"].is_boolean()) {
      Fail(Child(ptr, "manipulator"), "expected a boolean");
    }
    v.is_manipulator = pending[i]["manipulator"].get<bool>();
    s.pending.push_back(std::move(v));
  }

  inst.oms.sigma = GetOrder(j["sigma"], "/sigma", s.candidates);
  inst.oms.d = GetCandidate(j["d"], "/d", s.candidates);

  const json& var = j["variant"];
  CheckObject(var, "/variant", {"direction", "target", "winner_model", "mode"},
              {"k", "weighted"});
  ProblemVariant& v = inst.variant;
  v.direction = GetEnum<Direction>(
      var["direction"], "/variant/direction",
      {{"constructive", Direction::kConstructive},
       {"destructive", Direction::kDestructive}});
  v.target = GetEnum<Target>(
      var["target"], "/variant/target",
      {{"segment", Target::kSegment}, {"pinpoint", Target::kPinpoint}});
  v.winner_model = GetEnum<WinnerModel>(
      var["winner_model"], "/variant/winner_model",
      {{"nonunique", WinnerModel::kNonunique},
       {"unique", WinnerModel::kUnique}});
  v.mode = GetEnum<QuantifierMode>(
      var["mode"], "/variant/mode",
      {{"online", QuantifierMode::kOnline},
       {"freeform", QuantifierMode::kFreeform},
       {"schedule_robust", QuantifierMode::kScheduleRobust}});
  if (var.contains("k")) {
    const json& k = var["k"];
    if (!k.is_number_integer() || k.get<long long>() < 1 ||
        k.get<long long>() > 1'000'000) {
      Fail("/variant/k", "k must be a positive integer");
    }
    v.manipulator_bound = k.get<int>();
  }
  if (var.contains("weighted")) {
    if (!var["weighted"].is_boolean()) {
      Fail("/variant/weighted", "expected a boolean");
    }
    v.weighted = var["weighted"].get<bool>();
  } else {
    v.weighted =
        std::any_of(s.cast.begin(), s.cast.end(),
                    [](const CastVote& c) { return c.weight != 1; }) ||
        std::any_of(s.pending.begin(), s.pending.end(),
                    [](const PendingVoter& p) { return p.weight != 1; });
  }

  inst.rule = RuleAt(j["rule"], "/rule");
  return inst;
}

// Maps JSON pointers to the 1-based line where the value starts. Only used to
// decorate error messages, on text nlohmann already accepted.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    Value("");
  }
  int LineOf(std::string pointer) const {
    // Fall back to the nearest enclosing value.
    while (true) {
      auto it = lines_.find(pointer);
      if (it != lines_.end()) return it->second;
      const size_t slash = pointer.rfind('/');
      if (slash == std::string::npos) return 1;
      pointer.resize(slash);
    }
  }

 private:
  void Ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string String() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        ++pos_;
        const char e = text_[pos_];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += text_[pos_];
      }
      ++pos_;
    }
    ++pos_;  // closing quote
    return out;
  }

  void Value(const std::string& ptr) {
    Ws();
    if (pos_ >= text_.size()) return;
    lines_.emplace(ptr, line_);
    const char ch = text_[pos_];
    if (ch == '{') {
      ++pos_;
      Ws();
      if (pos_ < text_.size() && text_[pos_] == '}') {
        ++pos_;
        return;
      }
      while (pos_ < text_.size()) {
        Ws();
        const std::string key = String();
        Ws();
        ++pos_;  // ':'
        const std::string child = Child(ptr, key);
        Value(child);
        Ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        ++pos_;  // '}'
        return;
      }
    } else if (ch == '[') {
      ++pos_;
      Ws();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return;
      }
      for (size_t i = 0; pos_ < text_.size(); ++i) {
        Value(Child(ptr, i));
        Ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        ++pos_;  // ']'
        return;
      }
    } else if (ch == '"') {
      String();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
             text_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

int LineAtOffset(std::string_view text, size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

}  // namespace

Weight WeightFromJson(const json& j) {
  if (j.is_number_unsigned()) return Weight(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    if (v < 0) throw ParseError("weight must be nonnegative");
    return Weight(v);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.size() > 4096 ||
        !std::all_of(s.begin(), s.end(),
                     [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw ParseError("weight string must be a nonnegative decimal integer");
    }
    return Weight(s);
  }
  throw ParseError("weight must be a nonnegative integer or decimal string");
}

json WeightToJson(const Weight& w) {
  if (w >= 0 && w <= std::numeric_limits<std::uint64_t>::max()) {
    return json(static_cast<std::uint64_t>(w));
  }
  return json(w.str());
}

json OrderToJson(const PreferenceOrder& order,
                 const std::vector<std::string>& candidates) {
  json out = json::array();
  for (CandidateIndex c : order) out.push_back(candidates.at(c));
  return out;
}

json RuleToJson(const VotingRule& rule) {
  if (std::holds_alternative<Plurality>(rule)) return {{"type", "plurality"}};
  if (auto* r = std::get_if<KApproval>(&rule)) {
    return {{"type", "kapproval"}, {"k", r->k}};
  }
  if (auto* r = std::get_if<KVeto>(&rule)) {
    return {{"type", "kveto"}, {"k", r->k}};
  }
  if (auto* r = std::get_if<GeneralScoring>(&rule)) {
    json alpha = json::array();
    for (const Weight& a : r->alpha) alpha.push_back(WeightToJson(a));
    return {{"type", "scoring"}, {"alpha", alpha}};
  }
  return {{"type", "tiered"}};
}

VotingRule RuleFromJson(const json& j) {
  try {
    return RuleAt(j, "/rule");
  } catch (const SchemaError& e) {
    throw ParseError(e.pointer + ": " + e.message);
  }
}

json InstanceToJson(const Instance& inst) {
  const ElectionSnapshot& s = inst.oms.snapshot;
  json cast = json::array();
  for (const CastVote& v : s.cast) {
    cast.push_back({{"name", v.voter_name},
                    {"weight", WeightToJson(v.weight)},
                    {"vote", OrderToJson(v.vote, s.candidates)}});
  }
  json pending = json::array();
  for (const PendingVoter& v : s.pending) {
    pending.push_back({{"name", v.voter_name},
                       {"weight", WeightToJson(v.weight)},
                       {"manipulator", v.is_manipulator}});
  }
  json variant = {{"direction", ToString(inst.variant.direction)},
                  {"target", ToString(inst.variant.target)},
                  {"winner_model", ToString(inst.variant.winner_model)},
                  {"mode", ToString(inst.variant.mode)},
                  {"weighted", inst.variant.weighted}};
  if (inst.variant.manipulator_bound) {
    variant["k"] = *inst.variant.manipulator_bound;
  }
  json out;
  out["candidates"] = s.candidates;
  out["cast"] = cast;
  out["pending"] = pending;
  out["sigma"] = OrderToJson(inst.oms.sigma, s.candidates);
  out["d"] = s.candidates.at(inst.oms.d);
  out["variant"] = variant;
  out["rule"] = RuleToJson(inst.rule);
  return out;
}

std::string SerializeInstance(const Instance& inst) {
  return InstanceToJson(inst).dump(2) + "\n";
}

Instance InstanceFromJson(const json& j) {
  try {
    return InstanceAt(j);
  } catch (const SchemaError& e) {
    throw ParseError((e.pointer.empty() ? "/" : e.pointer) + ": " + e.message);
  }
}

Instance ParseInstance(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(LineAtOffset(text, e.byte)) +
                     ": " + e.what());
  }
  try {
    return InstanceAt(j);
  } catch (const SchemaError& e) {
    const LineIndex index(text);
    throw ParseError("line " + std::to_string(index.LineOf(e.pointer)) + ": " +
                     (e.pointer.empty() ? "/" : e.pointer) + ": " + e.message);
  }
}

std::vector<std::string> ValidateInstance(const Instance& inst) {
  std::vector<std::string> out = Validate(inst.oms, inst.variant);
  for (std::string& s : ValidateRule(inst.rule, inst.oms.snapshot.num_candidates())) {
    out.push_back(std::move(s));
  }
  return out;
}

std::string InstanceDigest(const Instance& inst) {
  const std::string bytes = InstanceToJson(inst).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace onlinemanip

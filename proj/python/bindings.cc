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

// Thin JSON-string bindings; python/onlinemanip/__init__.py turns them into
// dicts. Instances use the same JSON format as the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "onlinemanip/errors.h"
#include "onlinemanip/fast.h"
#include "onlinemanip/generate.h"
#include "onlinemanip/instance.h"
#include "onlinemanip/reductions.h"
#include "onlinemanip/report.h"
#include "onlinemanip/rules.h"
#include "onlinemanip/solver.h"

namespace py = pybind11;
using nlohmann::json;

namespace onlinemanip {
namespace {

std::vector<Weight> ParseWeights(const std::vector<std::string>& text) {
  std::vector<Weight> out;
  for (const std::string& t : text) out.push_back(WeightFromJson(json(t)));
  return out;
}

std::string SolveJson(const std::string& text, bool canonicalize, bool memoize,
                      bool trace, std::uint64_t node_budget) {
  const Instance inst = ParseInstance(text);
  SolverOptions opts;
  opts.canonicalize = canonicalize;
  opts.memoize = memoize;
  opts.want_trace = trace;
  opts.node_budget = node_budget;
  const Decision d = Solve(inst, opts);
  json out = DecisionToJson(d, inst.oms.snapshot.candidates);
  out["nodes"] = d.nodes;
  if (trace && d.trace) {
    out["replay_ok"] = Replay(*d.trace, inst.oms, inst.rule, inst.variant);
  }
  return out.dump();
}

std::string FastSolveJson(const std::string& text) {
  const Instance inst = ParseInstance(text);
  const FastResult r = FastSolve(inst);
  json out = {{"answer", r.answer}, {"algorithm", r.algorithm}};
  if (r.thresholds) {
    out["thresholds"] =
        ThresholdReportToJson(*r.thresholds, inst.oms.snapshot.candidates);
  }
  return out.dump();
}

std::string WinnersJson(const std::string& text) {
  const Instance inst = ParseInstance(text);
  const auto& s = inst.oms.snapshot;
  json names = json::array();
  for (CandidateIndex c : Winners(inst.rule, s.candidates, s.cast)) {
    names.push_back(s.candidates[c]);
  }
  return names.dump();
}

std::string FullProfileJson(const std::string& text) {
  const Instance inst = ParseInstance(text);
  const auto& s = inst.oms.snapshot;
  const std::vector<bool> bits =
      FullProfile(s, inst.oms.sigma, inst.rule, inst.variant);
  json out = json::object();
  for (size_t c = 0; c < bits.size(); ++c) out[s.candidates[c]] = bits[c];
  return out.dump();
}

std::string ReducePartitionJson(const std::string& kind,
                                const std::vector<std::string>& weights, int m) {
  PartitionInstance p{ParseWeights(weights)};
  Reduction r;
  if (kind == "partition-dwcm") {
    r = ReducePartitionDwcmUw(p, m);
  } else if (kind == "partition-cowcm") {
    r = ReducePartitionCoWcmUw(p, m);
  } else {
    throw InvalidInstanceError("unknown reduction '" + kind + "'");
  }
  return json{{"instance", InstanceToJson(r.instance)},
              {"provenance", r.provenance}}
      .dump();
}

std::string ReduceQbfJson(const std::string& qbf) {
  const Reduction r = ReduceQbfToOnlineUcm(QbfFromJson(json::parse(qbf)));
  return json{{"instance", InstanceToJson(r.instance)},
              {"provenance", r.provenance}}
      .dump();
}

std::string RandomInstanceJson(std::uint64_t seed, int m, int cast, int pending,
                               std::int64_t min_weight, std::int64_t max_weight,
                               const std::string& rule) {
  GenOptions g;
  g.m = m;
  g.cast = cast;
  g.pending = pending;
  g.min_weight = min_weight;
  g.max_weight = max_weight;
  g.rule = RuleFromJson(json::parse(rule));
  Rng rng(seed);
  return SerializeInstance(RandomInstance(g, rng));
}

}  // namespace
}  // namespace onlinemanip

PYBIND11_MODULE(_onlinemanip, m) {
  using namespace onlinemanip;
  m.doc() = "Online manipulation solver (JSON-string interface).";

  static py::exception<ResourceLimitError> resource_error(
      m, "ResourceLimitError", PyExc_RuntimeError);
  // Translators run newest first, so the subclass goes after its base.
  py::register_exception<InvalidInstanceError>(m, "InvalidInstanceError",
                                               PyExc_ValueError);
  py::register_exception<NoFastAlgorithmError>(m, "NoFastAlgorithmError",
                                               PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError",
                                            PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResourceLimitError& e) {
      resource_error(e.what());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("solve", &SolveJson, py::arg("instance"),
        py::arg("canonicalize") = false, py::arg("memoize") = true,
        py::arg("trace") = false, py::arg("node_budget") = 10'000'000);
  m.def("fast_solve", &FastSolveJson, py::arg("instance"));
  m.def("winners", &WinnersJson, py::arg("instance"));
  m.def("full_profile", &FullProfileJson, py::arg("instance"));
  m.def("validate", [](const std::string& text) {
    return ValidateInstance(ParseInstance(text));
  }, py::arg("instance"));
  m.def("digest", [](const std::string& text) {
    return InstanceDigest(ParseInstance(text));
  }, py::arg("instance"));
  m.def("classify", [](const std::vector<std::string>& alpha) {
    return std::string(ToString(ClassifyScoringRule(ParseWeights(alpha))));
  }, py::arg("alpha"));
  m.def("partition_bruteforce", [](const std::vector<std::string>& w) {
    return PartitionBruteforce(PartitionInstance{ParseWeights(w)});
  }, py::arg("weights"));
  m.def("eval_qbf", [](const std::string& qbf) {
    return EvalQbf(QbfFromJson(nlohmann::json::parse(qbf)));
  }, py::arg("qbf"));
  m.def("reduce_partition", &ReducePartitionJson, py::arg("kind"),
        py::arg("weights"), py::arg("m"));
  m.def("reduce_qbf", &ReduceQbfJson, py::arg("qbf"));
  m.def("random_instance", &RandomInstanceJson, py::arg("seed"),
        py::arg("m") = 3, py::arg("cast") = 1, py::arg("pending") = 2,
        py::arg("min_weight") = 1, py::arg("max_weight") = 1,
        py::arg("rule") = R"({"type":"plurality"})");
}

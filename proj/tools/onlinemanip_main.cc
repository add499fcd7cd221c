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

// onlinemanip: solve, cross-check and generate online manipulation
// instances. Exit codes: 0 ok, 1 answer-level disagreement, 2 usage or
// invalid input, 3 resource limit.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "onlinemanip/crosscheck.h"
#include "onlinemanip/errors.h"
#include "onlinemanip/fast.h"
#include "onlinemanip/generate.h"
#include "onlinemanip/instance.h"
#include "onlinemanip/reductions.h"
#include "onlinemanip/report.h"
#include "onlinemanip/rules.h"
#include "onlinemanip/solver.h"

namespace onlinemanip {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

// Thrown for bad flag combinations detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t budget_nodes = 10'000'000;
  std::string format = "json";
  std::string rule_override;
  std::string variant_override;
  bool wall_time = true;
};

std::string ReadText(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<Weight> ParseWeights(const std::string& text) {
  std::vector<Weight> out;
  for (const std::string& tok : Split(text, ',')) {
    try {
      out.push_back(WeightFromJson(json(tok)));
    } catch (const std::exception&) {
      throw UsageError("not a nonnegative integer: '" + tok + "'");
    }
  }
  return out;
}

// plurality | kapproval:K | kveto:K | scoring:A1,A2,... | tiered
VotingRule ParseRuleFlag(const std::string& text) {
  const size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  auto k = [&]() {
    try {
      return std::stoi(arg);
    } catch (const std::exception&) {
      throw UsageError("rule '" + name + "' needs an integer, as " + name +
                       ":K");
    }
  };
  if (name == "plurality") return Plurality{};
  if (name == "kapproval") return KApproval{k()};
  if (name == "kveto") return KVeto{k()};
  if (name == "scoring") return GeneralScoring{ParseWeights(arg)};
  if (name == "tiered") return TieredRule{};
  throw UsageError("unknown rule '" + text +
                   "' (plurality, kapproval:K, kveto:K, scoring:A,B,.., "
                   "tiered)");
}

// Comma-separated tokens: constructive destructive segment pinpoint
// nonunique unique online freeform schedule_robust weighted unweighted k=N
void ApplyVariantFlag(const std::string& text, ProblemVariant& v) {
  for (const std::string& tok : Split(text, ',')) {
    if (tok == "constructive") v.direction = Direction::kConstructive;
    else if (tok == "destructive") v.direction = Direction::kDestructive;
    else if (tok == "segment") v.target = Target::kSegment;
    else if (tok == "pinpoint") v.target = Target::kPinpoint;
    else if (tok == "nonunique") v.winner_model = WinnerModel::kNonunique;
    else if (tok == "unique") v.winner_model = WinnerModel::kUnique;
    else if (tok == "online") v.mode = QuantifierMode::kOnline;
    else if (tok == "freeform") v.mode = QuantifierMode::kFreeform;
    else if (tok == "schedule_robust") v.mode = QuantifierMode::kScheduleRobust;
    else if (tok == "weighted") v.weighted = true;
    else if (tok == "unweighted") v.weighted = false;
    else if (tok == "k=none") v.manipulator_bound.reset();
    else if (tok.rfind("k=", 0) == 0) {
      try {
        v.manipulator_bound = std::stoi(tok.substr(2));
      } catch (const std::exception&) {
        throw UsageError("bad bound '" + tok + "'");
      }
    } else {
      throw UsageError("unknown variant token '" + tok + "'");
    }
  }
}

Instance LoadInstance(const std::string& path, const Common& c) {
  Instance inst = ParseInstance(ReadText(path));
  if (!c.rule_override.empty()) inst.rule = ParseRuleFlag(c.rule_override);
  if (!c.variant_override.empty()) {
    ApplyVariantFlag(c.variant_override, inst.variant);
  }
  const std::vector<std::string> problems = ValidateInstance(inst);
  if (!problems.empty()) {
    std::string msg = "invalid instance:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw InvalidInstanceError(msg);
  }
  return inst;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void Emit(const RunReport& r, const Common& c) {
  if (c.format == "table") {
    std::cout << FormatReportTable(r, c.wall_time);
  } else {
    std::cout << FormatReportJson(r, c.wall_time) << "\n";
  }
}

json CandidateNames(const CandidateSet& set, const Instance& inst) {
  json out = json::array();
  for (CandidateIndex c : set) out.push_back(inst.oms.snapshot.candidates[c]);
  return out;
}

int CmdSolve(const std::string& path, const std::string& engine, bool trace,
             bool canonicalize, bool no_memo, const Common& c) {
  const Instance inst = LoadInstance(path, c);
  Stopwatch clock;
  RunReport r;
  r.command = "solve";
  r.digest = InstanceDigest(inst);
  r.details["engine"] = engine;

  std::optional<bool> oracle_answer, fast_answer;
  if (engine == "oracle" || engine == "both") {
    SolverOptions opts;
    opts.node_budget = c.budget_nodes;
    opts.want_trace = trace;
    opts.canonicalize = canonicalize;
    opts.memoize = !no_memo;
    const Decision d = Solve(inst, opts);
    oracle_answer = d.answer;
    r.nodes = d.nodes;
    r.details["witness"] = DecisionToJson(d, inst.oms.snapshot.candidates);
    if (d.trace) {
      r.details["replay_ok"] = Replay(*d.trace, inst.oms, inst.rule,
                                      inst.variant, c.budget_nodes);
    }
  }
  if (engine == "fast" || engine == "both") {
    const FastResult f = FastSolve(inst);
    fast_answer = f.answer;
    r.details["algorithm"] = f.algorithm;
    if (f.thresholds) {
      r.details["thresholds"] =
          ThresholdReportToJson(*f.thresholds, inst.oms.snapshot.candidates);
    }
  }
  r.answer = oracle_answer ? oracle_answer : fast_answer;
  int code = kExitOk;
  if (oracle_answer && fast_answer) {
    const bool agree = *oracle_answer == *fast_answer;
    r.details["oracle_answer"] = *oracle_answer;
    r.details["fast_answer"] = *fast_answer;
    r.details["agreement"] = agree;
    if (!agree) code = kExitDisagreement;
  }
  r.wall_ms = clock.ms();
  Emit(r, c);
  if (code == kExitDisagreement) {
    std::cerr << "error: engines disagree (oracle " << *oracle_answer
              << ", fast " << *fast_answer << ")\n";
  }
  return code;
}

int CmdWinners(const std::string& path, const Common& c) {
  // Winner evaluation ignores the problem variant, so skip OMS validation.
  Instance inst = ParseInstance(ReadText(path));
  if (!c.rule_override.empty()) inst.rule = ParseRuleFlag(c.rule_override);
  const auto& s = inst.oms.snapshot;
  const std::vector<std::string> problems =
      ValidateRule(inst.rule, s.num_candidates());
  if (!problems.empty()) throw InvalidInstanceError(problems.front());
  Stopwatch clock;
  RunReport r;
  r.command = "winners";
  r.digest = InstanceDigest(inst);
  r.details["rule"] = RuleName(inst.rule);
  r.details["winners"] = CandidateNames(Winners(inst.rule, s.candidates, s.cast), inst);
  if (IsScoringRule(inst.rule)) {
    const std::vector<Weight> sc = Scores(inst.rule, s.num_candidates(), s.cast);
    json scores = json::object();
    for (int i = 0; i < s.num_candidates(); ++i) {
      scores[s.candidates[i]] = WeightToJson(sc[i]);
    }
    r.details["scores"] = scores;
  }
  r.wall_ms = clock.ms();
  Emit(r, c);
  return kExitOk;
}

int CmdFullProfile(const std::string& path, const Common& c) {
  const Instance inst = LoadInstance(path, c);
  Stopwatch clock;
  SolverOptions opts;
  opts.node_budget = c.budget_nodes;
  const std::vector<bool> bits = FullProfile(inst.oms.snapshot, inst.oms.sigma,
                                             inst.rule, inst.variant, opts);
  RunReport r;
  r.command = "fullprofile";
  r.digest = InstanceDigest(inst);
  json by_sigma = json::array();
  for (CandidateIndex x : inst.oms.sigma) {
    by_sigma.push_back({{"candidate", inst.oms.snapshot.candidates[x]},
                        {"answer", static_cast<bool>(bits[x])}});
  }
  r.details["profile"] = by_sigma;
  r.wall_ms = clock.ms();
  Emit(r, c);
  return kExitOk;
}

int CmdClassify(const std::string& alpha_text, int m, const Common& c) {
  std::vector<Weight> alpha;
  if (!alpha_text.empty()) {
    alpha = ParseWeights(alpha_text);
  } else if (!c.rule_override.empty()) {
    if (m < 1) throw UsageError("--rule needs --m");
    alpha = ScoringVectorFor(ParseRuleFlag(c.rule_override), m);
  } else {
    throw UsageError("classify needs --alpha or --rule with --m");
  }
  RunReport r;
  r.command = "classify";
  json a = json::array();
  for (const Weight& w : alpha) a.push_back(WeightToJson(w));
  r.details["alpha"] = a;
  r.details["class"] = std::string(ToString(ClassifyScoringRule(alpha)));
  Emit(r, c);
  return kExitOk;
}

int CmdReduce(const std::string& kind, const std::string& weights, int m,
              const std::string& qbf_path, const std::string& out_path,
              const std::string& provenance_path) {
  Reduction red;
  if (kind == "partition-dwcm" || kind == "partition-cowcm") {
    if (weights.empty()) throw UsageError(kind + " needs --weights");
    PartitionInstance p{ParseWeights(weights)};
    red = kind == "partition-dwcm" ? ReducePartitionDwcmUw(p, m)
                                   : ReducePartitionCoWcmUw(p, m);
  } else if (kind == "qbf") {
    if (qbf_path.empty()) throw UsageError("qbf needs --qbf FILE");
    json j;
    try {
      j = json::parse(ReadText(qbf_path));
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("qbf file: ") + e.what());
    }
    red = ReduceQbfToOnlineUcm(QbfFromJson(j));
  } else {
    throw UsageError("unknown reduction '" + kind + "'");
  }
  red.provenance["digest"] = InstanceDigest(red.instance);
  const std::string text = SerializeInstance(red.instance);
  std::string sidecar = provenance_path;
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    WriteText(out_path, text);
    if (sidecar.empty()) sidecar = out_path + ".provenance.json";
  }
  if (!sidecar.empty()) WriteText(sidecar, red.provenance.dump(2) + "\n");
  return kExitOk;
}

int CmdCrosscheck(const std::string& grid, std::uint64_t seed,
                  std::uint64_t count, const Common& c) {
  Stopwatch clock;
  CrosscheckOptions opts;
  opts.seed = seed;
  opts.count = count;
  opts.node_budget = c.budget_nodes;
  const CrosscheckSummary s = RunCrosscheck(grid, opts);
  RunReport r;
  r.command = "crosscheck";
  r.answer = s.ok();
  r.details = SummaryToJson(s);
  r.nodes = s.nodes;
  r.seed = seed;
  r.wall_ms = clock.ms();
  Emit(r, c);
  if (!s.complete) return kExitResource;
  return s.ok() ? kExitOk : kExitDisagreement;
}

int CmdGen(std::uint64_t seed, std::uint64_t count, const GenOptions& base,
           const Common& c) {
  GenOptions g = base;
  if (!c.rule_override.empty()) g.rule = ParseRuleFlag(c.rule_override);
  if (!c.variant_override.empty()) ApplyVariantFlag(c.variant_override, g.variant);
  if (!g.variant.weighted) g.min_weight = g.max_weight = 1;
  const std::vector<std::string> problems = CheckGenOptions(g);
  if (!problems.empty()) {
    std::string msg = "inconsistent generator flags:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw UsageError(msg);
  }
  Rng rng(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Instance inst = RandomInstance(g, rng);
    if (count == 1) {
      std::cout << SerializeInstance(inst);
    } else {
      std::cout << InstanceToJson(inst).dump() << "\n";
    }
  }
  return kExitOk;
}

// Reads one preference order from the terminal: candidate names separated
// by spaces or '>'.
std::optional<PreferenceOrder> ReadOrder(const Instance& inst,
                                         std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  for (char& ch : line) {
    if (ch == '>' || ch == ',') ch = ' ';
  }
  std::istringstream words(line);
  PreferenceOrder order;
  std::string w;
  while (words >> w) {
    const auto idx = inst.oms.snapshot.FindCandidate(w);
    if (!idx) return PreferenceOrder{};
    order.push_back(*idx);
  }
  return order;
}

std::string OrderText(const PreferenceOrder& o, const Instance& inst) {
  std::string s;
  for (CandidateIndex c : o) {
    s += (s.empty() ? "" : ">") + inst.oms.snapshot.candidates[c];
  }
  return s;
}

int CmdPlay(const std::string& path, const Common& c) {
  const Instance inst = LoadInstance(path, c);
  if (inst.variant.mode == QuantifierMode::kScheduleRobust) {
    throw UsageError("play supports online and freeform instances");
  }
  SolverOptions opts;
  opts.node_budget = c.budget_nodes;
  opts.want_trace = true;
  // Refuses out-of-budget instances before any move is made.
  const Decision d = Solve(inst, opts);
  const auto& s = inst.oms.snapshot;
  const int m = s.num_candidates();
  const bool guaranteed = d.answer && d.trace.has_value();
  std::cout << (guaranteed ? "The coalition can guarantee its goal.\n"
                           : "The coalition cannot guarantee its goal; it "
                             "will play the first order in each position.\n");

  std::vector<PreferenceOrder> history;
  std::vector<CastVote> votes = s.cast;
  for (const PendingVoter& v : s.pending) {
    PreferenceOrder choice;
    if (v.is_manipulator) {
      auto it = guaranteed ? d.trace->find(history) : d.trace->end();
      if (guaranteed && it != d.trace->end()) {
        choice = it->second;
      } else {
        choice.resize(m);
        std::iota(choice.begin(), choice.end(), 0);
      }
      std::cout << v.voter_name << " (coalition) votes " << OrderText(choice, inst)
                << "\n";
    } else {
      while (true) {
        std::cout << v.voter_name << " (you), enter a full order of "
                  << m << " candidates: " << std::flush;
        const auto read = ReadOrder(inst, std::cin);
        if (!read) {
          std::cout << "\ninput closed; aborting\n";
          return kExitUsage;
        }
        if (IsPermutation(*read, m)) {
          choice = *read;
          break;
        }
        std::cout << "not a permutation of the candidates, try again\n";
      }
    }
    history.push_back(choice);
    votes.push_back({v.voter_name, v.weight, choice});
  }
  const CandidateSet winners = Winners(inst.rule, s.candidates, votes);
  const CandidateSet goal = GoalSet(inst.oms.sigma, inst.oms.d,
                                    inst.variant.direction, inst.variant.target);
  const bool met = GoalMet(winners, goal, inst.variant.direction,
                           inst.variant.winner_model);
  std::cout << "winners: " << CandidateNames(winners, inst).dump() << "\n"
            << "goal " << (met ? "achieved" : "not achieved") << "\n"
            << "solver guarantee: " << (guaranteed ? "yes" : "no") << "\n";
  return kExitOk;
}

}  // namespace
}  // namespace onlinemanip

int main(int argc, char** argv) {
  using namespace onlinemanip;
  CLI::App app{"Online manipulation of sequential elections"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget-nodes", common.budget_nodes,
                    "Search node budget before a resource error");
    sub->add_option("--format", common.format, "Report format")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--rule", common.rule_override,
                    "Rule override: plurality, kapproval:K, kveto:K, "
                    "scoring:A,B,..., tiered");
    sub->add_option("--variant", common.variant_override,
                    "Comma-separated variant overrides, e.g. "
                    "destructive,unique,k=2");
    sub->add_flag("!--no-wall-time", common.wall_time,
                  "Omit wall_ms, for reproducible output");
  };

  std::string file, engine = "oracle";
  bool trace = false, canonicalize = false, no_memo = false;
  auto* solve = app.add_subcommand("solve", "Decide an instance");
  solve->add_option("file", file, "Instance JSON ('-' for stdin)")->required();
  solve->add_option("--engine", engine, "oracle, fast or both")
      ->check(CLI::IsMember({"oracle", "fast", "both"}));
  solve->add_flag("--trace", trace, "Attach and replay the strategy trace");
  solve->add_flag("--canonicalize", canonicalize,
                  "One order per equivalence class at each node");
  solve->add_flag("--no-memo", no_memo, "Disable the position memo");
  add_common(solve);

  auto* winners = app.add_subcommand("winners", "Winners of the cast votes");
  winners->add_option("file", file)->required();
  add_common(winners);

  auto* fullprofile =
      app.add_subcommand("fullprofile", "Answer for every distinguished candidate");
  fullprofile->add_option("file", file)->required();
  add_common(fullprofile);

  std::string alpha;
  int classify_m = 0;
  auto* classify = app.add_subcommand("classify", "Complexity class of a scoring rule");
  classify->add_option("--alpha", alpha, "Scoring vector, e.g. 2,1,0");
  classify->add_option("--m", classify_m, "Candidates, with --rule");
  add_common(classify);

  std::string kind, weights, qbf_path, out_path, provenance_path;
  int reduce_m = 2;
  auto* reduce = app.add_subcommand("reduce", "Emit a reduced instance");
  reduce->add_option("kind", kind, "partition-dwcm, partition-cowcm or qbf")
      ->required()
      ->check(CLI::IsMember({"partition-dwcm", "partition-cowcm", "qbf"}));
  reduce->add_option("--weights", weights, "Partition items, e.g. 3,1,1,1");
  reduce->add_option("--m", reduce_m, "Number of candidates (partition)");
  reduce->add_option("--qbf", qbf_path, "QBF JSON file");
  reduce->add_option("-o,--out", out_path, "Instance output file");
  reduce->add_option("--provenance", provenance_path,
                     "Provenance sidecar (default: OUT.provenance.json)");

  std::string grid;
  std::uint64_t seed = 1, count = 1000;
  auto* crosscheck = app.add_subcommand("crosscheck", "Fast algorithms vs solver");
  crosscheck->add_option("--grid", grid)->required()->check(
      CLI::IsMember(CrosscheckGrids()));
  crosscheck->add_option("--seed", seed);
  crosscheck->add_option("--count", count, "Sample size for random grids");
  add_common(crosscheck);

  GenOptions gen_opts;
  std::uint64_t gen_count = 1;
  auto* gen = app.add_subcommand("gen", "Random instances on stdout");
  gen->add_option("--seed", seed);
  gen->add_option("--count", gen_count);
  gen->add_option("--m", gen_opts.m);
  gen->add_option("--cast", gen_opts.cast);
  gen->add_option("--pending", gen_opts.pending);
  gen->add_option("--min-weight", gen_opts.min_weight);
  gen->add_option("--max-weight", gen_opts.max_weight);
  gen->add_option("--manipulator-probability", gen_opts.manipulator_probability);
  add_common(gen);

  auto* play = app.add_subcommand("play", "Play the nonmanipulators yourself");
  play->add_option("file", file)->required();
  add_common(play);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return CmdSolve(file, engine, trace, canonicalize, no_memo, common);
    if (*winners) return CmdWinners(file, common);
    if (*fullprofile) return CmdFullProfile(file, common);
    if (*classify) return CmdClassify(alpha, classify_m, common);
    if (*reduce) {
      return CmdReduce(kind, weights, reduce_m, qbf_path, out_path,
                       provenance_path);
    }
    if (*crosscheck) return CmdCrosscheck(grid, seed, count, common);
    if (*gen) return CmdGen(seed, gen_count, gen_opts, common);
    if (*play) return CmdPlay(file, common);
  } catch (const NoFastAlgorithmError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const VerificationError& e) {
    std::cerr << "error: verification failed: " << e.what() << "\n";
    return kExitDisagreement;
  } catch (const std::exception& e) {
    // Parse errors, invalid instances and bad flags.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

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

#include "onlinemanip/crosscheck.h"

#include <algorithm>
#include <numeric>

#include "onlinemanip/errors.h"
#include "onlinemanip/generate.h"
#include "onlinemanip/instance.h"
#include "onlinemanip/reductions.h"
#include "onlinemanip/solver.h"

namespace onlinemanip {
namespace {

using nlohmann::json;

class Tally {
 public:
  Tally(CrosscheckSummary& s, const CrosscheckOptions& o) : s_(s), o_(o) {}

  void Check(const char* what, bool agree, const json& context) {
    ++s_.checks;
    if (agree) {
      ++s_.agreements;
    } else if (s_.disagreements.size() < o_.max_reported) {
      json entry = context;
      entry["check"] = what;
      s_.disagreements.push_back(std::move(entry));
    }
  }

  bool Oracle(const Instance& inst, bool canonicalize = false) {
    SolverOptions opts;
    opts.node_budget = o_.node_budget;
    opts.canonicalize = canonicalize;
    const Decision d = Solve(inst, opts);
    s_.nodes += d.nodes;
    return d.answer;
  }

  void Count(const std::string& key) {
    s_.extra[key] = s_.extra.value(key, std::uint64_t{0}) + 1;
  }

 private:
  CrosscheckSummary& s_;
  const CrosscheckOptions& o_;
};

json Context(const Instance& inst, bool fast, bool oracle) {
  return {{"instance", InstanceToJson(inst)}, {"fast", fast},
          {"oracle", oracle}};
}

PreferenceOrder Identity(int m) {
  PreferenceOrder p(m);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

void PluralityGrid(CrosscheckSummary& s, const CrosscheckOptions& o) {
  Tally t(s, o);
  for (int m : {2, 3}) {
    SnapshotGrid grid;
    grid.m = m;
    grid.max_voters = 4;
    grid.cast_weights = grid.pending_weights = {0, 1, 2};
    ForEachSnapshot(grid, [&](const ElectionSnapshot& snap) {
      ++s.instances;
      Instance inst;
      inst.oms.snapshot = snap;
      inst.oms.sigma = Identity(m);
      inst.rule = Plurality{};
      for (int d = 0; d < m; ++d) {
        inst.oms.d = d;
        for (Direction dir : {Direction::kConstructive, Direction::kDestructive}) {
          inst.variant.direction = dir;
          const bool oracle = t.Oracle(inst);
          const bool fast = dir == Direction::kConstructive
                                ? PluralityWcm(inst.oms)
                                : PluralityDwcm(inst.oms);
          t.Count(std::string(ToString(dir)) + (oracle ? "_yes" : "_no"));
          t.Check(dir == Direction::kConstructive ? "plurality_wcm"
                                                  : "plurality_dwcm",
                  fast == oracle, Context(inst, fast, oracle));
        }
      }
      return true;
    });
  }
}

void ApprovalVetoGrid(CrosscheckSummary& s, const CrosscheckOptions& o) {
  Tally t(s, o);
  for (int m : {2, 3, 4}) {
    SnapshotGrid grid;
    grid.m = m;
    grid.max_voters = 4;
    std::vector<VotingRule> rules;
    for (int k : {1, 2}) {
      if (m < k) continue;
      rules.push_back(KApproval{k});
      rules.push_back(KVeto{k});
    }
    ForEachSnapshot(grid, [&](const ElectionSnapshot& snap) {
      ++s.instances;
      Instance inst;
      inst.oms.snapshot = snap;
      inst.oms.sigma = Identity(m);
      inst.variant.weighted = false;
      for (const VotingRule& rule : rules) {
        inst.rule = rule;
        for (int d = 0; d < m; ++d) {
          inst.oms.d = d;
          const bool oracle = t.Oracle(inst);
          const bool greedy = ApprovalVetoUcmGreedy(inst.oms, rule);
          t.Count(RuleName(rule) + (oracle ? "_yes" : "_no"));
          t.Check("approval_veto_ucm_greedy", greedy == oracle,
                  Context(inst, greedy, oracle));
          if (rule == VotingRule(KVeto{1})) {
            const bool threshold = Veto1Threshold(inst.oms, rule);
            t.Check("veto1_threshold", threshold == greedy,
                    Context(inst, threshold, greedy));
          }
        }
      }
      return true;
    });
  }
}

void CheckVetoInstance(Tally& t, const Instance& inst,
                       const CrosscheckOptions& o) {
  const VetoWcmResult r = VetoWcmPnp(inst.oms, inst.rule, o.node_budget);
  const bool oracle = t.Oracle(inst);
  t.Count(oracle ? "yes" : "no");
  json ctx = Context(inst, r.answer, oracle);
  ctx["t1"] = WeightToJson(r.report.t1);
  ctx["t2"] = WeightToJson(r.report.t2);
  t.Check("veto_wcm_pnp", r.answer == oracle, ctx);
  t.Check("threshold_minimality",
          ThresholdsMinimal(inst.oms, r.report, o.node_budget), ctx);
}

void VetoRandomGrid(CrosscheckSummary& s, const CrosscheckOptions& o) {
  Tally t(s, o);
  Rng rng(o.seed);
  GenOptions g;
  g.m = 4;
  g.rule = KVeto{1};
  g.min_weight = 0;
  g.max_weight = 5;
  for (std::uint64_t i = 0; i < o.count; ++i) {
    g.cast = static_cast<int>(UniformInt(rng, 0, 3));
    g.pending = static_cast<int>(UniformInt(rng, 1, 5));
    const Instance inst = RandomInstance(g, rng);
    ++s.instances;
    CheckVetoInstance(t, inst, o);
  }
}

void VetoM3Grid(CrosscheckSummary& s, const CrosscheckOptions& o) {
  Tally t(s, o);
  SnapshotGrid grid;
  grid.m = 3;
  grid.max_voters = 4;
  grid.max_cast = 1;
  grid.max_pending = 3;
  grid.cast_weights = {1, 2};
  grid.pending_weights = {0, 1, 2, 3};
  ForEachSnapshot(grid, [&](const ElectionSnapshot& snap) {
    ++s.instances;
    Instance inst;
    inst.oms.snapshot = snap;
    inst.oms.sigma = Identity(3);
    inst.rule = KVeto{1};
    for (int d = 0; d < 3; ++d) {
      inst.oms.d = d;
      CheckVetoInstance(t, inst, o);
    }
    return true;
  });
}

json PartitionContext(const PartitionInstance& p, int m, bool solve,
                      bool brute) {
  json w = json::array();
  for (const Weight& x : p.w) w.push_back(WeightToJson(x));
  return {{"w", w}, {"m", m}, {"solve", solve}, {"partition", brute}};
}

void PartitionGridRun(CrosscheckSummary& s, const CrosscheckOptions& o) {
  Tally t(s, o);
  for (const PartitionInstance& p : PartitionGrid(8, 6)) {
    const bool brute = PartitionBruteforce(p);
    t.Count(brute ? "partition_yes" : "partition_no");
    for (int m : {2, 3}) {
      ++s.instances;
      const bool dwcm = t.Oracle(ReducePartitionDwcmUw(p, m).instance);
      t.Check("partition_dwcm_uw", dwcm == brute,
              PartitionContext(p, m, dwcm, brute));
      const bool cowcm = t.Oracle(ReducePartitionCoWcmUw(p, m).instance);
      t.Check("partition_co_wcm_uw", cowcm == !brute,
              PartitionContext(p, m, cowcm, brute));
    }
  }
}

void QbfGrid(CrosscheckSummary& s, const CrosscheckOptions& o) {
  Tally t(s, o);
  Rng rng(o.seed);
  for (std::uint64_t i = 0; i < o.count; ++i) {
    const int blocks = static_cast<int>(UniformInt(rng, 1, 3));
    const QbfInstance q = RandomQbf(rng, blocks, 2);
    ++s.instances;
    const bool truth = EvalQbf(q);
    const bool solved =
        t.Oracle(ReduceQbfToOnlineUcm(q).instance, /*canonicalize=*/true);
    t.Count(truth ? "qbf_true" : "qbf_false");
    t.Check("qbf_to_online_ucm", solved == truth,
            {{"qbf", QbfToJson(q)}, {"solve", solved}, {"eval", truth}});
  }
}

}  // namespace

std::vector<std::string> CrosscheckGrids() {
  return {"plurality", "approval-veto", "veto-random",
          "veto-m3",   "partition",     "qbf"};
}

CrosscheckSummary RunCrosscheck(const std::string& grid,
                                const CrosscheckOptions& options) {
  CrosscheckSummary s;
  s.grid = grid;
  try {
    if (grid == "plurality") {
      PluralityGrid(s, options);
    } else if (grid == "approval-veto") {
      ApprovalVetoGrid(s, options);
    } else if (grid == "veto-random") {
      VetoRandomGrid(s, options);
    } else if (grid == "veto-m3") {
      VetoM3Grid(s, options);
    } else if (grid == "partition") {
      PartitionGridRun(s, options);
    } else if (grid == "qbf") {
      QbfGrid(s, options);
    } else {
      throw InvalidInstanceError("unknown grid '" + grid + "'");
    }
  } catch (const ResourceLimitError& e) {
    s.complete = false;
    s.incomplete_reason = e.what();
  }
  return s;
}

json SummaryToJson(const CrosscheckSummary& s) {
  json j = {{"grid", s.grid},
            {"instances", s.instances},
            {"checks", s.checks},
            {"agreements", s.agreements},
            {"agreement_ratio",
             s.checks == 0 ? 1.0
                           : static_cast<double>(s.agreements) /
                                 static_cast<double>(s.checks)},
            {"complete", s.complete},
            {"counts", s.extra},
            {"disagreements", s.disagreements}};
  if (!s.complete) j["incomplete_reason"] = s.incomplete_reason;
  return j;
}

bool ThresholdsMinimal(const Oms& oms, const ThresholdReport& report,
                       std::uint64_t state_budget) {
  const ElectionSnapshot& s = oms.snapshot;
  const int m = s.num_candidates();
  std::vector<Weight> score(m, 0);
  for (const CastVote& v : s.cast) {
    for (int pos = 0; pos + 1 < m; ++pos) score[v.vote[pos]] += v.weight;
  }
  Weight pending_total = 0;
  std::vector<Weight> coalition, adversary;
  for (const PendingVoter& v : s.pending) {
    pending_total += v.weight;
    (v.is_manipulator ? coalition : adversary).push_back(v.weight);
  }
  const int rank = static_cast<int>(
      std::find(oms.sigma.begin(), oms.sigma.end(), oms.d) - oms.sigma.begin());
  std::vector<Weight> bad, good;
  for (int r = 0; r < m; ++r) {
    (r <= rank ? good : bad).push_back(score[oms.sigma[r]] + pending_total);
  }
  auto feasible = [&](const std::vector<Weight>& weights,
                      const std::vector<Weight>& maxes, const Weight& t) {
    std::vector<Weight> demands;
    for (const Weight& x : maxes) demands.push_back(ProperSubtract(x, t));
    return PartitionFeasible(weights, demands, state_budget);
  };
  auto minimal = [&](const std::vector<Weight>& weights,
                     const std::vector<Weight>& maxes, const Weight& t) {
    if (!feasible(weights, maxes, t)) return false;
    return t == 0 || !feasible(weights, maxes, t - 1);
  };
  const bool t1_ok = bad.empty() ? report.t1 == 0
                                 : minimal(coalition, bad, report.t1);
  return t1_ok && minimal(adversary, good, report.t2);
}

}  // namespace onlinemanip

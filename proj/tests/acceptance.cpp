// Acceptance suite: end-to-end checks on the bundled default scenario plus
// randomized oracle comparisons. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tcdrm/engine.hpp"
#include "tcdrm/metrics.hpp"
#include "tcdrm/scenario.hpp"

using namespace tcdrm;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Criterion> g_results;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  g_results.push_back({number, name, pass, detail});
  std::cout << (pass ? "PASS" : "FAIL") << " - criterion " << number << " (" << name
            << "): " << detail << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Randomized small instances shared by criteria 1 and 2.

struct RandomInstance {
  Scenario scenario;
  TopologyIndex topology;
  Catalog catalog;
  Query query;
  SlaThresholds thresholds;
  std::vector<std::string> rd;
};

RandomInstance make_instance(SplitMix64& rng) {
  int providers = 2 + static_cast<int>(rng.below(2));
  int regions = 2 + static_cast<int>(rng.below(2));
  Scenario s = testutil::make_scenario(providers, regions, 2, 2);
  for (auto& [k, v] : s.pricing.io_per_gb) v = testutil::random_price(rng, 0.004, 0.012, 0.001);
  for (auto& [k, v] : s.pricing.intra_dc_bw_per_gb)
    v = testutil::random_price(rng, 0.001, 0.004, 0.0005);
  s.pricing.inter_region_bw_per_gb = testutil::random_price(rng, 0.006, 0.009, 0.0005);
  s.pricing.inter_provider_bw_per_gb = testutil::random_price(rng, 0.009, 0.012, 0.0005);

  RandomInstance inst;
  inst.scenario = std::move(s);
  inst.topology = TopologyIndex::build(inst.scenario.providers);
  inst.catalog = Catalog::from_relations(inst.scenario.relations);

  std::vector<std::string> all;
  for (const auto& r : inst.scenario.relations) all.push_back(r.id);
  inst.query.id = "q";
  inst.query.cls = QueryClass::complex;
  inst.query.origin = inst.topology.regions()[rng.below(inst.topology.regions().size())];
  std::size_t nrel = 3 + rng.below(3);
  for (std::size_t i = 0; i < nrel; ++i) {
    std::string pick = all[rng.below(all.size())];
    if (std::find(inst.query.relation_ids.begin(), inst.query.relation_ids.end(), pick) ==
        inst.query.relation_ids.end())
      inst.query.relation_ids.push_back(pick);
  }
  for (const std::string& rid : inst.query.relation_ids) {
    if (rng.below(3) == 0) {
      RegionKey region = inst.topology.regions()[rng.below(inst.topology.regions().size())];
      if (!inst.catalog.region_has_copy(rid, region))
        inst.catalog.add_replica(rid, pick_replica_vm(region, inst.catalog, inst.topology), 1);
    }
  }
  inst.thresholds = inst.scenario.thresholds.complex;
  inst.thresholds.c_sla = testutil::random_price(rng, 0.020, 0.060, 0.005);
  inst.thresholds.t_sla_s = 0.15 + 0.1 * static_cast<double>(rng.below(4));
  for (const std::string& rid : inst.query.relation_ids)
    if (rng.below(2) == 0) inst.rd.push_back(rid);
  if (inst.rd.empty()) inst.rd.push_back(inst.query.relation_ids.front());
  return inst;
}

void criterion_1_placement_safety() {
  auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(20260809);
  const int invocations = 10000;
  long placements = 0;
  long violations = 0;
  for (int i = 0; i < invocations; ++i) {
    RandomInstance inst = make_instance(rng);
    ReplicationDecision d = place_replicas(inst.rd, inst.query, inst.catalog, inst.topology,
                                           inst.scenario, inst.thresholds, 10);
    for (const PlacementRecord& p : d.placements) {
      ++placements;
      if (!(p.est_cost < inst.thresholds.c_sla) || !(p.est_time_s < inst.thresholds.t_sla_s))
        ++violations;
    }
  }
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << invocations << " invocations, " << placements << " placements, " << violations
         << " threshold violations, " << elapsed << " s";
  report(1, "placement safety", violations == 0 && placements > 0 && elapsed < 30.0,
         detail.str());
}

void criterion_2_oracle_equivalence() {
  SplitMix64 rng(424242);
  const int instances = 500;
  long mismatches = 0;
  long placements = 0;
  for (int i = 0; i < instances; ++i) {
    RandomInstance inst = make_instance(rng);
    ReplicationDecision heuristic = place_replicas(inst.rd, inst.query, inst.catalog,
                                                   inst.topology, inst.scenario, inst.thresholds,
                                                   10);
    Catalog working = inst.catalog;
    std::size_t idx = 0;
    for (const std::string& rid :
         replication_order(inst.rd, inst.query, inst.catalog, inst.topology, inst.scenario)) {
      std::optional<CandidateEval> best;
      for (const RegionKey& region : inst.topology.regions()) {
        if (working.region_has_copy(rid, region)) continue;
        CandidateEval e;
        e.region = region;
        e.est_cost =
            estimated_monetary_cost(inst.query, rid, region, working, inst.topology, inst.scenario);
        e.est_time_s =
            estimated_response_time(inst.query, rid, region, working, inst.topology, inst.scenario);
        e.cost_ok = e.est_cost < inst.thresholds.c_sla;
        e.time_ok = e.est_time_s < inst.thresholds.t_sla_s;
        if (e.cost_ok && e.time_ok &&
            (!best || e.est_cost < best->est_cost ||
             (e.est_cost == best->est_cost && e.region < best->region)))
          best = e;
      }
      bool heuristic_placed =
          idx < heuristic.placements.size() && heuristic.placements[idx].relation_id == rid;
      if (best) {
        if (!heuristic_placed || heuristic.placements[idx].region != best->region ||
            heuristic.placements[idx].est_cost != best->est_cost) {
          ++mismatches;
        } else {
          working.add_replica(rid, pick_replica_vm(best->region, working, inst.topology), 10);
          ++placements;
          ++idx;
        }
      } else if (heuristic_placed) {
        ++mismatches;
      }
    }
    if (idx != heuristic.placements.size()) ++mismatches;
  }
  std::ostringstream detail;
  detail << instances << " instances, " << placements << " placements matched, " << mismatches
         << " mismatches";
  report(2, "placement equals brute-force oracle", mismatches == 0 && placements > 0,
         detail.str());
}

void criterion_3_popularity_oracle() {
  SplitMix64 rng(31337);
  Scenario s = testutil::make_scenario(2, 2, 2, 2);
  long logs = 0;
  long failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Catalog c = Catalog::from_relations(s.relations);
    const std::string id = "r-p0-us-00";
    std::vector<std::uint64_t> log;
    std::uint64_t tick = 1 + rng.below(10);
    int n = static_cast<int>(rng.below(60));
    for (int i = 0; i < n; ++i) {
      log.push_back(tick);
      c.record_access(id, tick);
      tick += rng.below(3);
    }
    std::uint64_t now = tick + rng.below(20);
    double expected = log.empty() ? 0.0
                                  : static_cast<double>(log.size()) /
                                        static_cast<double>(now - log.front() + 1);
    if (c.popularity(id, now) != expected) ++failures;
    ++logs;
  }
  std::ostringstream detail;
  detail << logs << " random access logs replayed, " << failures << " mismatches";
  report(3, "popularity matches brute-force recomputation", failures == 0, detail.str());
}

void criterion_4_accounting(const RunOutput& tcdrm_run) {
  bool ok = tcdrm_run.report.rows.size() == 1000;
  Money query_total;
  for (const ReportRow& row : tcdrm_run.report.rows) {
    if (row.cost_total != row.cost_cpu + row.cost_io + row.cost_bw + row.cost_storage) ok = false;
    query_total += row.cost_total;
  }
  Money expected = query_total + tcdrm_run.report.replication_charges +
                   tcdrm_run.report.storage_charges;
  if (tcdrm_run.report.cumulative_cost != expected) ok = false;
  std::ostringstream detail;
  detail << tcdrm_run.report.rows.size() << " queries, cumulative "
         << tcdrm_run.report.cumulative_cost.str() << " = queries " << query_total.str()
         << " + replication " << tcdrm_run.report.replication_charges.str() << " + storage "
         << tcdrm_run.report.storage_charges.str();
  report(4, "exact cost accounting", ok, detail.str());
}

void criterion_5_trigger_soundness(const RunOutput& tcdrm_run, const Scenario& scenario) {
  // Replay the event log: every placement tick must carry a violated query
  // and a popularity value above the gate.
  std::map<std::uint64_t, const nlohmann::json*> triggers;
  long placements = 0;
  long exceptions = 0;
  for (const nlohmann::json& e : tcdrm_run.events)
    if (e["event"] == "trigger") triggers[e["tick"].get<std::uint64_t>()] = &e;

  double p_sla = scenario.maintenance_thresholds().p_sla;
  for (const nlohmann::json& e : tcdrm_run.events) {
    if (e["event"] != "placement") continue;
    ++placements;
    std::uint64_t tick = e["tick"].get<std::uint64_t>();
    auto it = triggers.find(tick);
    if (it == triggers.end()) {
      ++exceptions;
      continue;
    }
    const nlohmann::json& trig = *it->second;
    if (!(trig["time_violated"].get<bool>() || trig["cost_violated"].get<bool>())) ++exceptions;
    const std::string rid = e["relation"].get<std::string>();
    if (!trig["popularity"].contains(rid) ||
        !(trig["popularity"][rid]["request_count"].get<double>() > p_sla))
      ++exceptions;
  }
  std::ostringstream detail;
  detail << placements << " replica creations replayed, " << exceptions << " exceptions";
  report(5, "trigger and popularity-gate soundness", placements > 0 && exceptions == 0,
         detail.str());
}

void criterion_6_replica_factor(const RunOutput& tcdrm_run, const Scenario& scenario) {
  // First replica only after the 200th access of its relation, and the
  // replica count series is non-decreasing until the first deletion.
  std::optional<std::uint64_t> first_placement_tick;
  std::string first_relation;
  std::optional<std::uint64_t> first_deletion_tick;
  for (const nlohmann::json& e : tcdrm_run.events) {
    if (e["event"] == "placement" && !first_placement_tick) {
      first_placement_tick = e["tick"].get<std::uint64_t>();
      first_relation = e["relation"].get<std::string>();
    }
    if (e["event"] == "deletion" && !first_deletion_tick)
      first_deletion_tick = e["tick"].get<std::uint64_t>();
  }
  bool ok = first_placement_tick.has_value();
  std::ostringstream detail;
  if (!ok) {
    detail << "no replica was ever created";
  } else {
    // Repeat mode: each query touches its relations once per tick, so the
    // access count at the placement tick equals the tick index.
    double count_at_trigger = 0;
    for (const nlohmann::json& e : tcdrm_run.events) {
      if (e["event"] == "trigger" && e["tick"] == *first_placement_tick &&
          e["popularity"].contains(first_relation)) {
        count_at_trigger = e["popularity"][first_relation]["request_count"].get<double>();
      }
    }
    double p_sla = scenario.maintenance_thresholds().p_sla;
    if (!(count_at_trigger > p_sla)) ok = false;
    if (*first_placement_tick <= static_cast<std::uint64_t>(p_sla)) ok = false;

    std::uint64_t horizon = first_deletion_tick.value_or(
        tcdrm_run.report.rows.back().tick + 1);
    std::size_t prev = 0;
    for (const ReportRow& row : tcdrm_run.report.rows) {
      if (row.tick >= horizon) break;
      if (row.replicas < prev) ok = false;
      prev = row.replicas;
    }
    detail << "first replica at tick " << *first_placement_tick << " with "
           << count_at_trigger << " accesses (threshold " << p_sla
           << "); count non-decreasing before first prune";
  }
  report(6, "replica factor trend", ok, detail.str());
}

void criterion_7_bandwidth(const RunOutput& tcdrm_run, const RunOutput& baseline_run,
                           const Scenario& scenario, double tcdrm_seconds,
                           double baseline_seconds) {
  bool ok = true;
  std::ostringstream detail;

  // Inter-provider traffic converges to zero.
  std::uint64_t last_interprovider_tick = 0;
  for (const ReportRow& row : tcdrm_run.report.rows)
    if (row.gb_interprovider > 0) last_interprovider_tick = row.tick;
  std::uint64_t n = tcdrm_run.report.rows.back().tick;
  if (last_interprovider_tick + 100 > n) ok = false;
  detail << "interProvider GB zero after tick " << last_interprovider_tick << "; ";

  // Baseline per-query bandwidth cost depends only on the query origin.
  TopologyIndex topo = TopologyIndex::build(scenario.providers);
  std::vector<Query> queries =
      generate_workload(scenario.workload, topo, scenario.relations, scenario.seed);
  std::map<std::string, std::set<std::int64_t>> by_origin;
  for (std::size_t i = 0; i < baseline_run.report.rows.size(); ++i)
    by_origin[queries[i].origin.key()].insert(baseline_run.report.rows[i].cost_bw.nanos());
  std::size_t worst = 0;
  for (const auto& [origin, values] : by_origin) worst = std::max(worst, values.size());
  if (worst != 1) ok = false;
  detail << by_origin.size() << " origins each with one bandwidth-cost value; ";

  // Cumulative bandwidth-cost reduction at the last query.
  double reduction =
      1.0 - static_cast<double>(tcdrm_run.report.aggregates.cumulative_bandwidth_cost.nanos()) /
                static_cast<double>(baseline_run.report.aggregates.cumulative_bandwidth_cost.nanos());
  if (!(reduction >= 0.50 && reduction <= 0.90)) ok = false;
  detail << "cumulative bandwidth-cost reduction " << reduction * 100 << "% (band 50-90%); ";

  if (!(tcdrm_seconds < 10.0 && baseline_seconds < 10.0)) ok = false;
  detail << "runtimes " << tcdrm_seconds << " s / " << baseline_seconds << " s";
  report(7, "bandwidth trends and reduction", ok, detail.str());
}

void criterion_8_response_time(const RunOutput& tcdrm_run, const RunOutput& baseline_run) {
  const auto& t_rows = tcdrm_run.report.rows;
  const auto& b_rows = baseline_run.report.rows;
  std::size_t n = t_rows.size();
  std::size_t start = n >= 250 ? n - 250 : 0;
  double t_sum = 0, b_sum = 0;
  for (std::size_t i = start; i < n; ++i) {
    t_sum += t_rows[i].t_q_s;
    b_sum += b_rows[i].t_q_s;
  }
  double reduction = 1.0 - t_sum / b_sum;
  std::ostringstream detail;
  detail << "final-250 average response time reduced by " << reduction * 100
         << "% (required >= 30%)";
  report(8, "response-time reduction", reduction >= 0.30, detail.str());
}

void criterion_9_deletion() {
  // Two-phase workload: a repeated simple query over google-homed relations
  // for 500 ticks, then a disjoint repeated query for 1000 more. Replicas
  // serving only the first query must be deleted exactly after delta_t
  // consecutive idle periods, and no earlier than the grace period allows.
  Scenario s = default_scenario();
  s.workload = WorkloadSpec{WorkloadMode::repeat, 1500, Complexity::simple, ""};
  TopologyIndex topo = TopologyIndex::build(s.providers);

  std::vector<std::string> set_a = {"r-google-us-00", "r-google-ue-00", "r-google-as-00"};
  std::vector<std::string> set_b = {"r-google-us-01", "r-google-ue-01", "r-google-as-01"};
  SplitMix64 rng(5150);
  std::vector<Query> queries;
  for (int i = 1; i <= 1500; ++i) {
    Query q;
    char id[16];
    std::snprintf(id, sizeof id, "q%05d", i);
    q.id = id;
    q.cls = QueryClass::simple;
    q.relation_ids = i <= 500 ? set_a : set_b;
    const auto& regions = topo.regions();
    q.origin = regions[rng.below(regions.size())];
    queries.push_back(std::move(q));
  }

  RunOutput out = run_with_workload(s, StrategyKind::tcdrm, queries);

  int period = s.maintenance_thresholds().period_length_ticks;
  int delta_t = s.maintenance_thresholds().delta_t_periods;
  // Key replicas by (relation, region): a decision may also create
  // zero-benefit copies that idle from birth, with their own earlier
  // deletion schedule.
  struct ReplicaTrace {
    std::uint64_t created = 0;
    std::optional<std::uint64_t> deleted;
    bool used = false;
  };
  std::map<std::string, ReplicaTrace> traces;
  for (const nlohmann::json& e : out.events) {
    if (e["event"] == "placement") {
      std::string key = e["relation"].get<std::string>() + "@" + e["region"].get<std::string>();
      traces[key].created = e["tick"].get<std::uint64_t>();
    }
    if (e["event"] == "deletion") {
      const auto& loc = e["location"];
      std::string key = e["relation"].get<std::string>() + "@" +
                        loc["provider"].get<std::string>() + "/" +
                        loc["region"].get<std::string>();
      if (traces.count(key)) traces[key].deleted = e["tick"].get<std::uint64_t>();
    }
  }
  // A copy "served" the workload iff it was ever read. Deletion events carry
  // the replica's lifetime access count; copies alive at the end are read
  // from the final catalog.
  for (const nlohmann::json& e : out.events) {
    if (e["event"] != "deletion") continue;
    const auto& loc = e["location"];
    std::string key = e["relation"].get<std::string>() + "@" +
                      loc["provider"].get<std::string>() + "/" + loc["region"].get<std::string>();
    if (traces.count(key)) traces[key].used = e["lifetime_accesses"].get<std::uint64_t>() > 0;
  }
  for (const Replica* r : out.final_catalog.replicas()) {
    std::string key = r->relation_id + "@" + r->location.region_key().key();
    if (traces.count(key)) traces[key].used = r->lifetime_accesses > 0;
  }

  bool ok = true;
  std::ostringstream detail;
  auto is_phase_a = [&](const std::string& key) {
    for (const std::string& rid : set_a)
      if (key.rfind(rid + "@", 0) == 0) return true;
    return false;
  };

  const std::uint64_t switch_tick = 500;
  int a_used = 0;
  for (const auto& [key, trace] : traces) {
    if (!is_phase_a(key)) {
      // Phase-B replicas that serve the active query must survive to the end.
      if (trace.deleted && traces[key].used) {
        ok = false;
        detail << key << " wrongly deleted at " << *trace.deleted << "; ";
      }
      continue;
    }
    if (!trace.deleted) {
      ok = false;
      detail << key << " never deleted; ";
      continue;
    }
    // Earliest legal deletion: delta_t consecutive idle evaluation periods
    // (idleness starts at creation for never-used copies, right after the
    // workload switch for serving copies), and never inside the creation
    // grace window.
    std::uint64_t idle_from = trace.used ? switch_tick + 1 : trace.created;
    std::uint64_t first_boundary = ((idle_from + period - 1) / period) * period;
    std::uint64_t expected =
        first_boundary + static_cast<std::uint64_t>(delta_t - 1) * period;
    std::uint64_t grace_end = ((trace.created + period - 1) / period) * period +
                              static_cast<std::uint64_t>(delta_t - 1) * period;
    if (*trace.deleted != std::max(expected, grace_end)) {
      ok = false;
      detail << key << " deleted at " << *trace.deleted << " expected "
             << std::max(expected, grace_end) << "; ";
    } else {
      detail << key << (trace.used ? " (serving)" : " (idle-from-birth)") << " deleted at "
             << *trace.deleted << "; ";
    }
    if (trace.used) ++a_used;
  }
  if (a_used == 0) {
    ok = false;
    detail << "no serving phase-A replica was ever created";
  }
  report(9, "deletion after consecutive idle periods", ok, detail.str());
}

void criterion_10_determinism() {
  fs::remove_all("acc_det_a");
  fs::remove_all("acc_det_b");
  std::string base = std::string(TCDRM_CLI_BIN) + " compare --scenario " + TCDRM_SCENARIO_FILE +
                     " --events --out ";
  int rc_a = std::system((base + "acc_det_a > acc_det_a.log 2>&1").c_str());
  int rc_b = std::system((base + "acc_det_b > acc_det_b.log 2>&1").c_str());
  bool ok = WEXITSTATUS(rc_a) == 0 && WEXITSTATUS(rc_b) == 0;
  std::vector<std::string> files = {"report-tcdrm.csv",    "report-tcdrm.json",
                                    "report-noreplc.csv",  "report-noreplc.json",
                                    "comparison.json",     "events-tcdrm.ndjson",
                                    "events-noreplc.ndjson"};
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int identical = 0;
  for (const std::string& f : files) {
    std::string a = slurp(fs::path("acc_det_a") / f);
    std::string b = slurp(fs::path("acc_det_b") / f);
    if (a.empty() || a != b)
      ok = false;
    else
      ++identical;
  }
  std::ostringstream detail;
  detail << identical << "/" << files.size() << " output files byte-identical across two runs";
  report(10, "byte-identical compare outputs", ok, detail.str());
  fs::remove_all("acc_det_a");
  fs::remove_all("acc_det_b");
  fs::remove("acc_det_a.log");
  fs::remove("acc_det_b.log");
}

}  // namespace

int main() {
  Scenario scenario = default_scenario();

  auto t0 = std::chrono::steady_clock::now();
  RunOutput tcdrm_run = run(scenario, StrategyKind::tcdrm);
  double tcdrm_seconds = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  RunOutput baseline_run = run(scenario, StrategyKind::noreplc);
  double baseline_seconds = seconds_since(t0);

  criterion_1_placement_safety();
  criterion_2_oracle_equivalence();
  criterion_3_popularity_oracle();
  criterion_4_accounting(tcdrm_run);
  criterion_5_trigger_soundness(tcdrm_run, scenario);
  criterion_6_replica_factor(tcdrm_run, scenario);
  criterion_7_bandwidth(tcdrm_run, baseline_run, scenario, tcdrm_seconds, baseline_seconds);
  criterion_8_response_time(tcdrm_run, baseline_run);
  criterion_9_deletion();
  criterion_10_determinism();

  int failures = 0;
  for (const Criterion& c : g_results)
    if (!c.pass) ++failures;
  std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << " (" << failures
            << " failures)\n";
  return failures == 0 ? 0 : 1;
}

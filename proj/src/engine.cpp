#include "tcdrm/engine.hpp"

#include <cstdlib>
#include <iostream>

#include "tcdrm/scenario.hpp"

namespace tcdrm {

namespace {

bool verbose_logging() {
  static const bool on = [] {
    const char* v = std::getenv("TCDRM_LOG");
    return v != nullptr && *v != '\0';
  }();
  return on;
}

void emit(std::vector<nlohmann::json>& events, nlohmann::json event) {
  if (verbose_logging()) std::cerr << event.dump() << "\n";
  events.push_back(std::move(event));
}

nlohmann::json location_json(const Location& loc) {
  return nlohmann::json{{"provider", loc.provider},
                        {"region", loc.region},
                        {"datacenter", loc.datacenter},
                        {"vm", loc.vm}};
}

}  // namespace

Simulation::Simulation(const Scenario& scenario, StrategyKind strategy)
    : scenario_(scenario),
      topology_(TopologyIndex::build(scenario.providers)),
      strategy_(strategy),
      catalog_(Catalog::from_relations(scenario.relations)),
      fingerprint_{scenario.seed, config_hash(scenario)} {}

void Simulation::step(const Query& query) {
  ++tick_;
  const SlaThresholds& thresholds =
      scenario_.thresholds_for(query.cls == QueryClass::complex ? Complexity::complex
                                                                : Complexity::simple);

  ExecutionPlan plan = plan_query(query, catalog_, topology_, scenario_);

  QueryResult result;
  result.query_id = query.id;
  result.tick = tick_;
  result.cls = query.cls;
  result.t_q_s = response_time(plan, scenario_.network);
  result.cost = plan_cost(plan, scenario_.pricing);
  for (const TransferItem& t : plan.transfers) result.gb_by_tier[t.tier] += t.gb;
  result.time_violated = result.t_q_s > thresholds.t_sla_s;
  result.cost_violated = result.cost.total > thresholds.c_sla;

  // The executed read counts toward both the relation-level statistics and
  // the specific copy that served it.
  for (const std::string& rid : query.relation_ids) {
    catalog_.record_access(rid, tick_);
    catalog_.record_copy_access(rid, plan.sources.at(rid));
  }
  cumulative_cost_ += result.cost.total;

  emit(events_, nlohmann::json{{"event", "query"},
                               {"tick", tick_},
                               {"query_id", query.id},
                               {"class", to_string(query.cls)},
                               {"origin", query.origin.key()},
                               {"t_q_s", result.t_q_s},
                               {"c_q", result.cost.total.str()},
                               {"coordinator", plan.coordinator.str()},
                               {"time_violated", result.time_violated},
                               {"cost_violated", result.cost_violated}});

  if (strategy_ == StrategyKind::tcdrm) {
    std::vector<std::string> rd =
        evaluate_trigger(result, query.relation_ids, catalog_, thresholds, tick_);
    if (!rd.empty()) {
      nlohmann::json popularity = nlohmann::json::object();
      for (const std::string& rid : rd)
        popularity[rid] = nlohmann::json{
            {"request_count", catalog_.stats(rid).request_count},
            {"rate", catalog_.popularity(rid, tick_)}};
      emit(events_, nlohmann::json{{"event", "trigger"},
                                   {"tick", tick_},
                                   {"query_id", query.id},
                                   {"t_q_s", result.t_q_s},
                                   {"c_q", result.cost.total.str()},
                                   {"time_violated", result.time_violated},
                                   {"cost_violated", result.cost_violated},
                                   {"rd", rd},
                                   {"popularity", std::move(popularity)}});

      ReplicationDecision decision =
          place_replicas(rd, query, catalog_, topology_, scenario_, thresholds, tick_);
      for (const PlacementRecord& p : decision.placements) {
        catalog_.add_replica(p.relation_id, p.vm, tick_);
        CostBreakdown charge =
            replication_cost(catalog_.relation(p.relation_id), p.source_copy, p.vm,
                             scenario_.pricing);
        cumulative_cost_ += charge.total;
        replication_charges_ += charge.total;
        emit(events_, nlohmann::json{{"event", "placement"},
                                     {"tick", tick_},
                                     {"relation", p.relation_id},
                                     {"region", p.region.key()},
                                     {"vm", location_json(p.vm)},
                                     {"source", location_json(p.source_copy)},
                                     {"est_cost", p.est_cost.str()},
                                     {"est_time_s", p.est_time_s},
                                     {"replication_cost", charge.total.str()}});
      }
      for (const SkipRecord& skip : decision.skipped)
        emit(events_, nlohmann::json{{"event", "skip"},
                                     {"tick", tick_},
                                     {"relation", skip.relation_id},
                                     {"reason", skip.reason}});
      // Audit trail for the decision: every evaluated candidate.
      nlohmann::json evals = nlohmann::json::array();
      for (const auto& [rid, list] : decision.evaluations) {
        nlohmann::json entries = nlohmann::json::array();
        for (const CandidateEval& e : list)
          entries.push_back(nlohmann::json{{"region", e.region.key()},
                                           {"est_cost", e.est_cost.str()},
                                           {"est_time_s", e.est_time_s},
                                           {"cost_ok", e.cost_ok},
                                           {"time_ok", e.time_ok}});
        evals.push_back(nlohmann::json{{"relation", rid}, {"candidates", std::move(entries)}});
      }
      emit(events_, nlohmann::json{{"event", "decision"},
                                   {"tick", tick_},
                                   {"evaluations", std::move(evals)}});
    }
  }

  const SlaThresholds& maintenance = scenario_.maintenance_thresholds();
  if (tick_ % static_cast<std::uint64_t>(maintenance.period_length_ticks) == 0)
    period_maintenance();

  // The row reflects the end-of-tick catalog, including any boundary
  // deletions that just ran.
  collector_.record(result, catalog_.replica_count());
}

void Simulation::period_maintenance() {
  const SlaThresholds& maintenance = scenario_.maintenance_thresholds();
  if (strategy_ == StrategyKind::tcdrm) {
    Money charge = storage_charge(catalog_.replica_sizes_gb(),
                                  scenario_.pricing.storage_per_gb_period,
                                  maintenance.period_length_ticks, scenario_.billing_period_ticks);
    if (charge.nanos() != 0) {
      cumulative_cost_ += charge;
      storage_charges_ += charge;
      emit(events_, nlohmann::json{{"event", "storage_charge"},
                                   {"tick", tick_},
                                   {"replicas", catalog_.replica_count()},
                                   {"amount", charge.str()}});
    }
  }

  catalog_.roll_period(static_cast<std::size_t>(maintenance.delta_t_periods));

  if (strategy_ == StrategyKind::tcdrm) {
    for (const Deletion& d : prune_replicas(catalog_, maintenance)) {
      catalog_.remove_replica(d.relation_id, d.location);
      emit(events_, nlohmann::json{{"event", "deletion"},
                                   {"tick", tick_},
                                   {"relation", d.relation_id},
                                   {"location", location_json(d.location)},
                                   {"window", d.window},
                                   {"lifetime_accesses", d.lifetime_accesses}});
    }
  }
}

RunOutput Simulation::finish() {
  RunOutput out;
  out.report =
      collector_.finalize(strategy_, fingerprint_, replication_charges_, storage_charges_);
  if (out.report.cumulative_cost != cumulative_cost_)
    throw MetricsError("accounting drift between engine and metrics");
  out.events = std::move(events_);
  out.final_catalog = catalog_;
  return out;
}

RunOutput run(const Scenario& scenario, StrategyKind strategy) {
  TopologyIndex topology = TopologyIndex::build(scenario.providers);
  std::vector<Query> queries =
      generate_workload(scenario.workload, topology, scenario.relations, scenario.seed);
  return run_with_workload(scenario, strategy, queries);
}

RunOutput run_with_workload(const Scenario& scenario, StrategyKind strategy,
                            const std::vector<Query>& queries) {
  Simulation sim(scenario, strategy);
  for (const Query& q : queries) sim.step(q);
  return sim.finish();
}

}  // namespace tcdrm

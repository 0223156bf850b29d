#include "tcdrm/strategy.hpp"

#include <algorithm>

namespace tcdrm {

namespace {

bool popularity_above(const Catalog& catalog, const std::string& relation_id,
                      const SlaThresholds& thresholds, std::uint64_t tick) {
  if (thresholds.popularity_mode == PopularityMode::count)
    return static_cast<double>(catalog.stats(relation_id).request_count) > thresholds.p_sla;
  return catalog.popularity(relation_id, tick) > thresholds.p_sla;
}

}  // namespace

std::vector<std::string> evaluate_trigger(const QueryResult& result,
                                          const std::vector<std::string>& query_relations,
                                          const Catalog& catalog,
                                          const SlaThresholds& thresholds, std::uint64_t tick) {
  std::vector<std::string> rd;
  if (!result.time_violated && !result.cost_violated) return rd;
  for (const std::string& rid : query_relations)
    if (popularity_above(catalog, rid, thresholds, tick)) rd.push_back(rid);
  return rd;
}

std::vector<std::string> replication_order(const std::vector<std::string>& rd,
                                           const Query& query, const Catalog& catalog,
                                           const TopologyIndex& topology,
                                           const Scenario& scenario) {
  std::vector<std::pair<Money, std::string>> keyed;
  for (const std::string& rid : rd) {
    Money best;
    bool have = false;
    for (const RegionKey& region : topology.regions()) {
      if (catalog.region_has_copy(rid, region)) continue;
      Money est = estimated_monetary_cost(query, rid, region, catalog, topology, scenario);
      if (!have || est < best) {
        best = est;
        have = true;
      }
    }
    if (!have)
      best = plan_cost(plan_query(query, catalog, topology, scenario), scenario.pricing).total;
    keyed.emplace_back(best, rid);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  out.reserve(keyed.size());
  for (auto& [_, rid] : keyed) out.push_back(std::move(rid));
  return out;
}

ReplicationDecision place_replicas(const std::vector<std::string>& rd, const Query& query,
                                   const Catalog& catalog, const TopologyIndex& topology,
                                   const Scenario& scenario, const SlaThresholds& thresholds,
                                   std::uint64_t tick) {
  ReplicationDecision decision;
  decision.candidates = rd;
  Catalog working = catalog;

  for (const std::string& rid : replication_order(rd, query, catalog, topology, scenario)) {
    std::vector<CandidateEval> evals;
    for (const RegionKey& region : topology.regions()) {
      if (working.region_has_copy(rid, region)) continue;
      CandidateEval e;
      e.region = region;
      e.est_cost = estimated_monetary_cost(query, rid, region, working, topology, scenario);
      e.est_time_s = estimated_response_time(query, rid, region, working, topology, scenario);
      e.cost_ok = e.est_cost < thresholds.c_sla;
      e.time_ok = e.est_time_s < thresholds.t_sla_s;
      evals.push_back(std::move(e));
    }
    std::stable_sort(evals.begin(), evals.end(), [](const CandidateEval& a, const CandidateEval& b) {
      if (a.est_cost != b.est_cost) return a.est_cost < b.est_cost;
      return a.region < b.region;
    });

    const CandidateEval* chosen = nullptr;
    for (const CandidateEval& e : evals) {
      if (!e.cost_ok) continue;  // over budget, drop from the search space
      if (e.time_ok) {
        chosen = &e;
        break;
      }
    }

    if (chosen) {
      Location vm = pick_replica_vm(chosen->region, working, topology);
      Location src = pick_replication_source(rid, vm, working);
      decision.placements.push_back(
          PlacementRecord{rid, chosen->region, vm, src, chosen->est_cost, chosen->est_time_s});
      working.add_replica(rid, vm, tick);
    } else if (evals.empty()) {
      decision.skipped.push_back(SkipRecord{rid, "every region already holds a copy"});
    } else {
      bool any_cost_ok = std::any_of(evals.begin(), evals.end(),
                                     [](const CandidateEval& e) { return e.cost_ok; });
      decision.skipped.push_back(SkipRecord{
          rid, any_cost_ok ? "no budget-feasible candidate meets the response-time ceiling"
                           : "every candidate exceeds the per-query budget"});
    }
    decision.evaluations.emplace_back(rid, std::move(evals));
  }
  return decision;
}

std::vector<Deletion> prune_replicas(const Catalog& catalog, const SlaThresholds& thresholds) {
  std::vector<Deletion> deletions;
  std::size_t window = static_cast<std::size_t>(thresholds.delta_t_periods);
  double period_threshold =
      thresholds.popularity_mode == PopularityMode::count
          ? thresholds.p_sla / static_cast<double>(thresholds.delta_t_periods)
          : thresholds.p_sla * static_cast<double>(thresholds.period_length_ticks);
  for (const Replica* r : catalog.replicas()) {
    if (r->period_window.size() < window) continue;  // grace period
    bool all_below = true;
    for (std::size_t i = r->period_window.size() - window; i < r->period_window.size(); ++i) {
      if (static_cast<double>(r->period_window[i]) >= period_threshold) {
        all_below = false;
        break;
      }
    }
    if (all_below)
      deletions.push_back(Deletion{r->relation_id,
                                   r->location,
                                   {r->period_window.begin(), r->period_window.end()},
                                   r->lifetime_accesses});
  }
  return deletions;
}

ReplicationDecision noreplc_decide() { return ReplicationDecision{}; }

}  // namespace tcdrm

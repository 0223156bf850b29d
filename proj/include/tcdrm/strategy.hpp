// Replication strategy decisions.
//
// After each query the trigger compares realized response time and cost to
// the SLA ceilings; on a violation, every sufficiently popular relation of
// the query becomes a replication candidate. The placement heuristic then
// walks candidate regions in ascending estimated-cost order, discards those
// whose estimated cost would break the budget, and takes the first that
// also meets the response-time ceiling. A periodic scan deletes replicas
// whose per-copy activity stayed below threshold for a full run of
// consecutive evaluation periods. The NoRepLc baseline never replicates;
// its cheapest-provider routing lives in the shared planner.

#pragma once

#include <string>
#include <vector>

#include "tcdrm/catalog.hpp"
#include "tcdrm/plan.hpp"

namespace tcdrm {

enum class StrategyKind { tcdrm, noreplc };

constexpr const char* to_string(StrategyKind k) {
  return k == StrategyKind::tcdrm ? "tcdrm" : "noreplc";
}

struct CandidateEval {
  RegionKey region;
  Money est_cost;
  double est_time_s = 0;
  bool cost_ok = false;
  bool time_ok = false;
};

struct PlacementRecord {
  std::string relation_id;
  RegionKey region;
  Location vm;           // placement target
  Location source_copy;  // copy the replica is seeded from
  Money est_cost;
  double est_time_s = 0;
};

struct SkipRecord {
  std::string relation_id;
  std::string reason;
};

struct ReplicationDecision {
  std::vector<std::string> candidates;  // relations that passed the popularity gate
  std::vector<PlacementRecord> placements;
  std::vector<SkipRecord> skipped;
  // Audit trail: per relation, every candidate region with its estimates.
  std::vector<std::pair<std::string, std::vector<CandidateEval>>> evaluations;

  bool empty() const { return placements.empty() && skipped.empty(); }
};

// Relations of the query worth replicating: none unless the query violated
// a threshold; otherwise those whose popularity exceeds p_sla (lifetime
// request count in count mode, average request rate in rate mode).
std::vector<std::string> evaluate_trigger(const QueryResult& result,
                                          const std::vector<std::string>& query_relations,
                                          const Catalog& catalog,
                                          const SlaThresholds& thresholds, std::uint64_t tick);

// Processing order for a replication decision: cheapest achievable estimate
// first (ties by relation id). Placing the most cost-effective copy first
// lowers the working cost, which is what lets the remaining candidates fit
// under the budget one after another.
std::vector<std::string> replication_order(const std::vector<std::string>& rd,
                                           const Query& query, const Catalog& catalog,
                                           const TopologyIndex& topology,
                                           const Scenario& scenario);

// Placement for each flagged relation, processed in replication_order.
// Decisions within one call are cumulative: a chosen placement is visible to
// the estimates for the relations that follow, mirroring how the engine
// applies them.
ReplicationDecision place_replicas(const std::vector<std::string>& rd, const Query& query,
                                   const Catalog& catalog, const TopologyIndex& topology,
                                   const Scenario& scenario, const SlaThresholds& thresholds,
                                   std::uint64_t tick);

struct Deletion {
  std::string relation_id;
  Location location;
  std::vector<std::uint64_t> window;  // the per-period counts that decided it
  std::uint64_t lifetime_accesses = 0;
};

// Replicas whose last delta_t completed periods all fell below the
// popularity threshold. Replicas younger than delta_t periods are immune.
// In count mode a period is "below" when its access count is under
// p_sla / delta_t (the period's share of the window threshold); in rate
// mode when its per-tick rate is under p_sla.
std::vector<Deletion> prune_replicas(const Catalog& catalog, const SlaThresholds& thresholds);

// The baseline never replicates.
ReplicationDecision noreplc_decide();

}  // namespace tcdrm

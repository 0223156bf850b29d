// Query planning and pricing, shared by the engine and the placement
// estimators so that estimated and realized costs agree exactly.
//
// Planning rule: candidate coordinator regions are the origin provider's
// regions plus every region holding a copy of a query relation. Within a
// candidate region the coordinator is the lowest-id VM (prices are uniform
// per region). Each relation reads from the copy with the cheapest transfer
// to the coordinator (ties: nearer tier, then lower location id). The
// coordinator minimizing total monetary cost wins; ties fall to estimated
// time, then provider and region id.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcdrm/catalog.hpp"
#include "tcdrm/costmodel.hpp"
#include "tcdrm/topology.hpp"
#include "tcdrm/workload.hpp"

namespace tcdrm {

struct TransferItem {
  std::string relation_id;
  Tier tier = Tier::intra_dc;
  double gb = 0;
};

struct ReadItem {
  std::string relation_id;
  RegionKey source_region;
  double gb = 0;
};

struct ExecutionPlan {
  Location coordinator;
  double coordinator_mips = 0;
  std::map<std::string, Location> sources;  // relation -> chosen copy
  std::vector<TransferItem> transfers;      // copies off the coordinator VM
  std::vector<ReadItem> reads;              // one per relation
  double cpu_mi = 0;
};

struct QueryResult {
  std::string query_id;
  std::uint64_t tick = 0;
  QueryClass cls = QueryClass::simple;
  double t_q_s = 0;
  CostBreakdown cost;
  std::map<Tier, double> gb_by_tier;
  bool time_violated = false;
  bool cost_violated = false;
};

ExecutionPlan plan_query(const Query& query, const Catalog& catalog,
                         const TopologyIndex& topology, const Scenario& scenario);

// Parallel-fetch model: slowest transfer plus CPU time on the coordinator.
double response_time(const ExecutionPlan& plan, const NetworkTable& network);

// Prices the plan: reads billed at each source region, CPU and transfers at
// the coordinator region.
CostBreakdown plan_cost(const ExecutionPlan& plan, const PricingScheme& pricing);

// Where a new replica would land in the region: the VM hosting the fewest
// copies, lowest id first.
Location pick_replica_vm(const RegionKey& region, const Catalog& catalog,
                         const TopologyIndex& topology);

// Which existing copy seeds a new replica: cheapest connecting tier, then
// lowest location id.
Location pick_replication_source(const std::string& relation_id, const Location& dst,
                                 const Catalog& catalog);

// Cost and time of re-executing the query against the catalog extended with
// a hypothetical copy of the relation in the candidate region (placed on the
// VM pick_replica_vm would choose). A candidate region that already holds a
// copy changes nothing. Pure; the catalog is not modified.
Money estimated_monetary_cost(const Query& query, const std::string& relation_id,
                              const RegionKey& candidate, const Catalog& catalog,
                              const TopologyIndex& topology, const Scenario& scenario);
double estimated_response_time(const Query& query, const std::string& relation_id,
                               const RegionKey& candidate, const Catalog& catalog,
                               const TopologyIndex& topology, const Scenario& scenario);

}  // namespace tcdrm

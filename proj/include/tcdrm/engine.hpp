// Simulation driver. One query per tick, strictly sequential: plan against
// the current catalog, price and time the execution, record accesses, then
// let the strategy react. Replicas materialize after the triggering query,
// so benefits accrue to subsequent queries. At each evaluation-period
// boundary the engine charges replica storage, closes the per-replica
// activity windows, and applies deletions.
//
// Runs are pure functions of (scenario, strategy): same inputs, identical
// reports and event logs.

#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "tcdrm/catalog.hpp"
#include "tcdrm/metrics.hpp"
#include "tcdrm/plan.hpp"
#include "tcdrm/strategy.hpp"
#include "tcdrm/workload.hpp"

namespace tcdrm {

struct RunOutput {
  SimReport report;
  std::vector<nlohmann::json> events;  // line-delimited JSON when exported
  Catalog final_catalog;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, StrategyKind strategy);

  void step(const Query& query);
  std::uint64_t tick() const { return tick_; }
  const Catalog& catalog() const { return catalog_; }
  Money cumulative_cost() const { return cumulative_cost_; }

  RunOutput finish();

 private:
  void period_maintenance();

  const Scenario& scenario_;
  TopologyIndex topology_;
  StrategyKind strategy_;
  Catalog catalog_;
  std::uint64_t tick_ = 0;
  Money cumulative_cost_;
  Money replication_charges_;
  Money storage_charges_;
  MetricsCollector collector_;
  std::vector<nlohmann::json> events_;
  Fingerprint fingerprint_;
};

// Executes the scenario's own workload (generated, or loaded when the
// workload mode is "file").
RunOutput run(const Scenario& scenario, StrategyKind strategy);

// Executes an externally supplied query stream.
RunOutput run_with_workload(const Scenario& scenario, StrategyKind strategy,
                            const std::vector<Query>& queries);

}  // namespace tcdrm

#include "tcdrm/plan.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace tcdrm {

namespace {

struct SourceChoice {
  Location location;
  Tier tier = Tier::intra_vm;
  Money transfer_cost;
};

SourceChoice choose_source(const std::string& relation_id, double size_gb,
                           const Location& coordinator, const Catalog& catalog,
                           const PricingScheme& pricing) {
  SourceChoice best;
  bool have_best = false;
  for (const Location& copy : catalog.copies_of(relation_id)) {
    Tier tier = classify_link(copy, coordinator);
    Money cost;
    switch (tier) {
      case Tier::intra_vm:
        break;
      case Tier::intra_dc: {
        auto it = pricing.intra_dc_bw_per_gb.find(coordinator.region_key().key());
        if (it == pricing.intra_dc_bw_per_gb.end())
          throw ConfigError("intra_dc_bw_per_gb: missing pricing entry for " +
                            coordinator.region_key().key());
        cost = scale(it->second, size_gb);
        break;
      }
      case Tier::inter_region:
        cost = scale(pricing.inter_region_bw_per_gb, size_gb);
        break;
      case Tier::inter_provider:
        cost = scale(pricing.inter_provider_bw_per_gb, size_gb);
        break;
    }
    if (!have_best || std::tie(cost, tier, copy) <
                          std::tie(best.transfer_cost, best.tier, best.location)) {
      best = SourceChoice{copy, tier, cost};
      have_best = true;
    }
  }
  return best;
}

ExecutionPlan plan_for_coordinator(const Query& query, const RegionKey& region,
                                   const Catalog& catalog, const TopologyIndex& topology,
                                   const Scenario& scenario) {
  const auto& region_ref = topology.region(region);
  if (region_ref.vms.empty()) throw ConfigError("region has no VMs: " + region.key());
  const auto& vm = region_ref.vms.front();

  ExecutionPlan plan;
  plan.coordinator = vm.location;
  plan.coordinator_mips = vm.mips;
  double total_gb = 0;
  for (const std::string& rid : query.relation_ids) {
    const RelationSpec& rel = catalog.relation(rid);
    total_gb += rel.size_gb;
    SourceChoice src = choose_source(rid, rel.size_gb, vm.location, catalog, scenario.pricing);
    plan.sources[rid] = src.location;
    plan.reads.push_back(ReadItem{rid, src.location.region_key(), rel.size_gb});
    if (src.tier != Tier::intra_vm)
      plan.transfers.push_back(TransferItem{rid, src.tier, rel.size_gb});
  }
  plan.cpu_mi = scenario.compute_intensity_mi_per_gb * total_gb;
  return plan;
}

}  // namespace

double response_time(const ExecutionPlan& plan, const NetworkTable& network) {
  double slowest = 0;
  for (const TransferItem& t : plan.transfers) {
    const TierParams& p = network.get(t.tier);
    slowest = std::max(slowest, p.latency_s + t.gb / p.capacity_gbps);
  }
  return slowest + plan.cpu_mi / plan.coordinator_mips;
}

CostBreakdown plan_cost(const ExecutionPlan& plan, const PricingScheme& pricing) {
  // Coordinator context: CPU plus all transfers. Intra-datacenter transfers
  // happen inside the coordinator's region, so its price applies; the
  // wide-area tiers are flat.
  UsageVector coord;
  coord.context = plan.coordinator.region_key();
  coord.cpu_mi = plan.cpu_mi;
  for (const TransferItem& t : plan.transfers) coord.transfer[t.tier] += t.gb;
  CostBreakdown total = monetary_cost(coord, pricing);

  // Reads billed at each source copy's region.
  std::map<RegionKey, double> reads_by_region;
  for (const ReadItem& r : plan.reads) reads_by_region[r.source_region] += r.gb;
  for (const auto& [region, gb] : reads_by_region) {
    UsageVector reads;
    reads.context = region;
    reads.read_gb = gb;
    total += monetary_cost(reads, pricing);
  }
  return total;
}

ExecutionPlan plan_query(const Query& query, const Catalog& catalog,
                         const TopologyIndex& topology, const Scenario& scenario) {
  std::set<RegionKey> candidate_set;
  for (const RegionKey& rk : topology.regions_of(query.origin.provider))
    candidate_set.insert(rk);
  for (const std::string& rid : query.relation_ids)
    for (const Location& copy : catalog.copies_of(rid)) candidate_set.insert(copy.region_key());

  ExecutionPlan best_plan;
  Money best_cost;
  double best_time = 0;
  bool have_best = false;
  // Candidates iterate in sorted (provider, region) order, so cost and time
  // ties resolve to the lowest ids.
  for (const RegionKey& key : candidate_set) {
    ExecutionPlan plan = plan_for_coordinator(query, key, catalog, topology, scenario);
    Money cost = plan_cost(plan, scenario.pricing).total;
    double time = response_time(plan, scenario.network);
    bool better = !have_best || cost < best_cost ||
                  (cost == best_cost && time < best_time);
    if (better) {
      best_plan = std::move(plan);
      best_cost = cost;
      best_time = time;
      have_best = true;
    }
  }
  return best_plan;
}

Location pick_replica_vm(const RegionKey& region, const Catalog& catalog,
                         const TopologyIndex& topology) {
  const auto& region_ref = topology.region(region);
  if (region_ref.vms.empty()) throw ConfigError("region has no VMs: " + region.key());
  const TopologyIndex::VmRef* best = nullptr;
  std::size_t best_load = 0;
  for (const auto& vm : region_ref.vms) {
    std::size_t load = catalog.copies_hosted(vm.location);
    if (!best || load < best_load) {  // vms are id-sorted; ties keep the first
      best = &vm;
      best_load = load;
    }
  }
  return best->location;
}

Location pick_replication_source(const std::string& relation_id, const Location& dst,
                                 const Catalog& catalog) {
  std::vector<Location> copies = catalog.copies_of(relation_id);
  const Location* best = &copies.front();
  Tier best_tier = classify_link(copies.front(), dst);
  for (const Location& copy : copies) {
    Tier tier = classify_link(copy, dst);
    if (std::tie(tier, copy) < std::tie(best_tier, *best)) {
      best = &copy;
      best_tier = tier;
    }
  }
  return *best;
}

namespace {

ExecutionPlan plan_with_hypothetical(const Query& query, const std::string& relation_id,
                                     const RegionKey& candidate, const Catalog& catalog,
                                     const TopologyIndex& topology, const Scenario& scenario) {
  if (catalog.region_has_copy(relation_id, candidate))
    return plan_query(query, catalog, topology, scenario);
  Catalog hypothetical = catalog;
  hypothetical.add_replica(relation_id, pick_replica_vm(candidate, catalog, topology), 0);
  return plan_query(query, hypothetical, topology, scenario);
}

}  // namespace

Money estimated_monetary_cost(const Query& query, const std::string& relation_id,
                              const RegionKey& candidate, const Catalog& catalog,
                              const TopologyIndex& topology, const Scenario& scenario) {
  return plan_cost(
             plan_with_hypothetical(query, relation_id, candidate, catalog, topology, scenario),
             scenario.pricing)
      .total;
}

double estimated_response_time(const Query& query, const std::string& relation_id,
                               const RegionKey& candidate, const Catalog& catalog,
                               const TopologyIndex& topology, const Scenario& scenario) {
  return response_time(
      plan_with_hypothetical(query, relation_id, candidate, catalog, topology, scenario),
      scenario.network);
}

}  // namespace tcdrm

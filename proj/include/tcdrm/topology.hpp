// Multi-cloud topology: providers own regions, regions own datacenters,
// datacenters own VMs. Network links between any two locations fall into one
// of four tiers, each with its own price, capacity, and latency. A Scenario
// bundles the topology with pricing, SLA thresholds, workload definition,
// the initial relation catalog, and the seed; it is immutable after loading
// and safe to share read-only across threads.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcdrm/money.hpp"

namespace tcdrm {

// Network distance classes, nearest first. The enum order doubles as the
// tie-break order when two candidate copies price equally.
enum class Tier { intra_vm = 0, intra_dc = 1, inter_region = 2, inter_provider = 3 };

constexpr const char* to_string(Tier t) {
  switch (t) {
    case Tier::intra_vm: return "intra_vm";
    case Tier::intra_dc: return "intra_dc";
    case Tier::inter_region: return "inter_region";
    case Tier::inter_provider: return "inter_provider";
  }
  return "?";
}

struct RegionKey {
  std::string provider;
  std::string region;

  std::string key() const { return provider + "/" + region; }
  friend auto operator<=>(const RegionKey&, const RegionKey&) = default;
};

// A place in the hierarchy. vm (and datacenter) may be empty when only the
// region matters, e.g. for placement candidates.
struct Location {
  std::string provider;
  std::string region;
  std::string datacenter;
  std::string vm;

  RegionKey region_key() const { return {provider, region}; }
  std::string str() const { return provider + "/" + region + "/" + datacenter + "/" + vm; }
  friend auto operator<=>(const Location&, const Location&) = default;
};

struct VirtualMachine {
  std::string id;
  double mips = 0;  // million instructions per second
  Location location;
  friend bool operator==(const VirtualMachine&, const VirtualMachine&) = default;
};

struct Datacenter {
  std::string id;
  std::vector<VirtualMachine> vms;
  friend bool operator==(const Datacenter&, const Datacenter&) = default;
};

struct Region {
  std::string id;
  std::vector<Datacenter> datacenters;
  friend bool operator==(const Region&, const Region&) = default;
};

struct Provider {
  std::string id;
  std::vector<Region> regions;
  friend bool operator==(const Provider&, const Provider&) = default;
};

struct TierParams {
  double capacity_gbps = 0;  // GB per second
  double latency_s = 0;
  friend bool operator==(const TierParams&, const TierParams&) = default;
};

struct NetworkTable {
  TierParams intra_vm;
  TierParams intra_dc;
  TierParams inter_region;
  TierParams inter_provider;

  const TierParams& get(Tier t) const {
    switch (t) {
      case Tier::intra_vm: return intra_vm;
      case Tier::intra_dc: return intra_dc;
      case Tier::inter_region: return inter_region;
      case Tier::inter_provider: return inter_provider;
    }
    throw std::logic_error("bad tier");
  }
  friend bool operator==(const NetworkTable&, const NetworkTable&) = default;
};

// Prices keyed by "provider/region". Intra-datacenter bandwidth is also
// keyed per region; the two wide-area tiers are flat rates.
struct PricingScheme {
  std::map<std::string, Money> cpu_per_million_mi;
  std::map<std::string, Money> io_per_gb;
  std::map<std::string, Money> intra_dc_bw_per_gb;
  Money inter_region_bw_per_gb;
  Money inter_provider_bw_per_gb;
  Money storage_per_gb_period;
  friend bool operator==(const PricingScheme&, const PricingScheme&) = default;
};

enum class PopularityMode { count, rate };

struct SlaThresholds {
  double t_sla_s = 0;        // response-time ceiling
  Money c_sla;               // per-query budget ceiling
  double p_sla = 0;          // popularity threshold, interpreted per mode
  PopularityMode popularity_mode = PopularityMode::count;
  int delta_t_periods = 1;   // consecutive low-popularity periods before deletion
  int period_length_ticks = 1;
  friend bool operator==(const SlaThresholds&, const SlaThresholds&) = default;
};

struct ThresholdSet {
  SlaThresholds simple;
  SlaThresholds complex;
  friend bool operator==(const ThresholdSet&, const ThresholdSet&) = default;
};

enum class WorkloadMode { repeat, random, file };
enum class Complexity { simple, complex, mixed };

struct WorkloadSpec {
  WorkloadMode mode = WorkloadMode::repeat;
  int count = 1000;
  Complexity complexity = Complexity::complex;
  std::string file;  // query stream to ingest when mode == file
  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

struct RelationSpec {
  std::string id;
  double size_gb = 0;
  Location home;
  friend bool operator==(const RelationSpec&, const RelationSpec&) = default;
};

struct Scenario {
  std::vector<Provider> providers;
  PricingScheme pricing;
  NetworkTable network;
  ThresholdSet thresholds;
  WorkloadSpec workload;
  std::vector<RelationSpec> relations;
  std::uint64_t seed = 0;
  double compute_intensity_mi_per_gb = 0;  // CPU work per GB scanned
  int billing_period_ticks = 1000;         // storage billing granularity

  // Maintenance cadence (storage billing, deletion scan) follows the
  // threshold block matching the workload's complexity; mixed uses simple.
  const SlaThresholds& maintenance_thresholds() const {
    return workload.complexity == Complexity::complex ? thresholds.complex
                                                      : thresholds.simple;
  }
  const SlaThresholds& thresholds_for(Complexity c) const {
    return c == Complexity::complex ? thresholds.complex : thresholds.simple;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Most specific shared level between two locations. Symmetric and total on
// valid locations: same VM, same region (datacenter differences collapse
// into the intra-datacenter tier), same provider, or nothing shared.
Tier classify_link(const Location& a, const Location& b);

struct LinkParams {
  Money price_per_gb;
  double capacity_gbps = 0;
  double latency_s = 0;
};

// Price, capacity, and latency of a link of the given tier. The context
// region keys the intra-datacenter price; the wide-area tiers are flat.
// Throws ConfigError when the pricing table lacks the needed entry.
LinkParams link_params(Tier kind, const RegionKey& context, const PricingScheme& pricing,
                       const NetworkTable& network);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lookup structure over a scenario's provider tree. Regions and VMs are kept
// in deterministic (id-sorted) order; all iteration during planning and
// placement goes through this index.
class TopologyIndex {
 public:
  struct VmRef {
    std::string id;
    double mips = 0;
    Location location;
  };
  struct RegionRef {
    RegionKey key;
    std::vector<VmRef> vms;  // sorted by vm id
  };

  static TopologyIndex build(const std::vector<Provider>& providers);

  const std::vector<RegionKey>& regions() const { return region_keys_; }
  const std::vector<std::string>& provider_ids() const { return provider_ids_; }

  bool has_region(const RegionKey& key) const;
  const RegionRef& region(const RegionKey& key) const;  // throws ConfigError
  const std::vector<RegionKey>& regions_of(const std::string& provider) const;

  // VM lookup by exact location; nullptr when absent.
  const VmRef* find_vm(const Location& loc) const;

  // Full path check: provider, region, datacenter, and (when present) vm all
  // exist and nest correctly.
  bool valid_location(const Location& loc, bool require_vm) const;

 private:
  std::vector<std::string> provider_ids_;                      // sorted
  std::map<std::string, std::vector<RegionKey>> by_provider_;  // sorted values
  std::vector<RegionKey> region_keys_;                         // sorted
  std::map<std::string, RegionRef> region_map_;                // key -> ref
  std::map<std::string, VmRef> vm_map_;                        // location str -> ref
};

}  // namespace tcdrm

// Shared builders for tests: compact scenario construction and randomized
// small instances for oracle checks.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcdrm/catalog.hpp"
#include "tcdrm/rng.hpp"
#include "tcdrm/scenario.hpp"
#include "tcdrm/topology.hpp"
#include "tcdrm/workload.hpp"

namespace testutil {

// A small scenario with the given shape and uniform default pricing; prices
// can be perturbed afterwards. Region ids are us/ue/as truncated or
// extended as r<i>; providers p0, p1, ...
inline tcdrm::Scenario make_scenario(int providers, int regions, int vms_per_region,
                                     int relations_per_region, double size_gb = 0.45) {
  using namespace tcdrm;
  Scenario s;
  s.seed = 1;
  s.compute_intensity_mi_per_gb = 10000;
  s.billing_period_ticks = 1000;
  static const char* kRegionNames[] = {"us", "ue", "as"};
  for (int p = 0; p < providers; ++p) {
    Provider prov;
    prov.id = "p" + std::to_string(p);
    for (int r = 0; r < regions; ++r) {
      Region reg;
      reg.id = r < 3 ? kRegionNames[r] : "r" + std::to_string(r);
      Datacenter dc;
      dc.id = "dc1";
      for (int v = 0; v < vms_per_region; ++v) {
        char id[16];
        std::snprintf(id, sizeof id, "vm%02d", v);
        dc.vms.push_back(VirtualMachine{id, 1000000, Location{prov.id, reg.id, dc.id, id}});
      }
      reg.datacenters.push_back(std::move(dc));
      prov.regions.push_back(std::move(reg));
    }
    s.providers.push_back(std::move(prov));
  }
  for (const Provider& p : s.providers) {
    for (const Region& r : p.regions) {
      std::string key = p.id + "/" + r.id;
      s.pricing.cpu_per_million_mi[key] = Money::from_dollars(0.02);
      s.pricing.io_per_gb[key] = Money::from_dollars(0.008);
      s.pricing.intra_dc_bw_per_gb[key] = Money::from_dollars(0.0015);
    }
  }
  s.pricing.inter_region_bw_per_gb = Money::from_dollars(0.008);
  s.pricing.inter_provider_bw_per_gb = Money::from_dollars(0.01);
  s.pricing.storage_per_gb_period = Money::from_dollars(0.02);
  s.network.intra_vm = TierParams{1e6, 0.0};
  s.network.intra_dc = TierParams{10.0, 0.001};
  s.network.inter_region = TierParams{5.0, 0.05};
  s.network.inter_provider = TierParams{2.0, 0.1};
  s.thresholds.simple = SlaThresholds{0.2, Money::from_dollars(0.015), 200,
                                      PopularityMode::count, 5, 100};
  s.thresholds.complex = SlaThresholds{0.4, Money::from_dollars(0.040), 200,
                                       PopularityMode::count, 5, 100};
  s.workload = WorkloadSpec{WorkloadMode::repeat, 1000, Complexity::complex, ""};
  for (const Provider& p : s.providers) {
    for (const Region& r : p.regions) {
      const Datacenter& dc = r.datacenters.front();
      for (int k = 0; k < relations_per_region; ++k) {
        RelationSpec rel;
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "%02d", k);
        rel.id = "r-" + p.id + "-" + r.id + "-" + suffix;
        rel.size_gb = size_gb;
        rel.home = dc.vms[static_cast<std::size_t>(k) % dc.vms.size()].location;
        s.relations.push_back(std::move(rel));
      }
    }
  }
  return s;
}

inline tcdrm::Location home_of(const tcdrm::Scenario& s, const std::string& relation_id) {
  for (const auto& r : s.relations)
    if (r.id == relation_id) return r.home;
  throw std::runtime_error("no such relation: " + relation_id);
}

// Uniformly drawn money amount on a coarse grid, keeping price comparisons
// exact and varied.
inline tcdrm::Money random_price(tcdrm::SplitMix64& rng, double lo, double hi, double step) {
  auto steps = static_cast<std::uint64_t>((hi - lo) / step) + 1;
  return tcdrm::Money::from_dollars(lo + step * static_cast<double>(rng.below(steps)));
}

}  // namespace testutil

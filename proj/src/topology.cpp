#include "tcdrm/topology.hpp"

#include <algorithm>

namespace tcdrm {

Tier classify_link(const Location& a, const Location& b) {
  if (a.provider != b.provider) return Tier::inter_provider;
  if (a.region != b.region) return Tier::inter_region;
  if (!a.vm.empty() && a.vm == b.vm && a.datacenter == b.datacenter) return Tier::intra_vm;
  return Tier::intra_dc;
}

LinkParams link_params(Tier kind, const RegionKey& context, const PricingScheme& pricing,
                       const NetworkTable& network) {
  LinkParams out;
  const TierParams& np = network.get(kind);
  out.capacity_gbps = np.capacity_gbps;
  out.latency_s = np.latency_s;
  switch (kind) {
    case Tier::intra_vm:
      out.price_per_gb = Money{};
      out.latency_s = 0;
      break;
    case Tier::intra_dc: {
      auto it = pricing.intra_dc_bw_per_gb.find(context.key());
      if (it == pricing.intra_dc_bw_per_gb.end())
        throw ConfigError("pricing.intra_dc_bw_per_gb: missing entry for " + context.key());
      out.price_per_gb = it->second;
      break;
    }
    case Tier::inter_region:
      out.price_per_gb = pricing.inter_region_bw_per_gb;
      break;
    case Tier::inter_provider:
      out.price_per_gb = pricing.inter_provider_bw_per_gb;
      break;
  }
  return out;
}

TopologyIndex TopologyIndex::build(const std::vector<Provider>& providers) {
  TopologyIndex idx;
  for (const Provider& p : providers) {
    idx.provider_ids_.push_back(p.id);
    auto& region_list = idx.by_provider_[p.id];
    for (const Region& r : p.regions) {
      RegionKey key{p.id, r.id};
      region_list.push_back(key);
      idx.region_keys_.push_back(key);
      RegionRef ref;
      ref.key = key;
      for (const Datacenter& dc : r.datacenters) {
        for (const VirtualMachine& vm : dc.vms) {
          VmRef v{vm.id, vm.mips, Location{p.id, r.id, dc.id, vm.id}};
          idx.vm_map_[v.location.str()] = v;
          ref.vms.push_back(std::move(v));
        }
      }
      std::sort(ref.vms.begin(), ref.vms.end(),
                [](const VmRef& a, const VmRef& b) { return a.id < b.id; });
      idx.region_map_[key.key()] = std::move(ref);
    }
    std::sort(region_list.begin(), region_list.end());
  }
  std::sort(idx.provider_ids_.begin(), idx.provider_ids_.end());
  std::sort(idx.region_keys_.begin(), idx.region_keys_.end());
  return idx;
}

bool TopologyIndex::has_region(const RegionKey& key) const {
  return region_map_.count(key.key()) != 0;
}

const TopologyIndex::RegionRef& TopologyIndex::region(const RegionKey& key) const {
  auto it = region_map_.find(key.key());
  if (it == region_map_.end()) throw ConfigError("unknown region: " + key.key());
  return it->second;
}

const std::vector<RegionKey>& TopologyIndex::regions_of(const std::string& provider) const {
  auto it = by_provider_.find(provider);
  if (it == by_provider_.end()) throw ConfigError("unknown provider: " + provider);
  return it->second;
}

const TopologyIndex::VmRef* TopologyIndex::find_vm(const Location& loc) const {
  auto it = vm_map_.find(loc.str());
  return it == vm_map_.end() ? nullptr : &it->second;
}

bool TopologyIndex::valid_location(const Location& loc, bool require_vm) const {
  if (loc.vm.empty() && loc.datacenter.empty())
    return !require_vm && has_region(loc.region_key());
  if (loc.vm.empty()) return false;
  return find_vm(loc) != nullptr;
}

}  // namespace tcdrm

#include "tcdrm/costmodel.hpp"

namespace tcdrm {

namespace {

Money lookup(const std::map<std::string, Money>& table, const RegionKey& region,
             const char* what) {
  auto it = table.find(region.key());
  if (it == table.end())
    throw ConfigError(std::string(what) + ": missing pricing entry for " + region.key());
  return it->second;
}

}  // namespace

CostBreakdown monetary_cost(const UsageVector& usage, const PricingScheme& pricing) {
  Money cpu, io, bandwidth;
  if (usage.cpu_mi > 0)
    cpu = scale(lookup(pricing.cpu_per_million_mi, usage.context, "cpu_per_million_mi"),
                usage.cpu_mi / 1e6);
  double io_gb = usage.read_gb + usage.written_gb;
  if (io_gb > 0) io = scale(lookup(pricing.io_per_gb, usage.context, "io_per_gb"), io_gb);
  for (const auto& [tier, gb] : usage.transfer) {
    if (gb <= 0) continue;
    Money price;
    switch (tier) {
      case Tier::intra_vm:
        continue;  // no transfer occurs
      case Tier::intra_dc:
        price = lookup(pricing.intra_dc_bw_per_gb, usage.context, "intra_dc_bw_per_gb");
        break;
      case Tier::inter_region:
        price = pricing.inter_region_bw_per_gb;
        break;
      case Tier::inter_provider:
        price = pricing.inter_provider_bw_per_gb;
        break;
    }
    bandwidth += scale(price, gb);
  }
  return CostBreakdown::make(cpu, io, bandwidth, Money{});
}

CostBreakdown replication_cost(const RelationSpec& relation, const Location& src,
                               const Location& dst, const PricingScheme& pricing) {
  Tier tier = classify_link(src, dst);
  if (tier == Tier::intra_vm || tier == Tier::intra_dc)
    throw std::invalid_argument("replication source and destination share a region: " +
                                src.str() + " -> " + dst.str());
  Money per_gb = tier == Tier::inter_region ? pricing.inter_region_bw_per_gb
                                            : pricing.inter_provider_bw_per_gb;
  Money bandwidth = scale(per_gb, relation.size_gb);
  Money io = scale(lookup(pricing.io_per_gb, dst.region_key(), "io_per_gb"), relation.size_gb);
  return CostBreakdown::make(Money{}, io, bandwidth, Money{});
}

Money storage_charge(const std::vector<double>& replica_sizes_gb, Money price_per_gb_period,
                     int period_length_ticks, int billing_period_ticks) {
  Money total;
  double fraction = static_cast<double>(period_length_ticks) /
                    static_cast<double>(billing_period_ticks);
  for (double size : replica_sizes_gb) total += scale(price_per_gb_period, size * fraction);
  return total;
}

}  // namespace tcdrm

// Pay-as-you-go cost accounting: CPU, I/O, and bandwidth are monetized per
// the provider/region price tables; storage is charged per evaluation
// period, pro-rated against the billing period. Every breakdown satisfies
// total == cpu + io + bandwidth + storage exactly (integer nanodollars).

#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcdrm/money.hpp"
#include "tcdrm/topology.hpp"

namespace tcdrm {

// Resources consumed in one billing context (the provider/region where CPU
// and I/O are metered). Transfer GB is keyed by tier; intra-datacenter
// transfers are priced by the context region.
struct UsageVector {
  double cpu_mi = 0;
  double read_gb = 0;
  double written_gb = 0;
  std::map<Tier, double> transfer;
  RegionKey context;
};

struct CostBreakdown {
  Money cpu;
  Money io;
  Money bandwidth;
  Money storage;
  Money total;

  static CostBreakdown make(Money cpu, Money io, Money bandwidth, Money storage) {
    return {cpu, io, bandwidth, storage, cpu + io + bandwidth + storage};
  }
  CostBreakdown& operator+=(const CostBreakdown& other) {
    cpu += other.cpu;
    io += other.io;
    bandwidth += other.bandwidth;
    storage += other.storage;
    total += other.total;
    return *this;
  }
  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

// Prices a usage vector. Throws ConfigError when the context region has no
// pricing entry.
CostBreakdown monetary_cost(const UsageVector& usage, const PricingScheme& pricing);

// Cost of materializing a copy at dst from the existing copy at src: the
// transfer across the connecting tier plus the write at the destination.
// src and dst must sit in different regions.
CostBreakdown replication_cost(const RelationSpec& relation, const Location& src,
                               const Location& dst, const PricingScheme& pricing);

// Holding charge for one evaluation period over the given replica sizes.
Money storage_charge(const std::vector<double>& replica_sizes_gb, Money price_per_gb_period,
                     int period_length_ticks, int billing_period_ticks);

}  // namespace tcdrm

// Query stream generation.
//
// Query classes are defined over region indices (the region ids shared by
// all providers, e.g. us/ue/as): a simple query joins one relation per
// region index, a complex query two per region index, with the provider of
// each drawn relation chosen uniformly. The origin (provider, region) is
// uniform and redrawn for every query, in repeat mode too.
//
// Draw order is part of the reproducibility contract. All draws come from
// one SplitMix64 stream seeded with the scenario seed:
//   repeat mode: [class if mixed] [relation set] then per query [origin]
//   random mode: per query [class if mixed] [relation set] [origin]
// Relation draws per region index (sorted index order): provider, then
// relation; a complex query redraws the second pair while it collides with
// the first relation of the same index.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "tcdrm/topology.hpp"

namespace tcdrm {

enum class QueryClass { simple, complex };

constexpr const char* to_string(QueryClass c) {
  return c == QueryClass::simple ? "simple" : "complex";
}

struct Query {
  std::string id;
  RegionKey origin;
  std::vector<std::string> relation_ids;
  QueryClass cls = QueryClass::simple;
  friend bool operator==(const Query&, const Query&) = default;
};

class WorkloadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Query> generate_workload(const WorkloadSpec& spec, const TopologyIndex& topology,
                                     const std::vector<RelationSpec>& relations,
                                     std::uint64_t seed);

// Externally authored streams: a JSON array of queries bypassing generation.
nlohmann::json workload_to_json(const std::vector<Query>& queries);
std::vector<Query> workload_from_json(const nlohmann::json& doc, const TopologyIndex& topology,
                                      const std::vector<RelationSpec>& relations);
std::vector<Query> load_workload(const std::string& path, const TopologyIndex& topology,
                                 const std::vector<RelationSpec>& relations);

}  // namespace tcdrm

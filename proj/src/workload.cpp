#include "tcdrm/workload.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "tcdrm/rng.hpp"

namespace tcdrm {

namespace {

struct DrawTables {
  std::vector<std::string> region_indices;  // sorted region ids
  std::vector<std::string> providers;       // sorted provider ids
  // (provider, region id) -> relation ids homed there, sorted
  std::map<std::string, std::vector<std::string>> by_home;
};

DrawTables build_tables(const TopologyIndex& topology,
                        const std::vector<RelationSpec>& relations) {
  DrawTables t;
  t.providers = topology.provider_ids();
  std::set<std::string> indices;
  for (const RegionKey& rk : topology.regions()) indices.insert(rk.region);
  t.region_indices.assign(indices.begin(), indices.end());
  for (const RelationSpec& r : relations)
    t.by_home[r.home.region_key().key()].push_back(r.id);
  for (auto& [_, ids] : t.by_home) std::sort(ids.begin(), ids.end());
  return t;
}

const std::vector<std::string>& pool(const DrawTables& t, const std::string& provider,
                                     const std::string& region_index) {
  auto it = t.by_home.find(provider + "/" + region_index);
  if (it == t.by_home.end() || it->second.empty())
    throw WorkloadError("insufficient relations in region " + provider + "/" + region_index);
  return it->second;
}

std::string draw_relation(SplitMix64& rng, const DrawTables& t,
                          const std::string& region_index) {
  const std::string& provider = t.providers[rng.below(t.providers.size())];
  const auto& ids = pool(t, provider, region_index);
  return ids[rng.below(ids.size())];
}

std::size_t index_population(const DrawTables& t, const std::string& region_index) {
  std::size_t n = 0;
  for (const std::string& provider : t.providers) {
    auto it = t.by_home.find(provider + "/" + region_index);
    if (it != t.by_home.end()) n += it->second.size();
  }
  return n;
}

std::vector<std::string> draw_relation_set(SplitMix64& rng, const DrawTables& t,
                                           QueryClass cls) {
  std::vector<std::string> out;
  for (const std::string& index : t.region_indices) {
    std::string first = draw_relation(rng, t, index);
    out.push_back(first);
    if (cls == QueryClass::complex) {
      if (index_population(t, index) < 2)
        throw WorkloadError("insufficient relations in region index " + index +
                            " for a complex query");
      std::string second = draw_relation(rng, t, index);
      while (second == first) second = draw_relation(rng, t, index);
      out.push_back(second);
    }
  }
  return out;
}

RegionKey draw_origin(SplitMix64& rng, const TopologyIndex& topology, const DrawTables& t) {
  const std::string& provider = t.providers[rng.below(t.providers.size())];
  const auto& regions = topology.regions_of(provider);
  return regions[rng.below(regions.size())];
}

std::string query_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "q%05d", i);
  return buf;
}

}  // namespace

std::vector<Query> generate_workload(const WorkloadSpec& spec, const TopologyIndex& topology,
                                     const std::vector<RelationSpec>& relations,
                                     std::uint64_t seed) {
  if (spec.mode == WorkloadMode::file)
    return load_workload(spec.file, topology, relations);
  if (spec.count < 1) throw WorkloadError("workload.count: must be >= 1");

  DrawTables tables = build_tables(topology, relations);
  if (tables.region_indices.size() < 3)
    throw WorkloadError("query classes need at least three region indices");

  SplitMix64 rng(seed);
  auto draw_class = [&](Complexity c) {
    switch (c) {
      case Complexity::simple: return QueryClass::simple;
      case Complexity::complex: return QueryClass::complex;
      case Complexity::mixed: return rng.below(2) == 0 ? QueryClass::simple : QueryClass::complex;
    }
    return QueryClass::simple;
  };

  std::vector<Query> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  if (spec.mode == WorkloadMode::repeat) {
    QueryClass cls = draw_class(spec.complexity);
    std::vector<std::string> set = draw_relation_set(rng, tables, cls);
    for (int i = 1; i <= spec.count; ++i)
      out.push_back(Query{query_id(i), draw_origin(rng, topology, tables), set, cls});
  } else {
    for (int i = 1; i <= spec.count; ++i) {
      QueryClass cls = draw_class(spec.complexity);
      std::vector<std::string> set = draw_relation_set(rng, tables, cls);
      out.push_back(Query{query_id(i), draw_origin(rng, topology, tables), std::move(set), cls});
    }
  }
  return out;
}

nlohmann::json workload_to_json(const std::vector<Query>& queries) {
  nlohmann::json out = nlohmann::json::array();
  for (const Query& q : queries) {
    out.push_back(nlohmann::json{
        {"id", q.id},
        {"class", to_string(q.cls)},
        {"origin", nlohmann::json{{"provider", q.origin.provider}, {"region", q.origin.region}}},
        {"relations", q.relation_ids}});
  }
  return out;
}

std::vector<Query> workload_from_json(const nlohmann::json& doc, const TopologyIndex& topology,
                                      const std::vector<RelationSpec>& relations) {
  if (!doc.is_array()) throw WorkloadError("workload stream: expected a JSON array");
  std::set<std::string> known;
  for (const RelationSpec& r : relations) known.insert(r.id);
  std::vector<Query> out;
  for (const nlohmann::json& qj : doc) {
    Query q;
    q.id = qj.value("id", query_id(static_cast<int>(out.size()) + 1));
    std::string cls = qj.value("class", "simple");
    if (cls == "simple")
      q.cls = QueryClass::simple;
    else if (cls == "complex")
      q.cls = QueryClass::complex;
    else
      throw WorkloadError(q.id + ".class: expected \"simple\" or \"complex\"");
    if (!qj.contains("origin") || !qj.contains("relations"))
      throw WorkloadError(q.id + ": needs \"origin\" and \"relations\"");
    q.origin.provider = qj["origin"].value("provider", "");
    q.origin.region = qj["origin"].value("region", "");
    if (!topology.has_region(q.origin))
      throw WorkloadError(q.id + ".origin: unknown region " + q.origin.key());
    for (const auto& rid : qj["relations"]) {
      std::string id = rid.get<std::string>();
      if (!known.count(id)) throw WorkloadError(q.id + ".relations: unknown relation " + id);
      q.relation_ids.push_back(std::move(id));
    }
    if (q.relation_ids.size() < 3 || q.relation_ids.size() > 6)
      throw WorkloadError(q.id + ".relations: expected 3..6 relations");
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Query> load_workload(const std::string& path, const TopologyIndex& topology,
                                 const std::vector<RelationSpec>& relations) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WorkloadError("cannot open workload file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw WorkloadError("workload parse error in " + path + ": " + e.what());
  }
  return workload_from_json(doc, topology, relations);
}

}  // namespace tcdrm

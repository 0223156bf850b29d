#include "tcdrm/catalog.hpp"

#include <algorithm>
#include <tuple>

namespace tcdrm {

Catalog Catalog::from_relations(const std::vector<RelationSpec>& relations) {
  Catalog c;
  for (const RelationSpec& r : relations) {
    if (c.entries_.count(r.id)) throw CatalogError("duplicate relation id: " + r.id);
    c.entries_[r.id] = Entry{r, {}, {}};
  }
  return c;
}

const Catalog::Entry& Catalog::entry(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw UnknownRelationError(id);
  return it->second;
}

Catalog::Entry& Catalog::entry(const std::string& id) {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw UnknownRelationError(id);
  return it->second;
}

const RelationSpec& Catalog::relation(const std::string& id) const { return entry(id).spec; }
const AccessStats& Catalog::stats(const std::string& id) const { return entry(id).stats; }

std::vector<std::string> Catalog::relation_ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

void Catalog::record_access(const std::string& id, std::uint64_t tick) {
  Entry& e = entry(id);
  if (e.stats.first_access_tick && tick < e.stats.last_access_tick)
    throw CatalogError("access tick regression for " + id);
  e.stats.request_count += 1;
  if (!e.stats.first_access_tick) e.stats.first_access_tick = tick;
  e.stats.last_access_tick = tick;
}

void Catalog::record_copy_access(const std::string& id, const Location& copy) {
  Entry& e = entry(id);
  for (Replica& r : e.replicas) {
    if (r.location == copy) {
      r.lifetime_accesses += 1;
      r.current_period_accesses += 1;
      return;
    }
  }
  // Home copy: accounted only in the relation-level stats.
}

double Catalog::popularity(const std::string& id, std::uint64_t current_tick) const {
  const Entry& e = entry(id);
  if (!e.stats.first_access_tick) return 0.0;
  std::uint64_t first = *e.stats.first_access_tick;
  if (current_tick < first)
    throw std::domain_error("popularity evaluated before first access of " + id);
  return static_cast<double>(e.stats.request_count) /
         static_cast<double>(current_tick - first + 1);
}

std::vector<Location> Catalog::copies_of(const std::string& id) const {
  const Entry& e = entry(id);
  std::vector<Location> out;
  out.reserve(1 + e.replicas.size());
  out.push_back(e.spec.home);
  for (const Replica& r : e.replicas) out.push_back(r.location);
  return out;
}

bool Catalog::region_has_copy(const std::string& id, const RegionKey& region) const {
  const Entry& e = entry(id);
  if (e.spec.home.region_key() == region) return true;
  for (const Replica& r : e.replicas)
    if (r.location.region_key() == region) return true;
  return false;
}

void Catalog::add_replica(const std::string& id, const Location& location, std::uint64_t tick) {
  Entry& e = entry(id);
  if (region_has_copy(id, location.region_key()))
    throw CatalogError("duplicate copy of " + id + " in region " + location.region_key().key());
  Replica r;
  r.relation_id = id;
  r.location = location;
  r.created_tick = tick;
  e.replicas.push_back(std::move(r));
  std::sort(e.replicas.begin(), e.replicas.end(), [](const Replica& a, const Replica& b) {
    return std::tie(a.created_tick, a.location) < std::tie(b.created_tick, b.location);
  });
}

void Catalog::remove_replica(const std::string& id, const Location& location) {
  Entry& e = entry(id);
  if (e.spec.home == location)
    throw CatalogError("refusing to remove home copy of " + id);
  auto it = std::find_if(e.replicas.begin(), e.replicas.end(),
                         [&](const Replica& r) { return r.location == location; });
  if (it == e.replicas.end())
    throw CatalogError("no replica of " + id + " at " + location.str());
  e.replicas.erase(it);
}

std::size_t Catalog::replica_count() const {
  std::size_t n = 0;
  for (const auto& [_, e] : entries_) n += e.replicas.size();
  return n;
}

std::vector<const Replica*> Catalog::replicas() const {
  std::vector<const Replica*> out;
  for (const auto& [_, e] : entries_)
    for (const Replica& r : e.replicas) out.push_back(&r);
  return out;
}

std::vector<double> Catalog::replica_sizes_gb() const {
  std::vector<double> out;
  for (const auto& [_, e] : entries_)
    for (std::size_t i = 0; i < e.replicas.size(); ++i) out.push_back(e.spec.size_gb);
  return out;
}

std::size_t Catalog::copies_hosted(const Location& vm) const {
  std::size_t n = 0;
  for (const auto& [_, e] : entries_) {
    if (e.spec.home == vm) ++n;
    for (const Replica& r : e.replicas)
      if (r.location == vm) ++n;
  }
  return n;
}

void Catalog::roll_period(std::size_t window_cap) {
  for (auto& [_, e] : entries_) {
    for (Replica& r : e.replicas) {
      r.period_window.push_back(r.current_period_accesses);
      r.current_period_accesses = 0;
      while (r.period_window.size() > window_cap) r.period_window.pop_front();
    }
  }
}

nlohmann::json Catalog::dump_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [id, e] : entries_) {
    nlohmann::json replicas = nlohmann::json::array();
    for (const Replica& r : e.replicas) {
      replicas.push_back(nlohmann::json{
          {"location", r.location.str()},
          {"created_tick", r.created_tick},
          {"lifetime_accesses", r.lifetime_accesses},
          {"current_period_accesses", r.current_period_accesses},
          {"period_window", r.period_window},
      });
    }
    nlohmann::json stats{{"request_count", e.stats.request_count},
                         {"last_access_tick", e.stats.last_access_tick}};
    if (e.stats.first_access_tick) stats["first_access_tick"] = *e.stats.first_access_tick;
    out.push_back(nlohmann::json{{"id", id},
                                 {"size_gb", e.spec.size_gb},
                                 {"home", e.spec.home.str()},
                                 {"stats", std::move(stats)},
                                 {"replicas", std::move(replicas)}});
  }
  return out;
}

}  // namespace tcdrm

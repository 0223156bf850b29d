// Relation catalog: home copies, replicas, and access statistics.
//
// Two popularity notions live here. Creation decisions use the global
// per-relation counters (request count and rate since first access).
// Deletion decisions use per-replica activity windows: each replica counts
// accesses to that specific copy within the current evaluation period, and
// roll_period() moves the count into a bounded ring of recent periods.

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tcdrm/topology.hpp"

namespace tcdrm {

struct AccessStats {
  std::uint64_t request_count = 0;
  std::optional<std::uint64_t> first_access_tick;
  std::uint64_t last_access_tick = 0;
  friend bool operator==(const AccessStats&, const AccessStats&) = default;
};

struct Replica {
  std::string relation_id;
  Location location;
  std::uint64_t created_tick = 0;
  std::uint64_t lifetime_accesses = 0;
  std::uint64_t current_period_accesses = 0;
  std::deque<std::uint64_t> period_window;  // completed periods, oldest first
};

class UnknownRelationError : public std::runtime_error {
 public:
  explicit UnknownRelationError(const std::string& id)
      : std::runtime_error("unknown relation id: " + id) {}
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Catalog {
 public:
  Catalog() = default;
  static Catalog from_relations(const std::vector<RelationSpec>& relations);

  const RelationSpec& relation(const std::string& id) const;
  const AccessStats& stats(const std::string& id) const;
  std::vector<std::string> relation_ids() const;

  // Registers one access to the relation at the given tick. Ticks must be
  // non-decreasing per relation.
  void record_access(const std::string& id, std::uint64_t tick);

  // Registers an access against the specific copy that served the read.
  // Home copies carry no deletion window, so they are a no-op here.
  void record_copy_access(const std::string& id, const Location& copy);

  // Average request rate since first access (requests per tick); 0 when the
  // relation was never accessed. Throws std::domain_error when current_tick
  // precedes the first access.
  double popularity(const std::string& id, std::uint64_t current_tick) const;

  // All copy locations: home first, then replicas ordered by creation tick
  // and location. Never empty.
  std::vector<Location> copies_of(const std::string& id) const;

  bool region_has_copy(const std::string& id, const RegionKey& region) const;

  void add_replica(const std::string& id, const Location& location, std::uint64_t tick);
  void remove_replica(const std::string& id, const Location& location);

  std::size_t replica_count() const;
  std::vector<const Replica*> replicas() const;  // deterministic order
  std::vector<double> replica_sizes_gb() const;

  // Copies (home + replicas) hosted on the given VM; placement load metric.
  std::size_t copies_hosted(const Location& vm) const;

  // Closes the current evaluation period on every replica window, keeping at
  // most window_cap completed periods.
  void roll_period(std::size_t window_cap);

  nlohmann::json dump_json() const;

 private:
  struct Entry {
    RelationSpec spec;
    AccessStats stats;
    std::vector<Replica> replicas;  // kept sorted by (created_tick, location)
  };
  const Entry& entry(const std::string& id) const;
  Entry& entry(const std::string& id);

  std::map<std::string, Entry> entries_;
};

}  // namespace tcdrm

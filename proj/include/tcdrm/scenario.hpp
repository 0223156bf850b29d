// Scenario file handling: parse, validate, fill defaults, serialize.
//
// The on-disk format is JSON with sections topology, pricing, network,
// thresholds, workload, relations, plus seed and model constants. Topology
// and relations accept a compact generator form ("vms": 20,
// "per_region": 20) alongside fully explicit trees; loading always expands
// to the explicit form, so serialization round-trips an equivalent scenario.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "tcdrm/topology.hpp"

namespace tcdrm {

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string message, std::vector<std::string> findings)
      : std::runtime_error(std::move(message)), findings_(std::move(findings)) {}
  const std::vector<std::string>& findings() const { return findings_; }

 private:
  std::vector<std::string> findings_;
};

// Throws ScenarioError on parse failure or any validation finding; each
// finding names the offending key or id.
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& doc);

nlohmann::json scenario_to_json(const Scenario& s);

// Validation findings without throwing (used by the validate subcommand).
std::vector<std::string> validate_scenario(const Scenario& s);

// FNV-1a over the canonical serialized form; identifies a configuration in
// report fingerprints.
std::uint64_t config_hash(const Scenario& s);

// The bundled default scenario (also written by `tcdrm init-config`).
const std::string& default_scenario_text();
Scenario default_scenario();

}  // namespace tcdrm

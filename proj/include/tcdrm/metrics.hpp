// Per-query metric series and run aggregates, with CSV/JSON export and
// strategy comparison. Exports are byte-identical for identical reports;
// money renders in canonical decimal form and doubles in shortest
// round-trip form.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "tcdrm/costmodel.hpp"
#include "tcdrm/plan.hpp"
#include "tcdrm/strategy.hpp"

namespace tcdrm {

struct ReportRow {
  std::uint64_t tick = 0;
  std::string query_id;
  QueryClass cls = QueryClass::simple;
  double t_q_s = 0;
  Money cost_cpu;
  Money cost_io;
  Money cost_bw;
  Money cost_storage;  // always 0 for query execution
  Money cost_total;
  double gb_intradc = 0;
  double gb_interregion = 0;
  double gb_interprovider = 0;
  std::size_t replicas = 0;  // catalog replica count after this tick
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Aggregates {
  double avg_response_time_s = 0;
  Money cumulative_bandwidth_cost;  // query transfers only
  CostBreakdown total_query_cost;
  double total_gb_interprovider = 0;
  double total_gb_interregion = 0;
  std::size_t final_replicas = 0;
  friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

struct Fingerprint {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct SimReport {
  int schema_version = 1;
  StrategyKind strategy = StrategyKind::tcdrm;
  Fingerprint fingerprint;
  std::vector<ReportRow> rows;
  Aggregates aggregates;
  Money replication_charges;  // one-off replica creation costs
  Money storage_charges;      // periodic holding costs
  Money cumulative_cost;      // query totals + replication + storage
  friend bool operator==(const SimReport&, const SimReport&) = default;
};

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MetricsCollector {
 public:
  // Rows arrive once per tick, in order.
  void record(const QueryResult& result, std::size_t replica_count);
  SimReport finalize(StrategyKind strategy, Fingerprint fingerprint, Money replication_charges,
                     Money storage_charges) const;

 private:
  std::vector<ReportRow> rows_;
};

// Recomputes aggregates from rows; finalize() and the JSON importer both use
// it, so imported reports are verifiable against their own rows.
Aggregates compute_aggregates(const std::vector<ReportRow>& rows);

struct ComparisonSummary {
  Fingerprint fingerprint;
  double bandwidth_cost_reduction = 0;        // 1 - tcdrm/baseline, signed
  double response_time_reduction_full = 0;    // over all queries
  double response_time_reduction_last_quartile = 0;
  Money tcdrm_cumulative_bandwidth_cost;
  Money baseline_cumulative_bandwidth_cost;
  Money tcdrm_total_cost;
  Money baseline_total_cost;
};

// Both reports must come from the same scenario fingerprint.
ComparisonSummary compare(const SimReport& tcdrm_report, const SimReport& baseline);
nlohmann::json comparison_to_json(const ComparisonSummary& summary);

std::string report_to_csv(const SimReport& report);
nlohmann::json report_to_json(const SimReport& report);
SimReport report_from_json(const nlohmann::json& doc);

void write_file(const std::string& path, const std::string& content);
SimReport import_report(const std::string& path);

}  // namespace tcdrm

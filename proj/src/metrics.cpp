#include "tcdrm/metrics.hpp"

#include <fstream>

namespace tcdrm {

namespace {

// Shortest round-trip decimal rendering (what the JSON layer emits), used
// for CSV too so both formats agree byte-for-byte on repeated exports.
std::string dtos(double v) { return nlohmann::json(v).dump(); }

QueryClass class_from_string(const std::string& s) {
  if (s == "simple") return QueryClass::simple;
  if (s == "complex") return QueryClass::complex;
  throw MetricsError("bad query class: " + s);
}

Money money_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw MetricsError(std::string("report: missing ") + key);
  auto m = Money::parse(j[key].get<std::string>());
  if (!m) throw MetricsError(std::string("report: bad monetary value in ") + key);
  return *m;
}

}  // namespace

void MetricsCollector::record(const QueryResult& result, std::size_t replica_count) {
  if (!rows_.empty() && result.tick <= rows_.back().tick)
    throw MetricsError("out-of-order tick " + std::to_string(result.tick));
  ReportRow row;
  row.tick = result.tick;
  row.query_id = result.query_id;
  row.cls = result.cls;
  row.t_q_s = result.t_q_s;
  row.cost_cpu = result.cost.cpu;
  row.cost_io = result.cost.io;
  row.cost_bw = result.cost.bandwidth;
  row.cost_storage = result.cost.storage;
  row.cost_total = result.cost.total;
  auto tier_gb = [&](Tier t) {
    auto it = result.gb_by_tier.find(t);
    return it == result.gb_by_tier.end() ? 0.0 : it->second;
  };
  row.gb_intradc = tier_gb(Tier::intra_dc);
  row.gb_interregion = tier_gb(Tier::inter_region);
  row.gb_interprovider = tier_gb(Tier::inter_provider);
  row.replicas = replica_count;
  rows_.push_back(std::move(row));
}

Aggregates compute_aggregates(const std::vector<ReportRow>& rows) {
  Aggregates agg;
  Money cpu, io, bw, storage;
  double t_sum = 0;
  for (const ReportRow& r : rows) {
    t_sum += r.t_q_s;
    cpu += r.cost_cpu;
    io += r.cost_io;
    bw += r.cost_bw;
    storage += r.cost_storage;
    agg.total_gb_interprovider += r.gb_interprovider;
    agg.total_gb_interregion += r.gb_interregion;
  }
  agg.total_query_cost = CostBreakdown::make(cpu, io, bw, storage);
  agg.cumulative_bandwidth_cost = bw;
  if (!rows.empty()) {
    agg.avg_response_time_s = t_sum / static_cast<double>(rows.size());
    agg.final_replicas = rows.back().replicas;
  }
  return agg;
}

SimReport MetricsCollector::finalize(StrategyKind strategy, Fingerprint fingerprint,
                                     Money replication_charges, Money storage_charges) const {
  SimReport report;
  report.strategy = strategy;
  report.fingerprint = fingerprint;
  report.rows = rows_;
  report.aggregates = compute_aggregates(rows_);
  report.replication_charges = replication_charges;
  report.storage_charges = storage_charges;
  report.cumulative_cost =
      report.aggregates.total_query_cost.total + replication_charges + storage_charges;
  return report;
}

ComparisonSummary compare(const SimReport& tcdrm_report, const SimReport& baseline) {
  if (tcdrm_report.fingerprint != baseline.fingerprint)
    throw MetricsError("fingerprint mismatch: reports come from different scenarios or seeds");
  if (tcdrm_report.rows.size() != baseline.rows.size())
    throw MetricsError("fingerprint mismatch: reports have different row counts");

  ComparisonSummary s;
  s.fingerprint = tcdrm_report.fingerprint;
  s.tcdrm_cumulative_bandwidth_cost = tcdrm_report.aggregates.cumulative_bandwidth_cost;
  s.baseline_cumulative_bandwidth_cost = baseline.aggregates.cumulative_bandwidth_cost;
  s.tcdrm_total_cost = tcdrm_report.cumulative_cost;
  s.baseline_total_cost = baseline.cumulative_cost;
  if (baseline.aggregates.cumulative_bandwidth_cost.nanos() != 0)
    s.bandwidth_cost_reduction =
        1.0 - static_cast<double>(tcdrm_report.aggregates.cumulative_bandwidth_cost.nanos()) /
                  static_cast<double>(baseline.aggregates.cumulative_bandwidth_cost.nanos());
  if (baseline.aggregates.avg_response_time_s > 0)
    s.response_time_reduction_full =
        1.0 - tcdrm_report.aggregates.avg_response_time_s / baseline.aggregates.avg_response_time_s;

  std::size_t n = tcdrm_report.rows.size();
  std::size_t quartile = n - n / 4;
  double t_sum = 0, b_sum = 0;
  for (std::size_t i = quartile; i < n; ++i) {
    t_sum += tcdrm_report.rows[i].t_q_s;
    b_sum += baseline.rows[i].t_q_s;
  }
  if (b_sum > 0) s.response_time_reduction_last_quartile = 1.0 - t_sum / b_sum;
  return s;
}

nlohmann::json comparison_to_json(const ComparisonSummary& s) {
  return nlohmann::json{
      {"schema_version", 1},
      {"fingerprint",
       nlohmann::json{{"seed", s.fingerprint.seed}, {"config_hash", s.fingerprint.config_hash}}},
      {"bandwidth_cost_reduction", s.bandwidth_cost_reduction},
      {"response_time_reduction_full", s.response_time_reduction_full},
      {"response_time_reduction_last_quartile", s.response_time_reduction_last_quartile},
      {"tcdrm_cumulative_bandwidth_cost", s.tcdrm_cumulative_bandwidth_cost.str()},
      {"baseline_cumulative_bandwidth_cost", s.baseline_cumulative_bandwidth_cost.str()},
      {"tcdrm_total_cost", s.tcdrm_total_cost.str()},
      {"baseline_total_cost", s.baseline_total_cost.str()},
  };
}

std::string report_to_csv(const SimReport& report) {
  std::string out;
  out += "# tcdrm-report schema=" + std::to_string(report.schema_version) +
         " strategy=" + to_string(report.strategy) +
         " seed=" + std::to_string(report.fingerprint.seed) +
         " config=" + std::to_string(report.fingerprint.config_hash) + "\n";
  out +=
      "tick,query_id,class,t_q_s,cost_cpu,cost_io,cost_bw,cost_storage,cost_total,"
      "gb_intradc,gb_interregion,gb_interprovider,replicas\n";
  for (const ReportRow& r : report.rows) {
    out += std::to_string(r.tick) + "," + r.query_id + "," + to_string(r.cls) + "," +
           dtos(r.t_q_s) + "," + r.cost_cpu.str() + "," + r.cost_io.str() + "," +
           r.cost_bw.str() + "," + r.cost_storage.str() + "," + r.cost_total.str() + "," +
           dtos(r.gb_intradc) + "," + dtos(r.gb_interregion) + "," + dtos(r.gb_interprovider) +
           "," + std::to_string(r.replicas) + "\n";
  }
  return out;
}

nlohmann::json report_to_json(const SimReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    rows.push_back(nlohmann::json{{"tick", r.tick},
                                  {"query_id", r.query_id},
                                  {"class", to_string(r.cls)},
                                  {"t_q_s", r.t_q_s},
                                  {"cost_cpu", r.cost_cpu.str()},
                                  {"cost_io", r.cost_io.str()},
                                  {"cost_bw", r.cost_bw.str()},
                                  {"cost_storage", r.cost_storage.str()},
                                  {"cost_total", r.cost_total.str()},
                                  {"gb_intradc", r.gb_intradc},
                                  {"gb_interregion", r.gb_interregion},
                                  {"gb_interprovider", r.gb_interprovider},
                                  {"replicas", r.replicas}});
  }
  const Aggregates& a = report.aggregates;
  return nlohmann::json{
      {"schema_version", report.schema_version},
      {"strategy", to_string(report.strategy)},
      {"fingerprint", nlohmann::json{{"seed", report.fingerprint.seed},
                                     {"config_hash", report.fingerprint.config_hash}}},
      {"rows", std::move(rows)},
      {"aggregates",
       nlohmann::json{{"avg_response_time_s", a.avg_response_time_s},
                      {"cumulative_bandwidth_cost", a.cumulative_bandwidth_cost.str()},
                      {"total_query_cost",
                       nlohmann::json{{"cpu", a.total_query_cost.cpu.str()},
                                      {"io", a.total_query_cost.io.str()},
                                      {"bandwidth", a.total_query_cost.bandwidth.str()},
                                      {"storage", a.total_query_cost.storage.str()},
                                      {"total", a.total_query_cost.total.str()}}},
                      {"total_gb_interprovider", a.total_gb_interprovider},
                      {"total_gb_interregion", a.total_gb_interregion},
                      {"final_replicas", a.final_replicas}}},
      {"replication_charges", report.replication_charges.str()},
      {"storage_charges", report.storage_charges.str()},
      {"cumulative_cost", report.cumulative_cost.str()},
  };
}

SimReport report_from_json(const nlohmann::json& doc) {
  SimReport report;
  report.schema_version = doc.value("schema_version", 1);
  std::string strategy = doc.value("strategy", "tcdrm");
  report.strategy = strategy == "noreplc" ? StrategyKind::noreplc : StrategyKind::tcdrm;
  if (!doc.contains("fingerprint")) throw MetricsError("report: missing fingerprint");
  report.fingerprint.seed = doc["fingerprint"].value("seed", 0ULL);
  report.fingerprint.config_hash = doc["fingerprint"].value("config_hash", 0ULL);
  if (!doc.contains("rows") || !doc["rows"].is_array())
    throw MetricsError("report: missing rows");
  for (const nlohmann::json& rj : doc["rows"]) {
    ReportRow r;
    r.tick = rj.at("tick").get<std::uint64_t>();
    r.query_id = rj.at("query_id").get<std::string>();
    r.cls = class_from_string(rj.at("class").get<std::string>());
    r.t_q_s = rj.at("t_q_s").get<double>();
    r.cost_cpu = money_field(rj, "cost_cpu");
    r.cost_io = money_field(rj, "cost_io");
    r.cost_bw = money_field(rj, "cost_bw");
    r.cost_storage = money_field(rj, "cost_storage");
    r.cost_total = money_field(rj, "cost_total");
    r.gb_intradc = rj.at("gb_intradc").get<double>();
    r.gb_interregion = rj.at("gb_interregion").get<double>();
    r.gb_interprovider = rj.at("gb_interprovider").get<double>();
    r.replicas = rj.at("replicas").get<std::size_t>();
    report.rows.push_back(std::move(r));
  }
  report.aggregates = compute_aggregates(report.rows);
  report.replication_charges = money_field(doc, "replication_charges");
  report.storage_charges = money_field(doc, "storage_charges");
  report.cumulative_cost = money_field(doc, "cumulative_cost");
  return report;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MetricsError("cannot write " + path);
  out << content;
  if (!out) throw MetricsError("write failed: " + path);
}

SimReport import_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MetricsError("cannot open report: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MetricsError("report parse error in " + path + ": " + e.what());
  }
  return report_from_json(doc);
}

}  // namespace tcdrm

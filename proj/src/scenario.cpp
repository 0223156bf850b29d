#include "tcdrm/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "tcdrm/default_scenario_embed.hpp"
#include "tcdrm/rng.hpp"

namespace tcdrm {

using nlohmann::json;

namespace {

// Stream selector mixed into the seed so size jitter does not perturb the
// workload stream.
constexpr std::uint64_t kSizeJitterStream = 0x73697A656A697474ULL;

[[noreturn]] void fail(std::vector<std::string> findings) {
  std::string msg = "invalid scenario";
  for (const auto& f : findings) msg += "\n  - " + f;
  throw ScenarioError(msg, std::move(findings));
}

[[noreturn]] void fail(const std::string& finding) { fail(std::vector<std::string>{finding}); }

const json* find(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& need(const json& j, const std::string& ctx, const char* key) {
  const json* v = find(j, key);
  if (!v) fail(ctx + "." + key + ": missing");
  return *v;
}

double need_num(const json& j, const std::string& ctx, const char* key) {
  const json& v = need(j, ctx, key);
  if (!v.is_number()) fail(ctx + "." + key + ": expected a number");
  return v.get<double>();
}

double opt_num(const json& j, const std::string& ctx, const char* key, double def) {
  const json* v = find(j, key);
  if (!v) return def;
  if (!v->is_number()) fail(ctx + "." + key + ": expected a number");
  return v->get<double>();
}

std::string need_str(const json& j, const std::string& ctx, const char* key) {
  const json& v = need(j, ctx, key);
  if (!v.is_string()) fail(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::string opt_str(const json& j, const std::string& ctx, const char* key, std::string def) {
  const json* v = find(j, key);
  if (!v) return def;
  if (!v->is_string()) fail(ctx + "." + key + ": expected a string");
  return v->get<std::string>();
}

Money money_value(const json& v, const std::string& where) {
  if (v.is_number()) return Money::from_dollars(v.get<double>());
  if (v.is_string()) {
    if (auto m = Money::parse(v.get<std::string>())) return *m;
  }
  fail(where + ": expected a monetary amount");
}

Money opt_money(const json& j, const std::string& ctx, const char* key, Money def) {
  const json* v = find(j, key);
  return v ? money_value(*v, ctx + "." + key) : def;
}

std::map<std::string, Money> money_map(const json& j, const std::string& ctx, const char* key) {
  const json& v = need(j, ctx, key);
  if (!v.is_object()) fail(ctx + "." + key + ": expected an object keyed by provider/region");
  std::map<std::string, Money> out;
  for (auto it = v.begin(); it != v.end(); ++it)
    out[it.key()] = money_value(it.value(), ctx + "." + key + "." + it.key());
  return out;
}

TierParams tier_params(const json& j, const std::string& ctx, const char* key, TierParams def) {
  const json* v = find(j, key);
  if (!v) return def;
  TierParams out;
  out.capacity_gbps = need_num(*v, ctx + "." + key, "capacity_gb_per_s");
  out.latency_s = need_num(*v, ctx + "." + key, "latency_s");
  return out;
}

std::vector<Provider> parse_topology(const json& doc, double default_mips) {
  const json& topo = need(doc, "scenario", "topology");
  const json& provs = need(topo, "topology", "providers");
  if (!provs.is_array()) fail("topology.providers: expected an array");
  std::vector<Provider> out;
  for (const json& pj : provs) {
    Provider p;
    p.id = need_str(pj, "topology.providers[]", "id");
    const json& regions = need(pj, "topology.providers." + p.id, "regions");
    if (!regions.is_array()) fail("topology.providers." + p.id + ".regions: expected an array");
    for (const json& rj : regions) {
      Region r;
      r.id = need_str(rj, "topology." + p.id + ".regions[]", "id");
      std::string rctx = "topology." + p.id + "." + r.id;
      if (const json* dcs = find(rj, "datacenters")) {
        if (!dcs->is_array()) fail(rctx + ".datacenters: expected an array");
        for (const json& dj : *dcs) {
          Datacenter dc;
          dc.id = need_str(dj, rctx + ".datacenters[]", "id");
          const json& vms = need(dj, rctx + "." + dc.id, "vms");
          if (!vms.is_array()) fail(rctx + "." + dc.id + ".vms: expected an array");
          for (const json& vj : vms) {
            VirtualMachine vm;
            vm.id = need_str(vj, rctx + "." + dc.id + ".vms[]", "id");
            vm.mips = opt_num(vj, rctx + "." + dc.id + "." + vm.id, "mips", default_mips);
            vm.location = Location{p.id, r.id, dc.id, vm.id};
            dc.vms.push_back(std::move(vm));
          }
          r.datacenters.push_back(std::move(dc));
        }
      } else {
        // Compact form: "vms": N expands to one datacenter dc1 with vm00..vmNN.
        int n = static_cast<int>(opt_num(rj, rctx, "vms", 0));
        if (n <= 0) fail(rctx + ": needs either \"datacenters\" or a positive \"vms\" count");
        double mips = opt_num(rj, rctx, "mips", default_mips);
        Datacenter dc;
        dc.id = "dc1";
        for (int k = 0; k < n; ++k) {
          char id[16];
          std::snprintf(id, sizeof id, "vm%02d", k);
          dc.vms.push_back(VirtualMachine{id, mips, Location{p.id, r.id, dc.id, id}});
        }
        r.datacenters.push_back(std::move(dc));
      }
      p.regions.push_back(std::move(r));
    }
    out.push_back(std::move(p));
  }
  return out;
}

SlaThresholds parse_threshold_block(const json* v, const std::string& ctx, SlaThresholds def) {
  if (!v) return def;
  SlaThresholds t;
  t.t_sla_s = opt_num(*v, ctx, "t_sla_s", def.t_sla_s);
  t.c_sla = opt_money(*v, ctx, "c_sla_per_query", def.c_sla);
  t.p_sla = opt_num(*v, ctx, "p_sla", def.p_sla);
  std::string mode = opt_str(*v, ctx, "popularity_mode",
                             def.popularity_mode == PopularityMode::count ? "count" : "rate");
  if (mode == "count")
    t.popularity_mode = PopularityMode::count;
  else if (mode == "rate")
    t.popularity_mode = PopularityMode::rate;
  else
    fail(ctx + ".popularity_mode: expected \"count\" or \"rate\"");
  t.delta_t_periods = static_cast<int>(opt_num(*v, ctx, "delta_t_periods", def.delta_t_periods));
  t.period_length_ticks =
      static_cast<int>(opt_num(*v, ctx, "period_length_ticks", def.period_length_ticks));
  return t;
}

std::vector<RelationSpec> parse_relations(const json& doc, const std::vector<Provider>& providers,
                                          std::uint64_t seed) {
  const json* rel = find(doc, "relations");
  std::vector<RelationSpec> out;
  if (rel && find(*rel, "items")) {
    const json& items = *find(*rel, "items");
    if (!items.is_array()) fail("relations.items: expected an array");
    for (const json& ij : items) {
      RelationSpec r;
      r.id = need_str(ij, "relations.items[]", "id");
      r.size_gb = need_num(ij, "relations." + r.id, "size_gb");
      const json& home = need(ij, "relations." + r.id, "home");
      r.home.provider = need_str(home, "relations." + r.id + ".home", "provider");
      r.home.region = need_str(home, "relations." + r.id + ".home", "region");
      r.home.datacenter = need_str(home, "relations." + r.id + ".home", "datacenter");
      r.home.vm = need_str(home, "relations." + r.id + ".home", "vm");
      out.push_back(std::move(r));
    }
    return out;
  }

  // Generator form: per_region relations per (provider, region), homes spread
  // round-robin over the region's VMs in id order.
  int per_region = 20;
  double size_gb = 0.45;
  double jitter = 0.0;
  if (rel) {
    per_region = static_cast<int>(opt_num(*rel, "relations", "per_region", per_region));
    size_gb = opt_num(*rel, "relations", "size_gb", size_gb);
    jitter = opt_num(*rel, "relations", "size_jitter", jitter);
  }
  if (per_region < 0) fail("relations.per_region: must be >= 0");
  if (jitter < 0 || jitter >= 1) fail("relations.size_jitter: must be in [0, 1)");
  SplitMix64 rng(seed ^ kSizeJitterStream);
  for (const Provider& p : providers) {
    for (const Region& reg : p.regions) {
      std::vector<const VirtualMachine*> vms;
      for (const Datacenter& dc : reg.datacenters)
        for (const VirtualMachine& vm : dc.vms) vms.push_back(&vm);
      std::sort(vms.begin(), vms.end(),
                [](auto* a, auto* b) { return a->id < b->id; });
      if (vms.empty()) continue;  // flagged later by validation
      for (int k = 0; k < per_region; ++k) {
        RelationSpec r;
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "%02d", k);
        r.id = "r-" + p.id + "-" + reg.id + "-" + suffix;
        double factor = jitter > 0 ? 1.0 + jitter * (2.0 * rng.unit() - 1.0) : 1.0;
        r.size_gb = size_gb * factor;
        r.home = vms[static_cast<std::size_t>(k) % vms.size()]->location;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

void check_money_map(const std::map<std::string, Money>& m, const std::string& ctx,
                     const std::set<std::string>& region_keys, std::vector<std::string>& findings) {
  for (const auto& [key, value] : m) {
    if (!region_keys.count(key)) findings.push_back(ctx + "." + key + ": unknown region");
    if (value < Money{}) findings.push_back(ctx + "." + key + ": negative price");
  }
  for (const auto& key : region_keys)
    if (!m.count(key)) findings.push_back(ctx + ": missing entry for " + key);
}

void check_thresholds(const SlaThresholds& t, const std::string& ctx,
                      std::vector<std::string>& findings) {
  if (!(t.t_sla_s > 0)) findings.push_back(ctx + ".t_sla_s: must be > 0");
  if (!(t.c_sla > Money{})) findings.push_back(ctx + ".c_sla_per_query: must be > 0");
  if (t.p_sla < 0) findings.push_back(ctx + ".p_sla: must be >= 0");
  if (t.delta_t_periods < 1) findings.push_back(ctx + ".delta_t_periods: must be >= 1");
  if (t.period_length_ticks < 1) findings.push_back(ctx + ".period_length_ticks: must be >= 1");
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) fail("scenario: expected a JSON object");
  Scenario s;
  s.seed = static_cast<std::uint64_t>(opt_num(doc, "scenario", "seed", 0));
  s.compute_intensity_mi_per_gb = opt_num(doc, "scenario", "compute_intensity_mi_per_gb", 10000);
  s.billing_period_ticks =
      static_cast<int>(opt_num(doc, "scenario", "billing_period_ticks", 1000));

  const json& topo = need(doc, "scenario", "topology");
  double default_mips = opt_num(topo, "topology", "default_vm_mips", 1000000);
  s.providers = parse_topology(doc, default_mips);

  const json& pricing = need(doc, "scenario", "pricing");
  s.pricing.cpu_per_million_mi = money_map(pricing, "pricing", "cpu_per_million_mi");
  s.pricing.io_per_gb = money_map(pricing, "pricing", "io_per_gb");
  s.pricing.intra_dc_bw_per_gb = money_map(pricing, "pricing", "intra_dc_bw_per_gb");
  s.pricing.inter_region_bw_per_gb =
      money_value(need(pricing, "pricing", "inter_region_bw_per_gb"), "pricing.inter_region_bw_per_gb");
  s.pricing.inter_provider_bw_per_gb =
      money_value(need(pricing, "pricing", "inter_provider_bw_per_gb"),
                  "pricing.inter_provider_bw_per_gb");
  s.pricing.storage_per_gb_period =
      opt_money(pricing, "pricing", "storage_per_gb_period", Money::from_dollars(0.02));

  const json* net = find(doc, "network");
  json empty = json::object();
  const json& netj = net ? *net : empty;
  s.network.intra_vm = tier_params(netj, "network", "intra_vm", TierParams{1e6, 0.0});
  s.network.intra_dc = tier_params(netj, "network", "intra_dc", TierParams{10.0, 0.001});
  s.network.inter_region = tier_params(netj, "network", "inter_region", TierParams{5.0, 0.05});
  s.network.inter_provider = tier_params(netj, "network", "inter_provider", TierParams{2.0, 0.1});

  SlaThresholds simple_def{0.2, Money::from_dollars(0.015), 200, PopularityMode::count, 5, 100};
  SlaThresholds complex_def{0.4, Money::from_dollars(0.040), 200, PopularityMode::count, 5, 100};
  const json* th = find(doc, "thresholds");
  s.thresholds.simple =
      parse_threshold_block(th ? find(*th, "simple") : nullptr, "thresholds.simple", simple_def);
  s.thresholds.complex =
      parse_threshold_block(th ? find(*th, "complex") : nullptr, "thresholds.complex", complex_def);

  if (const json* wl = find(doc, "workload")) {
    std::string mode = opt_str(*wl, "workload", "mode", "repeat");
    if (mode == "repeat")
      s.workload.mode = WorkloadMode::repeat;
    else if (mode == "random")
      s.workload.mode = WorkloadMode::random;
    else if (mode == "file")
      s.workload.mode = WorkloadMode::file;
    else
      fail("workload.mode: expected \"repeat\", \"random\", or \"file\"");
    s.workload.count = static_cast<int>(opt_num(*wl, "workload", "count", 1000));
    std::string cx = opt_str(*wl, "workload", "complexity", "complex");
    if (cx == "simple")
      s.workload.complexity = Complexity::simple;
    else if (cx == "complex")
      s.workload.complexity = Complexity::complex;
    else if (cx == "mixed")
      s.workload.complexity = Complexity::mixed;
    else
      fail("workload.complexity: expected \"simple\", \"complex\", or \"mixed\"");
    s.workload.file = opt_str(*wl, "workload", "file", "");
  }

  s.relations = parse_relations(doc, s.providers, s.seed);

  auto findings = validate_scenario(s);
  if (!findings.empty()) fail(std::move(findings));
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open scenario file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("scenario parse error in " + path + ": " + e.what());
  }
  return scenario_from_json(doc);
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> findings;
  if (s.providers.empty()) findings.push_back("topology.providers: empty topology");

  std::set<std::string> provider_ids;
  std::set<std::string> region_keys;
  for (const Provider& p : s.providers) {
    if (p.id.empty()) findings.push_back("topology.providers[].id: empty");
    if (!provider_ids.insert(p.id).second)
      findings.push_back("topology.providers." + p.id + ": duplicate provider id");
    if (p.regions.empty()) findings.push_back("topology." + p.id + ": provider has no regions");
    std::set<std::string> rids;
    for (const Region& r : p.regions) {
      std::string key = p.id + "/" + r.id;
      if (!rids.insert(r.id).second)
        findings.push_back("topology." + key + ": duplicate region id");
      region_keys.insert(key);
      std::size_t vm_count = 0;
      std::set<std::string> dcids, vmids;
      for (const Datacenter& dc : r.datacenters) {
        if (!dcids.insert(dc.id).second)
          findings.push_back("topology." + key + "." + dc.id + ": duplicate datacenter id");
        for (const VirtualMachine& vm : dc.vms) {
          ++vm_count;
          if (!vmids.insert(vm.id).second)
            findings.push_back("topology." + key + "." + vm.id + ": duplicate vm id");
          if (!(vm.mips > 0))
            findings.push_back("topology." + key + "." + vm.id + ".mips: must be > 0");
        }
      }
      if (vm_count == 0) findings.push_back("topology." + key + ": zero VMs");
    }
  }

  check_money_map(s.pricing.cpu_per_million_mi, "pricing.cpu_per_million_mi", region_keys, findings);
  check_money_map(s.pricing.io_per_gb, "pricing.io_per_gb", region_keys, findings);
  check_money_map(s.pricing.intra_dc_bw_per_gb, "pricing.intra_dc_bw_per_gb", region_keys,
                  findings);
  if (s.pricing.inter_region_bw_per_gb < Money{})
    findings.push_back("pricing.inter_region_bw_per_gb: negative price");
  if (s.pricing.inter_provider_bw_per_gb < Money{})
    findings.push_back("pricing.inter_provider_bw_per_gb: negative price");
  if (s.pricing.storage_per_gb_period < Money{})
    findings.push_back("pricing.storage_per_gb_period: negative price");

  auto check_tier = [&](const TierParams& t, const char* name) {
    if (!(t.capacity_gbps > 0))
      findings.push_back(std::string("network.") + name + ".capacity_gb_per_s: must be > 0");
    if (t.latency_s < 0)
      findings.push_back(std::string("network.") + name + ".latency_s: must be >= 0");
  };
  check_tier(s.network.intra_vm, "intra_vm");
  check_tier(s.network.intra_dc, "intra_dc");
  check_tier(s.network.inter_region, "inter_region");
  check_tier(s.network.inter_provider, "inter_provider");
  if (s.network.intra_vm.latency_s != 0)
    findings.push_back("network.intra_vm.latency_s: must be 0");

  check_thresholds(s.thresholds.simple, "thresholds.simple", findings);
  check_thresholds(s.thresholds.complex, "thresholds.complex", findings);

  if (s.workload.count < 1) findings.push_back("workload.count: must be >= 1");
  if (s.workload.mode == WorkloadMode::file && s.workload.file.empty())
    findings.push_back("workload.file: required when mode is \"file\"");
  if (!(s.compute_intensity_mi_per_gb > 0))
    findings.push_back("compute_intensity_mi_per_gb: must be > 0");
  if (s.billing_period_ticks < 1) findings.push_back("billing_period_ticks: must be >= 1");

  if (s.relations.empty()) findings.push_back("relations: empty catalog");
  TopologyIndex idx = TopologyIndex::build(s.providers);
  std::set<std::string> rel_ids;
  for (const RelationSpec& r : s.relations) {
    if (!rel_ids.insert(r.id).second)
      findings.push_back("relations." + r.id + ": duplicate relation id");
    if (!(r.size_gb > 0)) findings.push_back("relations." + r.id + ".size_gb: must be > 0");
    if (!idx.valid_location(r.home, /*require_vm=*/true))
      findings.push_back("relations." + r.id + ".home: dangling location " + r.home.str());
  }
  return findings;
}

nlohmann::json scenario_to_json(const Scenario& s) {
  json doc;
  doc["schema_version"] = 1;
  doc["seed"] = s.seed;
  doc["compute_intensity_mi_per_gb"] = s.compute_intensity_mi_per_gb;
  doc["billing_period_ticks"] = s.billing_period_ticks;

  json provs = json::array();
  for (const Provider& p : s.providers) {
    json regions = json::array();
    for (const Region& r : p.regions) {
      json dcs = json::array();
      for (const Datacenter& dc : r.datacenters) {
        json vms = json::array();
        for (const VirtualMachine& vm : dc.vms)
          vms.push_back(json{{"id", vm.id}, {"mips", vm.mips}});
        dcs.push_back(json{{"id", dc.id}, {"vms", std::move(vms)}});
      }
      regions.push_back(json{{"id", r.id}, {"datacenters", std::move(dcs)}});
    }
    provs.push_back(json{{"id", p.id}, {"regions", std::move(regions)}});
  }
  doc["topology"] = json{{"providers", std::move(provs)}};

  auto dump_map = [](const std::map<std::string, Money>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[k] = v.dollars();
    return out;
  };
  doc["pricing"] = json{
      {"cpu_per_million_mi", dump_map(s.pricing.cpu_per_million_mi)},
      {"io_per_gb", dump_map(s.pricing.io_per_gb)},
      {"intra_dc_bw_per_gb", dump_map(s.pricing.intra_dc_bw_per_gb)},
      {"inter_region_bw_per_gb", s.pricing.inter_region_bw_per_gb.dollars()},
      {"inter_provider_bw_per_gb", s.pricing.inter_provider_bw_per_gb.dollars()},
      {"storage_per_gb_period", s.pricing.storage_per_gb_period.dollars()},
  };

  auto tier = [](const TierParams& t) {
    return json{{"capacity_gb_per_s", t.capacity_gbps}, {"latency_s", t.latency_s}};
  };
  doc["network"] = json{{"intra_vm", tier(s.network.intra_vm)},
                        {"intra_dc", tier(s.network.intra_dc)},
                        {"inter_region", tier(s.network.inter_region)},
                        {"inter_provider", tier(s.network.inter_provider)}};

  auto th = [](const SlaThresholds& t) {
    return json{{"t_sla_s", t.t_sla_s},
                {"c_sla_per_query", t.c_sla.dollars()},
                {"p_sla", t.p_sla},
                {"popularity_mode", t.popularity_mode == PopularityMode::count ? "count" : "rate"},
                {"delta_t_periods", t.delta_t_periods},
                {"period_length_ticks", t.period_length_ticks}};
  };
  doc["thresholds"] = json{{"simple", th(s.thresholds.simple)},
                           {"complex", th(s.thresholds.complex)}};

  const char* mode = s.workload.mode == WorkloadMode::repeat   ? "repeat"
                     : s.workload.mode == WorkloadMode::random ? "random"
                                                               : "file";
  const char* cx = s.workload.complexity == Complexity::simple    ? "simple"
                   : s.workload.complexity == Complexity::complex ? "complex"
                                                                  : "mixed";
  json wl = json{{"mode", mode}, {"count", s.workload.count}, {"complexity", cx}};
  if (!s.workload.file.empty()) wl["file"] = s.workload.file;
  doc["workload"] = std::move(wl);

  json items = json::array();
  for (const RelationSpec& r : s.relations) {
    items.push_back(json{{"id", r.id},
                         {"size_gb", r.size_gb},
                         {"home",
                          json{{"provider", r.home.provider},
                               {"region", r.home.region},
                               {"datacenter", r.home.datacenter},
                               {"vm", r.home.vm}}}});
  }
  doc["relations"] = json{{"items", std::move(items)}};
  return doc;
}

std::uint64_t config_hash(const Scenario& s) {
  std::string text = scenario_to_json(s).dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

const std::string& default_scenario_text() {
  static const std::string text = detail::kDefaultScenarioJson;
  return text;
}

Scenario default_scenario() {
  return scenario_from_json(json::parse(default_scenario_text()));
}

}  // namespace tcdrm

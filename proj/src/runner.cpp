#include "pqcscope/runner.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pqcscope/analytics.hpp"
#include "pqcscope/anomaly.hpp"
#include "pqcscope/asn.hpp"
#include "pqcscope/registry.hpp"
#include "pqcscope/util.hpp"

namespace pqcscope {

namespace {

using nlohmann::json;

constexpr double kReferenceTlsPercent = 1.78;
constexpr std::string_view kReferenceSource =
    "Cloudflare, publicly reported TLS 1.3 hybrid-kex share";

std::int64_t now_micros() {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

bool has_glob_chars(std::string_view s) {
  return s.find_first_of("*?[") != std::string_view::npos;
}

bool is_log_name(const std::filesystem::path& p) {
  std::string name = p.filename().string();
  return name.ends_with(".log") || name.ends_with(".log.gz");
}

// Per-file partial state. merge() is fold-in-file-order so output never
// depends on worker scheduling.
struct Aggregate {
  SshStats ssh;
  TlsStats tls;
  RdpStats rdp;
  std::map<YearMonth, std::uint64_t> ssh_series;
  std::map<YearMonth, std::uint64_t> tls_series;
  AsnCounter asn;
  std::vector<KexEvent> kex_events;
  DeprecationScan deprecation;

  std::uint64_t files = 0;
  std::uint64_t lines = 0;
  std::uint64_t records = 0;
  std::uint64_t malformed = 0;
  std::uint64_t utf8_replacements = 0;
  std::uint64_t skipped_projection = 0;
  std::uint64_t date_filtered = 0;
  std::uint64_t generic_records = 0;
  std::uint64_t truncated_streams = 0;
  std::vector<std::string> malformed_samples;

  void merge(Aggregate&& other) {
    ssh.merge(other.ssh);
    tls.merge(other.tls);
    rdp.merge(other.rdp);
    for (const auto& [k, v] : other.ssh_series) ssh_series[k] += v;
    for (const auto& [k, v] : other.tls_series) tls_series[k] += v;
    asn.merge(other.asn);
    kex_events.insert(kex_events.end(),
                      std::make_move_iterator(other.kex_events.begin()),
                      std::make_move_iterator(other.kex_events.end()));
    deprecation.merge(other.deprecation);
    files += other.files;
    lines += other.lines;
    records += other.records;
    malformed += other.malformed;
    utf8_replacements += other.utf8_replacements;
    skipped_projection += other.skipped_projection;
    date_filtered += other.date_filtered;
    generic_records += other.generic_records;
    truncated_streams += other.truncated_streams;
    for (auto& s : other.malformed_samples) {
      if (malformed_samples.size() >= 10) break;
      malformed_samples.push_back(std::move(s));
    }
  }
};

enum class Route { Ssh, Tls, Rdp, Generic };

Route route_of(std::string_view path) {
  if (path == "ssh") return Route::Ssh;
  if (path == "ssl" || path == "tls") return Route::Tls;
  if (path == "rdp") return Route::Rdp;
  return Route::Generic;
}

std::optional<Route> protocol_filter(const RunConfig& config) {
  if (!config.protocol) return std::nullopt;
  Route r = route_of(*config.protocol);
  if (r == Route::Generic) {
    throw RunnerError(RunnerErrorKind::Usage,
                      "unknown protocol filter '" + *config.protocol +
                          "' (expected ssh, tls, or rdp)");
  }
  return r;
}

Aggregate process_file(const std::filesystem::path& file, const CryptoRegistry& reg,
                       const AsnTable* table, const RunConfig& config,
                       std::optional<Route> filter, ClassPredicate predicate,
                       bool collect_kex_events) {
  Aggregate agg;
  agg.files = 1;
  LogReader reader = LogReader::open(file);
  ParseStats proj_stats;
  RecordView rec;

  auto in_range = [&](TimestampMicros ts) {
    if (config.from_micros && ts < *config.from_micros) return false;
    if (config.to_micros && ts >= *config.to_micros) return false;
    return true;
  };

  while (reader.next(rec)) {
    Route route = route_of(reader.schema().path);
    if (filter && route != *filter) continue;
    switch (route) {
      case Route::Ssh: {
        auto o = project_ssh(rec, proj_stats);
        if (!o) break;
        if (!in_range(o->conn.ts)) {
          ++agg.date_filtered;
          break;
        }
        agg.ssh.add(*o, reg);
        agg.deprecation.add_ssh(*o, reg);
        if (o->kex_alg) {
          AlgorithmClass cls = reg.classify("ssh", "kex", *o->kex_alg);
          if (predicate_matches(predicate, cls)) {
            ++agg.ssh_series[YearMonth::of_micros(o->conn.ts)];
          }
          // Only the alert run keeps per-connection events; the aggregate
          // commands must stay flat in memory no matter how big the input is.
          if (collect_kex_events && !o->kex_alg->empty()) {
            agg.kex_events.push_back(kex_event_from(*o));
          }
          if (cls == AlgorithmClass::PostQuantumHybrid && table) {
            agg.asn.add(o->conn.orig_ip, *table);
          }
        }
        break;
      }
      case Route::Tls: {
        auto o = project_tls(rec, proj_stats);
        if (!o) break;
        if (!in_range(o->conn.ts)) {
          ++agg.date_filtered;
          break;
        }
        agg.tls.add(*o, reg);
        agg.deprecation.add_tls(*o, reg);
        if (o->curve_or_group) {
          AlgorithmClass cls = reg.classify("tls", "kex", *o->curve_or_group);
          if (predicate_matches(predicate, cls)) {
            ++agg.tls_series[YearMonth::of_micros(o->conn.ts)];
          }
          if (cls == AlgorithmClass::PostQuantumHybrid && table) {
            agg.asn.add(o->conn.orig_ip, *table);
          }
        }
        break;
      }
      case Route::Rdp: {
        auto o = project_rdp(rec, proj_stats);
        if (!o) break;
        if (!in_range(o->conn.ts)) {
          ++agg.date_filtered;
          break;
        }
        agg.rdp.add(*o, reg);
        agg.deprecation.add_rdp(*o, reg);
        break;
      }
      case Route::Generic:
        ++agg.generic_records;
        break;
    }
  }

  const ParseStats& rs = reader.stats();
  agg.lines = rs.lines_total;
  agg.records = rs.records;
  agg.malformed = rs.malformed;
  agg.utf8_replacements = rs.utf8_replacements + proj_stats.utf8_replacements;
  agg.skipped_projection = proj_stats.skipped_projection;
  agg.truncated_streams = rs.truncated ? 1 : 0;
  agg.malformed_samples = rs.malformed_samples;
  return agg;
}

struct Pipeline {
  CryptoRegistry registry_storage;
  const CryptoRegistry* registry = nullptr;
  std::optional<AsnTable> table;
  std::vector<std::filesystem::path> files;
  Aggregate total;
};

Pipeline run_pipeline(const RunConfig& config, bool need_asn_table,
                      bool collect_kex_events = false) {
  Pipeline p;
  if (config.workers < 1) {
    throw RunnerError(RunnerErrorKind::Usage, "worker count must be at least 1");
  }
  if (config.from_micros && config.to_micros && *config.from_micros > *config.to_micros) {
    throw RunnerError(RunnerErrorKind::Usage, "date range start is after its end");
  }
  auto predicate = predicate_from_string(config.series_predicate);
  if (!predicate) {
    throw RunnerError(RunnerErrorKind::Usage,
                      "unknown predicate '" + config.series_predicate + "'");
  }
  std::optional<Route> filter = protocol_filter(config);

  if (config.registry_path) {
    try {
      p.registry_storage = CryptoRegistry::load_file(*config.registry_path);
      p.registry = &p.registry_storage;
    } catch (const RegistryError& e) {
      throw RunnerError(RunnerErrorKind::Io, e.what());
    }
  } else {
    p.registry = &CryptoRegistry::builtin();
  }

  if (config.asn_table_path) {
    try {
      p.table = AsnTable::load_file(*config.asn_table_path);
    } catch (const std::exception& e) {
      throw RunnerError(RunnerErrorKind::Io, e.what());
    }
  } else if (need_asn_table) {
    throw RunnerError(RunnerErrorKind::Usage,
                      "an AS prefix table is required here; pass --asn-table FILE");
  }

  p.files = expand_inputs(config.inputs);
  if (p.files.empty()) {
    throw RunnerError(RunnerErrorKind::EmptyInput, "no input files matched");
  }

  size_t n = p.files.size();
  std::vector<Aggregate> partials(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (size_t i; (i = cursor.fetch_add(1)) < n;) {
      try {
        partials[i] = process_file(p.files[i], *p.registry,
                                   p.table ? &*p.table : nullptr, config, filter,
                                   *predicate, collect_kex_events);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  size_t threads = std::min<size_t>(static_cast<size_t>(config.workers), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const IngestError& e) {
      throw RunnerError(RunnerErrorKind::Io, p.files[i].string() + ": " + e.what());
    } catch (const std::exception& e) {
      throw RunnerError(RunnerErrorKind::Io, p.files[i].string() + ": " + e.what());
    }
  }
  for (size_t i = 0; i < n; ++i) p.total.merge(std::move(partials[i]));

  std::uint64_t lines = p.total.lines;
  if (lines > 0) {
    double ratio = static_cast<double>(p.total.malformed) / static_cast<double>(lines);
    if (ratio > config.malformed_limit) {
      std::ostringstream os;
      os << "malformed-line ratio " << ratio << " exceeds the limit "
         << config.malformed_limit << " (" << p.total.malformed << " of " << lines
         << " lines)";
      if (!p.total.malformed_samples.empty()) {
        os << "; first sample: " << p.total.malformed_samples.front();
      }
      throw RunnerError(RunnerErrorKind::DataQuality, os.str());
    }
  }
  return p;
}

json distribution_json(const std::optional<Distribution>& dist) {
  if (!dist) return nullptr;
  json items = json::array();
  for (const auto& it : dist->items) {
    items.push_back({{"identifier", it.identifier},
                     {"count", it.count},
                     {"percent", it.percent},
                     {"display", format_percent2(it.percent)}});
  }
  return {{"total", dist->total}, {"items", std::move(items)}};
}

json adoption_json(const std::optional<AdoptionStat>& a) {
  if (!a) return nullptr;
  return {{"pqc", a->pqc_count},
          {"total", a->total_count},
          {"ratio", a->ratio()},
          {"display", a->display()}};
}

json findings_json(const std::vector<DeprecationFinding>& findings,
                   std::string_view protocol) {
  json arr = json::array();
  for (const auto& f : findings) {
    if (f.protocol != protocol) continue;
    arr.push_back({{"identifier", f.identifier},
                   {"role", f.role},
                   {"class", std::string(to_string(f.cls))},
                   {"count", f.count},
                   {"sample_uids", f.sample_uids}});
  }
  return arr;
}

json report_json(const Pipeline& p, const RunConfig& config) {
  const Aggregate& t = p.total;
  auto findings = t.deprecation.findings();

  json doc;
  doc["schema"] = "pqcscope-report/1";
  doc["generated_at"] =
      config.stamp ? json(format_iso8601_micros(now_micros())) : json(nullptr);
  doc["inputs"] = {{"files", t.files},
                   {"lines", t.lines},
                   {"records", t.records},
                   {"malformed", t.malformed},
                   {"utf8_replacements", t.utf8_replacements},
                   {"skipped_projection", t.skipped_projection},
                   {"date_filtered", t.date_filtered},
                   {"generic_records", t.generic_records},
                   {"truncated_streams", t.truncated_streams}};

  json protocols;
  if (t.ssh.connections > 0) {
    json ssh;
    ssh["connections"] = t.ssh.connections;
    ssh["adoption"] = adoption_json(t.ssh.adoption());
    ssh["distributions"] = {{"kex", distribution_json(make_distribution(t.ssh.kex))},
                            {"cipher", distribution_json(make_distribution(t.ssh.cipher))},
                            {"mac", distribution_json(make_distribution(t.ssh.mac))},
                            {"hostkey", distribution_json(make_distribution(t.ssh.hostkey))}};
    ssh["deprecated_usage"] = findings_json(findings, "ssh");
    auto stale = stale_server_share(t.ssh.server_banners, VersionYearMap::builtin(),
                                    config.stale_cutoff_year);
    if (stale) {
      ssh["stale_servers"] = {{"share", stale->share},
                              {"display", format_percent2(stale->share * 100.0)},
                              {"stale", stale->stale},
                              {"resolvable", stale->resolvable},
                              {"unresolvable", stale->unresolvable},
                              {"cutoff_year", config.stale_cutoff_year}};
    } else {
      ssh["stale_servers"] = nullptr;
    }
    protocols["ssh"] = std::move(ssh);
  } else {
    protocols["ssh"] = nullptr;
  }

  if (t.tls.connections > 0) {
    json tls;
    tls["connections"] = t.tls.connections;
    tls["adoption"] = adoption_json(t.tls.adoption());
    tls["distributions"] = {{"suite", distribution_json(make_distribution(t.tls.suites))}};
    auto share = version_share(t.tls.versions);
    tls["version_share"] = share ? json(*share) : json(nullptr);
    if (t.tls.weak_suites > 0) {
      double pct = 100.0 * static_cast<double>(t.tls.weak_suites) /
                   static_cast<double>(t.tls.connections);
      json ids = json::array();
      auto weak_dist = make_distribution(t.tls.weak_suite_ids);
      if (weak_dist) {
        for (const auto& it : weak_dist->items) {
          ids.push_back({{"identifier", it.identifier}, {"count", it.count}});
        }
      }
      tls["weak_suites"] = {{"label", "weak"},
                            {"count", t.tls.weak_suites},
                            {"share_percent", pct},
                            {"display", format_percent2(pct)},
                            {"suites", std::move(ids)}};
    } else {
      tls["weak_suites"] = nullptr;
    }
    tls["deprecated_usage"] = findings_json(findings, "tls");
    protocols["tls"] = std::move(tls);
  } else {
    protocols["tls"] = nullptr;
  }

  if (t.rdp.connections > 0) {
    json rdp;
    rdp["connections"] = t.rdp.connections;
    rdp["distributions"] = {
        {"security_protocol", distribution_json(make_distribution(t.rdp.security_protocols))}};
    rdp["hybrid_ex"] = {{"count", t.rdp.hybrid_ex},
                        {"share", static_cast<double>(t.rdp.hybrid_ex) /
                                      static_cast<double>(t.rdp.connections)}};
    rdp["deprecated_usage"] = findings_json(findings, "rdp");
    protocols["rdp"] = std::move(rdp);
  } else {
    protocols["rdp"] = nullptr;
  }
  doc["protocols"] = std::move(protocols);

  if (p.table) {
    auto rows = top_asn_histogram(t.asn, config.asn_top);
    json top = json::array();
    for (const auto& r : rows) {
      double share = t.asn.total == 0
                         ? 0.0
                         : 100.0 * static_cast<double>(r.count) /
                               static_cast<double>(t.asn.total);
      top.push_back({{"asn", r.asn},
                     {"organization", r.org},
                     {"count", r.count},
                     {"share_percent", share}});
    }
    std::uint64_t unknown = 0;
    if (auto it = t.asn.counts.find(0); it != t.asn.counts.end()) unknown = it->second;
    doc["asn"] = {{"pqc_total", t.asn.total},
                  {"unknown_count", unknown},
                  {"top", std::move(top)}};
  } else {
    doc["asn"] = nullptr;
  }

  doc["reference"] = {{"tls_pqc_adoption_percent", kReferenceTlsPercent},
                      {"source", std::string(kReferenceSource)}};
  return doc;
}

void csv_distribution(std::ostringstream& os, std::string_view section,
                      const std::optional<Distribution>& dist) {
  if (!dist) return;
  for (const auto& it : dist->items) {
    os << section << ',' << csv_escape(it.identifier) << ',' << it.count << ','
       << format_percent2(it.percent) << '\n';
  }
}

std::string report_csv(const Pipeline& p, const RunConfig& config) {
  const Aggregate& t = p.total;
  std::ostringstream os;
  os << "section,identifier,count,percent\n";
  if (auto a = t.ssh.adoption()) {
    os << "ssh.adoption,post-quantum-hybrid," << a->pqc_count << ',' << a->display()
       << '\n';
  }
  csv_distribution(os, "ssh.kex", make_distribution(t.ssh.kex));
  csv_distribution(os, "ssh.cipher", make_distribution(t.ssh.cipher));
  csv_distribution(os, "ssh.mac", make_distribution(t.ssh.mac));
  csv_distribution(os, "ssh.hostkey", make_distribution(t.ssh.hostkey));
  if (auto stale = stale_server_share(t.ssh.server_banners, VersionYearMap::builtin(),
                                      config.stale_cutoff_year)) {
    os << "ssh.stale_servers,year<=" << config.stale_cutoff_year << ',' << stale->stale
       << ',' << format_percent2(stale->share * 100.0) << '\n';
  }
  if (auto a = t.tls.adoption()) {
    os << "tls.adoption,post-quantum-hybrid," << a->pqc_count << ',' << a->display()
       << '\n';
  }
  csv_distribution(os, "tls.suite", make_distribution(t.tls.suites));
  if (auto share = version_share(t.tls.versions)) {
    for (const auto& [ver, frac] : *share) {
      os << "tls.version," << csv_escape(ver) << ",," << format_percent2(frac * 100.0)
         << '\n';
    }
  }
  if (t.tls.weak_suites > 0 && t.tls.connections > 0) {
    os << "tls.weak," << "weak" << ',' << t.tls.weak_suites << ','
       << format_percent2(100.0 * static_cast<double>(t.tls.weak_suites) /
                          static_cast<double>(t.tls.connections))
       << '\n';
  }
  csv_distribution(os, "rdp.security_protocol", make_distribution(t.rdp.security_protocols));
  for (const auto& f : t.deprecation.findings()) {
    os << csv_escape(f.protocol) << ".deprecated." << csv_escape(f.role) << ','
       << csv_escape(f.identifier) << ',' << f.count << ",\n";
  }
  if (p.table) {
    for (const auto& r : top_asn_histogram(t.asn, config.asn_top)) {
      double share = t.asn.total == 0
                         ? 0.0
                         : 100.0 * static_cast<double>(r.count) /
                               static_cast<double>(t.asn.total);
      os << "asn.top," << csv_escape(r.org) << ',' << r.count << ','
         << format_percent2(share) << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::filesystem::path> out;
  for (const auto& input : inputs) {
    std::error_code ec;
    if (std::filesystem::is_directory(input, ec)) {
      std::vector<std::filesystem::path> found;
      for (auto it = std::filesystem::recursive_directory_iterator(
               input, std::filesystem::directory_options::skip_permission_denied, ec);
           it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (it->is_regular_file() && is_log_name(it->path())) found.push_back(it->path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
      continue;
    }
    if (has_glob_chars(input)) {
      ::glob_t g{};
      int rc = ::glob(input.c_str(), 0, nullptr, &g);
      if (rc == 0) {
        for (size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
      }
      ::globfree(&g);
      if (rc != 0 && rc != GLOB_NOMATCH) {
        throw RunnerError(RunnerErrorKind::Io, "glob failed for pattern: " + input);
      }
      continue;
    }
    if (!std::filesystem::is_regular_file(input, ec)) {
      throw RunnerError(RunnerErrorKind::Io, "cannot read input: " + input);
    }
    out.emplace_back(input);
  }
  return out;
}

std::string run_report(const RunConfig& config) {
  Pipeline p = run_pipeline(config, false);
  if (config.format == OutputFormat::Csv) return report_csv(p, config);
  return report_json(p, config).dump(2) + "\n";
}

std::string run_series(const RunConfig& config) {
  Pipeline p = run_pipeline(config, false);
  const auto& counts =
      (config.protocol && route_of(*config.protocol) == Route::Tls) ? p.total.tls_series
                                                                    : p.total.ssh_series;
  std::string label = config.series_predicate;
  auto series = monthly_series(counts, label);
  if (!series) {
    throw RunnerError(RunnerErrorKind::EmptyInput,
                      "no records matched the series predicate '" + label + "'");
  }
  auto fit = linear_trend(*series);

  if (config.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "month,count\n";
    for (const auto& [ym, count] : series->buckets) {
      os << ym.str() << ',' << count << '\n';
    }
    if (fit) {
      os << "# trend slope=" << fit->slope << " intercept=" << fit->intercept
         << " r_squared=" << fit->r_squared << '\n';
    }
    return os.str();
  }
  json doc;
  doc["schema"] = "pqcscope-series/1";
  doc["predicate"] = label;
  json buckets = json::array();
  for (const auto& [ym, count] : series->buckets) {
    buckets.push_back({{"month", ym.str()}, {"count", count}});
  }
  doc["buckets"] = std::move(buckets);
  doc["trend"] = fit ? json{{"slope", fit->slope},
                            {"intercept", fit->intercept},
                            {"r_squared", fit->r_squared}}
                     : json(nullptr);
  return doc.dump(2) + "\n";
}

std::string run_asn(const RunConfig& config) {
  Pipeline p = run_pipeline(config, true);
  const AsnCounter& counter = p.total.asn;
  if (counter.total == 0) {
    throw RunnerError(RunnerErrorKind::EmptyInput,
                      "no post-quantum connections to attribute");
  }
  auto rows = top_asn_histogram(counter, config.asn_top);
  if (config.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "asn,organization,count,share_percent\n";
    for (const auto& r : rows) {
      double share =
          100.0 * static_cast<double>(r.count) / static_cast<double>(counter.total);
      os << r.asn << ',' << csv_escape(r.org) << ',' << r.count << ','
         << format_percent2(share) << '\n';
    }
    return os.str();
  }
  json top = json::array();
  for (const auto& r : rows) {
    double share =
        100.0 * static_cast<double>(r.count) / static_cast<double>(counter.total);
    top.push_back({{"asn", r.asn},
                   {"organization", r.org},
                   {"count", r.count},
                   {"share_percent", share}});
  }
  std::uint64_t unknown = 0;
  if (auto it = counter.counts.find(0); it != counter.counts.end()) unknown = it->second;
  json doc;
  doc["schema"] = "pqcscope-asn/1";
  doc["pqc_total"] = counter.total;
  doc["unknown_count"] = unknown;
  doc["top"] = std::move(top);
  return doc.dump(2) + "\n";
}

std::string run_alerts(const RunConfig& config) {
  Pipeline p = run_pipeline(config, false, true);
  auto alerts = detect_downgrades(p.total.kex_events, *p.registry);
  auto findings = p.total.deprecation.findings();

  if (config.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "downgraded_ts,client,server,pqc_kex,fallback_kex,first_pqc_ts,"
          "client_banner_then,client_banner_now\n";
    for (const auto& a : alerts) {
      os << format_ts_decimal(a.downgraded_ts) << ',' << a.client_ip.str() << ','
         << a.server_ip.str() << ',' << csv_escape(a.pqc_kex) << ','
         << csv_escape(a.fallback_kex) << ',' << format_ts_decimal(a.first_pqc_ts) << ','
         << csv_escape(a.client_banner_then) << ',' << csv_escape(a.client_banner_now)
         << '\n';
    }
    return os.str();
  }
  json downgrades = json::array();
  for (const auto& a : alerts) {
    downgrades.push_back({{"client", a.client_ip.str()},
                          {"server", a.server_ip.str()},
                          {"first_pqc_ts", format_ts_decimal(a.first_pqc_ts)},
                          {"downgraded_ts", format_ts_decimal(a.downgraded_ts)},
                          {"pqc_kex", a.pqc_kex},
                          {"fallback_kex", a.fallback_kex},
                          {"client_banner_then", a.client_banner_then},
                          {"client_banner_now", a.client_banner_now}});
  }
  json deprecated = json::array();
  for (const auto& f : findings) {
    deprecated.push_back({{"identifier", f.identifier},
                          {"protocol", f.protocol},
                          {"role", f.role},
                          {"class", std::string(to_string(f.cls))},
                          {"count", f.count},
                          {"sample_uids", f.sample_uids}});
  }
  json doc;
  doc["schema"] = "pqcscope-alerts/1";
  doc["downgrades"] = std::move(downgrades);
  doc["deprecated"] = std::move(deprecated);
  return doc.dump(2) + "\n";
}

}  // namespace pqcscope

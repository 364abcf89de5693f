#include "pqcscope/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "pqcscope/util.hpp"

namespace pqcscope {

std::string AdoptionStat::display() const { return format_rate_percent(ratio()); }

std::optional<Distribution> make_distribution(const CountMap& counts) {
  if (counts.empty()) return std::nullopt;
  Distribution d;
  d.items.reserve(counts.size());
  for (const auto& [id, n] : counts) {
    d.total += n;
    d.items.push_back(DistributionItem{id, n, 0.0});
  }
  for (auto& item : d.items) {
    item.percent = 100.0 * static_cast<double>(item.count) / static_cast<double>(d.total);
  }
  std::sort(d.items.begin(), d.items.end(), [](const auto& a, const auto& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.identifier < b.identifier;
  });
  return d;
}

YearMonth YearMonth::of_micros(TimestampMicros ts) {
  std::int64_t days = ts / 86'400'000'000LL;
  if (ts < 0 && ts % 86'400'000'000LL != 0) --days;
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  return YearMonth{y, m};
}

YearMonth YearMonth::next() const {
  if (month == 12) return YearMonth{year + 1, 1};
  return YearMonth{year, month + 1};
}

std::string YearMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u", year, month);
  return buf;
}

std::optional<TimeSeries> monthly_series(const std::map<YearMonth, std::uint64_t>& counts,
                                         std::string predicate_label) {
  if (counts.empty()) return std::nullopt;
  TimeSeries s;
  s.predicate_label = std::move(predicate_label);
  YearMonth cur = counts.begin()->first;
  const YearMonth last = counts.rbegin()->first;
  while (true) {
    auto it = counts.find(cur);
    s.buckets.emplace_back(cur, it == counts.end() ? 0 : it->second);
    if (cur == last) break;
    cur = cur.next();
  }
  return s;
}

std::optional<TrendFit> linear_trend(const TimeSeries& series) {
  const size_t n = series.buckets.size();
  if (n < 2) return std::nullopt;
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += static_cast<double>(i);
    sy += static_cast<double>(series.buckets[i].second);
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - mx;
    sxx += dx * dx;
    sxy += dx * (static_cast<double>(series.buckets[i].second) - my);
  }
  TrendFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < n; ++i) {
    const double y = static_cast<double>(series.buckets[i].second);
    const double pred = fit.intercept + fit.slope * static_cast<double>(i);
    ss_res += (y - pred) * (y - pred);
    ss_tot += (y - my) * (y - my);
  }
  // A constant series is fit perfectly by its own mean.
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

std::optional<std::map<std::string, double>> version_share(const CountMap& version_counts) {
  std::uint64_t total = 0;
  for (const auto& [_, n] : version_counts) total += n;
  if (total == 0) return std::nullopt;
  std::map<std::string, double> shares;
  for (const auto& [v, n] : version_counts) {
    shares[v] = static_cast<double>(n) / static_cast<double>(total);
  }
  return shares;
}

std::optional<StaleShare> stale_server_share(const CountMap& server_banner_counts,
                                             const VersionYearMap& years, int cutoff_year) {
  StaleShare s;
  for (const auto& [banner, n] : server_banner_counts) {
    auto year = years.release_year(banner);
    if (!year) {
      s.unresolvable += n;
      continue;
    }
    s.resolvable += n;
    if (*year <= cutoff_year) s.stale += n;
  }
  if (s.resolvable == 0) return std::nullopt;
  s.share = static_cast<double>(s.stale) / static_cast<double>(s.resolvable);
  return s;
}

std::optional<ClassPredicate> predicate_from_string(std::string_view s) {
  if (s == "pqc" || s == "post-quantum-hybrid") return ClassPredicate::PostQuantumHybrid;
  if (s == "classical") return ClassPredicate::Classical;
  if (s == "deprecated") return ClassPredicate::Deprecated;
  if (s == "insecure") return ClassPredicate::Insecure;
  if (s == "any" || s == "all") return ClassPredicate::Any;
  return std::nullopt;
}

std::string_view to_string(ClassPredicate p) {
  switch (p) {
    case ClassPredicate::PostQuantumHybrid: return "pqc";
    case ClassPredicate::Classical: return "classical";
    case ClassPredicate::Deprecated: return "deprecated";
    case ClassPredicate::Insecure: return "insecure";
    case ClassPredicate::Any: break;
  }
  return "any";
}

bool predicate_matches(ClassPredicate p, AlgorithmClass c) {
  switch (p) {
    case ClassPredicate::PostQuantumHybrid: return c == AlgorithmClass::PostQuantumHybrid;
    case ClassPredicate::Classical: return c == AlgorithmClass::Classical;
    case ClassPredicate::Deprecated: return c == AlgorithmClass::Deprecated;
    case ClassPredicate::Insecure: return c == AlgorithmClass::Insecure;
    case ClassPredicate::Any: return true;
  }
  return false;
}

namespace {

void merge_counts(CountMap& into, const CountMap& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

void merge_months(std::map<YearMonth, std::uint64_t>& into,
                  const std::map<YearMonth, std::uint64_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

}  // namespace

void SshStats::add(const SshObservation& o, const CryptoRegistry& reg) {
  ++connections;
  if (!o.server_banner.empty()) ++server_banners[o.server_banner];
  if (!o.has_algorithms()) return;
  if (o.cipher_alg) ++cipher[*o.cipher_alg];
  if (o.mac_alg) ++mac[*o.mac_alg];
  if (o.host_key_alg) ++hostkey[*o.host_key_alg];
  if (o.kex_alg) {
    ++kex[*o.kex_alg];
    if (reg.classify("ssh", "kex", *o.kex_alg) == AlgorithmClass::PostQuantumHybrid) {
      ++pqc_kex;
      ++pqc_months[YearMonth::of_micros(o.conn.ts)];
    }
  }
}

void SshStats::merge(const SshStats& other) {
  connections += other.connections;
  pqc_kex += other.pqc_kex;
  merge_counts(cipher, other.cipher);
  merge_counts(mac, other.mac);
  merge_counts(hostkey, other.hostkey);
  merge_counts(kex, other.kex);
  merge_counts(server_banners, other.server_banners);
  merge_months(pqc_months, other.pqc_months);
}

std::optional<AdoptionStat> SshStats::adoption() const {
  if (connections == 0) return std::nullopt;
  return AdoptionStat{pqc_kex, connections};
}

void TlsStats::add(const TlsObservation& o, const CryptoRegistry& reg) {
  ++connections;
  if (o.tls_version) ++versions[*o.tls_version];
  if (o.cipher_suite) {
    auto canonical = reg.canonical_identifier("tls", "suite", *o.cipher_suite);
    std::string id = canonical ? std::string(*canonical) : *o.cipher_suite;
    auto cls = reg.classify("tls", "suite", id);
    if (cls == AlgorithmClass::Deprecated || cls == AlgorithmClass::Insecure) {
      ++weak_suites;
      ++weak_suite_ids[id];
    }
    ++suites[std::move(id)];
  }
  if (o.curve_or_group) {
    if (reg.classify("tls", "kex", *o.curve_or_group) == AlgorithmClass::PostQuantumHybrid) {
      ++pqc_group;
      ++pqc_months[YearMonth::of_micros(o.conn.ts)];
    }
  }
}

void TlsStats::merge(const TlsStats& other) {
  connections += other.connections;
  pqc_group += other.pqc_group;
  weak_suites += other.weak_suites;
  merge_counts(suites, other.suites);
  merge_counts(versions, other.versions);
  merge_counts(weak_suite_ids, other.weak_suite_ids);
  merge_months(pqc_months, other.pqc_months);
}

std::optional<AdoptionStat> TlsStats::adoption() const {
  if (connections == 0) return std::nullopt;
  return AdoptionStat{pqc_group, connections};
}

void RdpStats::add(const RdpObservation& o, const CryptoRegistry& reg) {
  ++connections;
  if (!o.security_protocol) return;
  auto canonical = reg.canonical_identifier("rdp", "security_protocol", *o.security_protocol);
  std::string id = canonical ? std::string(*canonical) : *o.security_protocol;
  if (id == "HYBRID-EX") ++hybrid_ex;
  ++security_protocols[std::move(id)];
}

void RdpStats::merge(const RdpStats& other) {
  connections += other.connections;
  hybrid_ex += other.hybrid_ex;
  merge_counts(security_protocols, other.security_protocols);
}

}  // namespace pqcscope

#include "pqcscope/anomaly.hpp"

#include <algorithm>

namespace pqcscope {

KexEvent kex_event_from(const SshObservation& o) {
  KexEvent e;
  e.ts = o.conn.ts;
  e.client_ip = o.conn.orig_ip;
  e.server_ip = o.conn.resp_ip;
  e.kex = o.kex_alg.value_or("");
  e.client_banner = o.client_banner;
  e.uid = o.conn.uid;
  return e;
}

namespace {

// <0: a strictly older than b (the only comparison that suppresses).
// 0: unchanged. >0: newer. Banners that differ but don't parse as the same
// software's versions are "changed, not comparable" and treated as >= 0.
int banner_order(const std::string& now, const std::string& then) {
  if (now == then) return 0;
  auto a = parse_ssh_banner(now);
  auto b = parse_ssh_banner(then);
  if (!a || !b || a->software != b->software) return 1;
  return compare_dotted_versions(a->version, b->version);
}

}  // namespace

std::vector<DowngradeAlert> detect_downgrades(std::vector<KexEvent> events,
                                              const CryptoRegistry& reg,
                                              std::chrono::seconds window) {
  // Group per pair, then order each pair's history by time (uid tiebreak for
  // a deterministic order on equal timestamps).
  std::map<std::pair<std::string, std::string>, std::vector<KexEvent>> pairs;
  for (auto& e : events) {
    if (e.kex.empty()) continue;
    pairs[{e.client_ip.str(), e.server_ip.str()}].push_back(std::move(e));
  }

  const std::int64_t window_us = static_cast<std::int64_t>(window.count()) * 1'000'000;
  std::vector<DowngradeAlert> alerts;

  for (auto& [key, history] : pairs) {
    std::sort(history.begin(), history.end(), [](const KexEvent& a, const KexEvent& b) {
      if (a.ts != b.ts) return a.ts < b.ts;
      return a.uid < b.uid;
    });
    const KexEvent* last_pqc = nullptr;
    bool in_episode = false;
    for (const KexEvent& e : history) {
      bool is_pqc =
          reg.classify("ssh", "kex", e.kex) == AlgorithmClass::PostQuantumHybrid;
      if (is_pqc) {
        last_pqc = &e;
        in_episode = false;  // capability re-proven; future fallbacks alert anew
        continue;
      }
      if (!last_pqc) continue;
      if (e.ts <= last_pqc->ts || e.ts - last_pqc->ts > window_us) continue;
      if (banner_order(e.client_banner, last_pqc->client_banner) < 0) continue;
      if (in_episode) continue;
      DowngradeAlert a;
      a.client_ip = e.client_ip;
      a.server_ip = e.server_ip;
      a.first_pqc_ts = last_pqc->ts;
      a.downgraded_ts = e.ts;
      a.pqc_kex = last_pqc->kex;
      a.fallback_kex = e.kex;
      a.client_banner_then = last_pqc->client_banner;
      a.client_banner_now = e.client_banner;
      alerts.push_back(std::move(a));
      in_episode = true;
    }
  }

  std::sort(alerts.begin(), alerts.end(), [](const DowngradeAlert& a, const DowngradeAlert& b) {
    if (a.downgraded_ts != b.downgraded_ts) return a.downgraded_ts < b.downgraded_ts;
    auto ka = std::make_pair(a.client_ip.str(), a.server_ip.str());
    auto kb = std::make_pair(b.client_ip.str(), b.server_ip.str());
    return ka < kb;
  });
  return alerts;
}

void DeprecationScan::note(std::string_view protocol, std::string_view role,
                           std::string_view identifier, AlgorithmClass cls,
                           std::string_view uid) {
  if (cls != AlgorithmClass::Deprecated && cls != AlgorithmClass::Insecure) return;
  auto key = std::make_tuple(std::string(protocol), std::string(role), std::string(identifier));
  Bucket& b = buckets_[std::move(key)];
  b.cls = cls;
  ++b.count;
  if (b.sample_uids.size() < 10) b.sample_uids.emplace_back(uid);
}

void DeprecationScan::add_ssh(const SshObservation& o, const CryptoRegistry& reg) {
  const auto& uid = o.conn.uid;
  if (o.kex_alg) note("ssh", "kex", *o.kex_alg, reg.classify("ssh", "kex", *o.kex_alg), uid);
  if (o.cipher_alg) {
    note("ssh", "cipher", *o.cipher_alg, reg.classify("ssh", "cipher", *o.cipher_alg), uid);
  }
  if (o.mac_alg) note("ssh", "mac", *o.mac_alg, reg.classify("ssh", "mac", *o.mac_alg), uid);
  if (o.host_key_alg) {
    note("ssh", "hostkey", *o.host_key_alg, reg.classify("ssh", "hostkey", *o.host_key_alg),
         uid);
  }
}

void DeprecationScan::add_tls(const TlsObservation& o, const CryptoRegistry& reg) {
  if (!o.cipher_suite) return;
  auto canonical = reg.canonical_identifier("tls", "suite", *o.cipher_suite);
  std::string id = canonical ? std::string(*canonical) : *o.cipher_suite;
  note("tls", "suite", id, reg.classify("tls", "suite", id), o.conn.uid);
}

void DeprecationScan::add_rdp(const RdpObservation& o, const CryptoRegistry& reg) {
  if (!o.security_protocol) return;
  auto canonical = reg.canonical_identifier("rdp", "security_protocol", *o.security_protocol);
  std::string id = canonical ? std::string(*canonical) : *o.security_protocol;
  note("rdp", "security_protocol", id, reg.classify("rdp", "security_protocol", id),
       o.conn.uid);
}

void DeprecationScan::merge(const DeprecationScan& other) {
  for (const auto& [key, from] : other.buckets_) {
    Bucket& into = buckets_[key];
    into.cls = from.cls;
    into.count += from.count;
    for (const auto& uid : from.sample_uids) {
      if (into.sample_uids.size() >= 10) break;
      into.sample_uids.push_back(uid);
    }
  }
}

std::vector<DeprecationFinding> DeprecationScan::findings() const {
  std::vector<DeprecationFinding> out;
  out.reserve(buckets_.size());
  for (const auto& [key, b] : buckets_) {
    DeprecationFinding f;
    f.protocol = std::get<0>(key);
    f.role = std::get<1>(key);
    f.identifier = std::get<2>(key);
    f.cls = b.cls;
    f.count = b.count;
    f.sample_uids = b.sample_uids;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const DeprecationFinding& a, const DeprecationFinding& b) {
    if (a.protocol != b.protocol) return a.protocol < b.protocol;
    if (a.role != b.role) return a.role < b.role;
    if (a.count != b.count) return a.count > b.count;
    return a.identifier < b.identifier;
  });
  return out;
}

}  // namespace pqcscope

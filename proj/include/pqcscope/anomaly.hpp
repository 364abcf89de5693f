#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pqcscope/analytics.hpp"
#include "pqcscope/registry.hpp"
#include "pqcscope/zeek.hpp"

namespace pqcscope {

// One key-exchange negotiation, reduced to what the downgrade detector needs.
struct KexEvent {
  TimestampMicros ts = 0;
  IpAddress client_ip;
  IpAddress server_ip;
  std::string kex;
  std::string client_banner;
  std::string uid;
};

KexEvent kex_event_from(const SshObservation& o);

struct DowngradeAlert {
  IpAddress client_ip;
  IpAddress server_ip;
  TimestampMicros first_pqc_ts = 0;
  TimestampMicros downgraded_ts = 0;
  std::string pqc_kex;
  std::string fallback_kex;  // never classifies post-quantum
  std::string client_banner_then;
  std::string client_banner_now;
};

inline constexpr std::chrono::seconds kDefaultDowngradeWindow =
    std::chrono::seconds(30LL * 86400);

// Heuristic: a (client, server) pair that negotiated a post-quantum exchange
// and later, inside the window, negotiated a non-post-quantum one while the
// client banner stayed the same or moved to a higher version. A strictly
// older banner reads as a different/rolled-back client and suppresses the
// alert. One alert per contiguous episode of fallbacks; a fresh post-quantum
// negotiation arms the detector again. Events may arrive in any order and in
// any file partitioning; detection happens after a per-pair time sort, so
// interleaving unrelated pairs or splitting input cannot change the result.
std::vector<DowngradeAlert> detect_downgrades(
    std::vector<KexEvent> events, const CryptoRegistry& reg,
    std::chrono::seconds window = kDefaultDowngradeWindow);

struct DeprecationFinding {
  std::string identifier;
  std::string protocol;
  std::string role;
  AlgorithmClass cls = AlgorithmClass::Deprecated;
  std::uint64_t count = 0;
  std::vector<std::string> sample_uids;  // at most 10, first seen
};

// Accumulates deprecated/insecure usage per (identifier, protocol, role).
// Same merge laws as the analytics aggregates.
class DeprecationScan {
 public:
  void add_ssh(const SshObservation& o, const CryptoRegistry& reg);
  void add_tls(const TlsObservation& o, const CryptoRegistry& reg);
  void add_rdp(const RdpObservation& o, const CryptoRegistry& reg);
  void merge(const DeprecationScan& other);

  // Sorted by protocol, role, then descending count (ties on identifier).
  std::vector<DeprecationFinding> findings() const;

 private:
  struct Bucket {
    AlgorithmClass cls = AlgorithmClass::Deprecated;
    std::uint64_t count = 0;
    std::vector<std::string> sample_uids;
  };
  void note(std::string_view protocol, std::string_view role, std::string_view identifier,
            AlgorithmClass cls, std::string_view uid);
  std::map<std::tuple<std::string, std::string, std::string>, Bucket> buckets_;
};

}  // namespace pqcscope

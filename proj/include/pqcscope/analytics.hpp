#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pqcscope/registry.hpp"
#include "pqcscope/zeek.hpp"

namespace pqcscope {

struct AdoptionStat {
  std::uint64_t pqc_count = 0;
  std::uint64_t total_count = 0;  // always > 0; empty input is a distinct outcome

  // Derived, never stored separately.
  double ratio() const { return static_cast<double>(pqc_count) / static_cast<double>(total_count); }
  std::string display() const;
};

struct DistributionItem {
  std::string identifier;
  std::uint64_t count = 0;
  double percent = 0.0;  // unrounded; rendering rounds to two decimals
};

struct Distribution {
  std::uint64_t total = 0;
  // Descending count; ties break lexicographically on identifier.
  std::vector<DistributionItem> items;
};

using CountMap = std::unordered_map<std::string, std::uint64_t>;

std::optional<Distribution> make_distribution(const CountMap& counts);

struct YearMonth {
  int year = 0;
  unsigned month = 1;  // 1..12

  static YearMonth of_micros(TimestampMicros ts);
  YearMonth next() const;
  std::string str() const;  // "2023-01"
  auto operator<=>(const YearMonth&) const = default;
};

struct TimeSeries {
  std::string predicate_label;
  // Ascending months, interior gaps zero-filled.
  std::vector<std::pair<YearMonth, std::uint64_t>> buckets;
};

std::optional<TimeSeries> monthly_series(const std::map<YearMonth, std::uint64_t>& counts,
                                         std::string predicate_label);

struct TrendFit {
  double slope = 0.0;      // per month step
  double intercept = 0.0;  // at the first bucket
  double r_squared = 0.0;
};

// Ordinary least squares over (bucket index, count). Needs >= 2 buckets.
std::optional<TrendFit> linear_trend(const TimeSeries& series);

// Fractions over records whose version field is set; sums to 1 within 1e-12.
std::optional<std::map<std::string, double>> version_share(const CountMap& version_counts);

struct StaleShare {
  double share = 0.0;  // stale / resolvable
  std::uint64_t resolvable = 0;
  std::uint64_t stale = 0;         // release year <= cutoff
  std::uint64_t unresolvable = 0;  // excluded from the denominator
};

std::optional<StaleShare> stale_server_share(const CountMap& server_banner_counts,
                                             const VersionYearMap& years, int cutoff_year);

// Classification filter used by series and alert predicates.
enum class ClassPredicate { PostQuantumHybrid, Classical, Deprecated, Insecure, Any };
std::optional<ClassPredicate> predicate_from_string(std::string_view s);
std::string_view to_string(ClassPredicate p);
bool predicate_matches(ClassPredicate p, AlgorithmClass c);

// Per-protocol running aggregates. Adding observations is order-independent
// and merge is associative/commutative with the default-constructed identity,
// so files can be processed on any thread and folded in any grouping.

struct SshStats {
  std::uint64_t connections = 0;
  std::uint64_t pqc_kex = 0;
  CountMap cipher, mac, hostkey, kex;
  CountMap server_banners;
  std::map<YearMonth, std::uint64_t> pqc_months;

  void add(const SshObservation& o, const CryptoRegistry& reg);
  void merge(const SshStats& other);
  std::optional<AdoptionStat> adoption() const;
};

struct TlsStats {
  std::uint64_t connections = 0;
  std::uint64_t pqc_group = 0;  // curve/group column classifying post-quantum
  std::uint64_t weak_suites = 0;
  CountMap suites;  // canonicalized identifiers
  CountMap versions;
  CountMap weak_suite_ids;
  std::map<YearMonth, std::uint64_t> pqc_months;

  void add(const TlsObservation& o, const CryptoRegistry& reg);
  void merge(const TlsStats& other);
  std::optional<AdoptionStat> adoption() const;
};

struct RdpStats {
  std::uint64_t connections = 0;
  std::uint64_t hybrid_ex = 0;
  CountMap security_protocols;  // canonicalized

  void add(const RdpObservation& o, const CryptoRegistry& reg);
  void merge(const RdpStats& other);
};

}  // namespace pqcscope

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqcscope/ip.hpp"

namespace pqcscope {

struct AsEntry {
  IpAddress prefix;
  int prefix_len = 0;
  std::uint32_t asn = 0;
  std::string org;
};

// Longest-prefix-match table over IPv4 and IPv6 CIDRs, loaded from
// "CIDR,ASN,org-name" lines ('#' comments allowed; the org name runs to end
// of line, so embedded commas need no quoting).
class AsnTable {
 public:
  static AsnTable load_file(const std::filesystem::path& path);
  static AsnTable load_text(std::string_view text, std::string_view origin = "<memory>");

  // Deepest covering prefix, or nullopt when nothing matches. A 0.0.0.0/0 or
  // ::/0 row acts as a family-wide fallback.
  std::optional<AsEntry> lookup(const IpAddress& addr) const;

  const std::vector<AsEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  struct Node {
    std::int32_t child[2] = {-1, -1};
    std::int32_t entry = -1;
  };
  void insert(size_t entry_idx);
  std::optional<AsEntry> walk(const std::vector<Node>& trie, const IpAddress& addr) const;

  std::vector<AsEntry> entries_;
  std::vector<Node> trie4_{Node{}};
  std::vector<Node> trie6_{Node{}};
};

// Per-AS counters for the attribution histogram. ASN 0 is the reserved
// "unknown" bucket for unattributed addresses.
struct AsnCounter {
  std::map<std::uint32_t, std::uint64_t> counts;
  std::map<std::uint32_t, std::string> orgs;
  std::uint64_t total = 0;

  void add(const IpAddress& addr, const AsnTable& table);
  void merge(const AsnCounter& other);
};

struct AsnHistogramRow {
  std::uint32_t asn = 0;
  std::string org;
  std::uint64_t count = 0;
};

// Descending count; ties ascending ASN. n = 0 yields an empty histogram.
std::vector<AsnHistogramRow> top_asn_histogram(const AsnCounter& counter, size_t n);

}  // namespace pqcscope

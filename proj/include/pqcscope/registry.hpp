#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pqcscope {

enum class AlgorithmClass { PostQuantumHybrid, Classical, Deprecated, Insecure, Unknown };

std::string_view to_string(AlgorithmClass c);
std::optional<AlgorithmClass> algorithm_class_from_string(std::string_view s);

struct RegistryEntry {
  std::string identifier;  // canonical form, e.g. TLS dash names
  std::string protocol;    // ssh | tls | rdp
  std::string role;        // kex | cipher | mac | hostkey | suite | security_protocol
  AlgorithmClass cls = AlgorithmClass::Unknown;
  std::string alias;       // optional alternate lookup key (e.g. IANA underscore form)

  friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

struct ProtocolStatus {
  std::string protocol;
  // Absent means no production post-quantum option is known for the protocol;
  // unknown protocols also report absent rather than a guessed tri-state.
  std::optional<std::string> pqc_implementation;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable after load; safe for unlimited concurrent readers.
class CryptoRegistry {
 public:
  static CryptoRegistry load_file(const std::filesystem::path& path);
  static CryptoRegistry load_text(std::string_view text, std::string_view origin = "<memory>");
  // The compiled-in default table (measurement-campaign algorithm set plus
  // protocol survey rows). Classification data lives in the table, not in code.
  static const CryptoRegistry& builtin();

  // Total function: anything not in the registry is Unknown. Matching is
  // exact and case-sensitive on identifier or alias.
  AlgorithmClass classify(std::string_view protocol, std::string_view role,
                          std::string_view identifier) const noexcept;

  // Canonical spelling for a known identifier (resolves aliases), or nullopt.
  std::optional<std::string_view> canonical_identifier(std::string_view protocol,
                                                       std::string_view role,
                                                       std::string_view identifier) const;

  ProtocolStatus protocol_status(std::string_view protocol) const;

  const std::vector<RegistryEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  // Canonical text form; load_text(serialize()) reproduces the registry.
  std::string serialize() const;

  // Fast-path handle for per-record classification: resolves (protocol, role)
  // once, then classifies identifiers without key rebuilding.
  class RoleView {
   public:
    AlgorithmClass classify(std::string_view identifier) const noexcept;
    std::optional<std::string_view> canonical(std::string_view identifier) const;

   private:
    friend class CryptoRegistry;
    const CryptoRegistry* reg_ = nullptr;
    std::string key_prefix_;
  };
  RoleView role_view(std::string_view protocol, std::string_view role) const;

  friend bool operator==(const CryptoRegistry& a, const CryptoRegistry& b) {
    return a.entries_ == b.entries_ && a.status_rows_ == b.status_rows_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  using LookupMap =
      std::unordered_map<std::string, size_t, StringHash, std::equal_to<>>;

  std::vector<RegistryEntry> entries_;
  LookupMap by_key_;  // "protocol\x1Frole\x1Fidentifier-or-alias" -> entry index
  // protocol -> descriptor ("-" encodes absent in the file form)
  std::vector<std::pair<std::string, std::optional<std::string>>> status_rows_;

  void index_entry(size_t idx, std::string_view origin, size_t line_no);
};

// Release-year lookup table for SSH software banners.
class VersionYearMap {
 public:
  struct Entry {
    std::string software;
    std::string version;  // major.minor
    int year = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static VersionYearMap load_file(const std::filesystem::path& path);
  static VersionYearMap load_text(std::string_view text, std::string_view origin = "<memory>");
  static const VersionYearMap& builtin();  // OpenSSH 5.0 through 9.7

  // Absent when the banner is unparseable or the (software, version) pair is
  // not mapped.
  std::optional<int> release_year(std::string_view banner) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::string serialize() const;

 private:
  std::vector<Entry> entries_;
  std::map<std::pair<std::string, std::string>, int> index_;
};

struct BannerInfo {
  std::string software;
  std::string version;  // numeric dotted prefix, e.g. "9.1" from "9.1p1"
};

// Parses "SSH-2.0-OpenSSH_9.1p1 Debian-2" shapes; also accepts a bare
// software_version token without the protocol prefix.
std::optional<BannerInfo> parse_ssh_banner(std::string_view banner);

// Dotted-numeric ordering: "9.10" > "9.9" > "9.1". Non-numeric suffixes inside
// a component ("1p1") are ignored past the leading digits; missing components
// compare as zero. Returns <0, 0, >0.
int compare_dotted_versions(std::string_view a, std::string_view b);

}  // namespace pqcscope

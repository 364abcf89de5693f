#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pqcscope/ip.hpp"

namespace pqcscope {

using TimestampMicros = std::int64_t;

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LogSchema {
  char separator = '\t';
  std::string set_separator = ",";
  std::string empty_marker = "(empty)";
  std::string unset_marker = "-";
  std::string path;  // from #path, e.g. "ssh"
  std::vector<std::string> field_names;
  std::vector<std::string> field_types;

  std::optional<size_t> index_of(std::string_view name) const;
};

// Parses the '#' metadata preamble. The #separator line is space-delimited
// (the separator is not yet known there) and takes either a literal byte or a
// \xHH escape; every later metadata line uses the declared separator.
// Throws IngestError on: missing #fields, separator not a single byte,
// duplicate field names, #types arity mismatch.
LogSchema parse_header(const std::vector<std::string_view>& lines);

struct ParseStats {
  std::uint64_t lines_total = 0;     // non-metadata lines seen
  std::uint64_t records = 0;         // lines that parsed into records
  std::uint64_t malformed = 0;       // lines_total - records, by construction
  std::uint64_t utf8_replacements = 0;
  std::uint64_t skipped_projection = 0;  // parsed records a projection rejected
  std::vector<std::string> malformed_samples;  // first 10, for diagnostics
  bool clean_close = false;  // saw the #close footer
  bool truncated = false;    // input ended mid-stream (e.g. cut gzip member)
  std::string stream_error;  // human-readable note when truncated

  void note_malformed(std::string_view line);
  void merge(const ParseStats& other);
};

// One parsed line. Field views stay valid only until the next call into the
// owning LogReader; projections copy what they keep.
class RecordView {
 public:
  size_t size() const { return fields_.size(); }
  bool is_set(size_t i) const { return set_[i]; }
  std::string_view raw(size_t i) const { return fields_[i]; }
  std::optional<std::string_view> get(size_t i) const {
    if (!set_[i]) return std::nullopt;
    return fields_[i];
  }
  const LogSchema& schema() const { return *schema_; }

 private:
  friend class LogReader;
  const LogSchema* schema_ = nullptr;
  std::vector<std::string_view> fields_;
  std::vector<char> set_;
  std::string unescape_buf_;
};

namespace detail {
class ByteSource;
}

// Streaming reader over a plain or gzip Zeek TSV log. Gzip is detected by
// magic bytes; multi-member files (rotated hourly chunks concatenated) are
// handled. Memory use is bounded by the longest line, not file size.
// The metadata preamble is consumed at construction, so both factories throw
// IngestError on a broken header and schema() is valid from the start.
class LogReader {
 public:
  static LogReader open(const std::filesystem::path& path);
  static LogReader from_buffer(std::string data, std::string name = "<memory>");
  ~LogReader();
  LogReader(LogReader&&) noexcept;
  LogReader& operator=(LogReader&&) noexcept;

  // False at end of stream. Malformed lines are counted and skipped, so a
  // true return always carries a well-formed record.
  bool next(RecordView& out);

  const LogSchema& schema() const { return schema_; }
  const ParseStats& stats() const { return stats_; }
  const std::string& name() const { return name_; }

 private:
  LogReader(std::unique_ptr<detail::ByteSource> source, std::string name);
  bool next_line(std::string_view& line);
  void read_schema();
  bool parse_into(std::string_view line, RecordView& out);

  std::unique_ptr<detail::ByteSource> source_;
  std::string name_;
  LogSchema schema_;
  ParseStats stats_;
  bool eof_ = false;

  std::string buf_;
  size_t buf_pos_ = 0;
  size_t buf_end_ = 0;
  std::string pending_line_;  // first data line, captured while reading the header
  bool pending_valid_ = false;
  std::vector<std::string_view> scratch_;
};

struct ConnTuple {
  TimestampMicros ts = 0;
  std::string uid;
  IpAddress orig_ip;
  std::uint16_t orig_port = 0;
  IpAddress resp_ip;
  std::uint16_t resp_port = 0;
};

struct SshObservation {
  ConnTuple conn;
  std::string client_banner;
  std::string server_banner;
  std::optional<std::string> cipher_alg;
  std::optional<std::string> mac_alg;
  std::optional<std::string> kex_alg;
  std::optional<std::string> host_key_alg;

  // Gate for distribution membership; a bare probe with no negotiation data
  // still counts as a connection.
  bool has_algorithms() const {
    return cipher_alg || mac_alg || kex_alg || host_key_alg;
  }
};

struct TlsObservation {
  ConnTuple conn;
  std::optional<std::string> tls_version;  // normalized: "TLSv1.2" etc.
  std::optional<std::string> cipher_suite;
  std::optional<std::string> curve_or_group;
};

struct RdpObservation {
  ConnTuple conn;
  std::optional<std::string> security_protocol;
};

// Projections. A schema whose #path doesn't match throws IngestError (caller
// routing bug); a record missing required conn fields returns nullopt after
// bumping ParseStats::skipped_projection. UTF-8 repair is applied to string
// fields here, counted via stats.
std::optional<SshObservation> project_ssh(const RecordView& rec, ParseStats& stats);
std::optional<TlsObservation> project_tls(const RecordView& rec, ParseStats& stats);
std::optional<RdpObservation> project_rdp(const RecordView& rec, ParseStats& stats);

}  // namespace pqcscope

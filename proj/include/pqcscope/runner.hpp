#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqcscope/zeek.hpp"

namespace pqcscope {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  // Files, directories (searched recursively for *.log and *.log.gz), or
  // shell globs, consumed in the order given.
  std::vector<std::string> inputs;
  std::optional<std::string> protocol;  // restrict to one log path: ssh, tls, rdp
  std::optional<std::filesystem::path> registry_path;
  std::optional<std::filesystem::path> asn_table_path;
  std::optional<TimestampMicros> from_micros;  // inclusive
  std::optional<TimestampMicros> to_micros;    // exclusive
  OutputFormat format = OutputFormat::Json;
  int workers = 1;
  bool stamp = false;                // wall-clock generated_at in reports
  double malformed_limit = 0.05;     // data-quality gate on malformed/total lines
  int stale_cutoff_year = 2019;
  std::size_t asn_top = 10;
  std::string series_predicate = "pqc";
};

enum class RunnerErrorKind {
  Usage,       // bad configuration: flags that cannot be acted on
  Io,          // unreadable input, bad registry or table
  DataQuality, // malformed-line ratio above the configured limit
  EmptyInput   // nothing matched or nothing qualified
};

class RunnerError : public std::runtime_error {
 public:
  RunnerError(RunnerErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  RunnerErrorKind kind() const { return kind_; }

 private:
  RunnerErrorKind kind_;
};

// Each returns the fully rendered document (JSON or CSV per config.format)
// for standard output. All throw RunnerError; they never print.
std::string run_report(const RunConfig& config);
std::string run_series(const RunConfig& config);
std::string run_asn(const RunConfig& config);
std::string run_alerts(const RunConfig& config);

// Input expansion, exposed for tests: directories recurse, glob metacharacters
// expand, plain paths must exist.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& inputs);

}  // namespace pqcscope

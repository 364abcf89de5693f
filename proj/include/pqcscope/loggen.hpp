#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqcscope {

// Calibrated fixture families. Each writes one or more gzip Zeek-TSV logs
// whose aggregate statistics hit the published targets exactly at scale 1
// and proportionally (largest-remainder rounding) at other scales.
enum class GenProfile {
  Table2SshDay,     // one day of SSH with the four algorithm distributions
  TlsTop10,         // the ten-suite TLS snapshot with calibrated version share
  Trend20232024,    // monthly hybrid-kex ramp plus a headline-rate stream
  AsnHeadTail,      // head-heavy AS attribution sample with a toy prefix table
  StaleServers83,   // server banner mix: 83% at or before the cutoff year
  DowngradeEpisode  // one fallback episode plus all-hybrid / all-classical controls
};

std::optional<GenProfile> gen_profile_from_string(std::string_view name);
std::string_view to_string(GenProfile profile);
const std::vector<std::string_view>& gen_profile_names();

struct GenOptions {
  GenProfile profile = GenProfile::Table2SshDay;
  double scale = 1.0;  // > 0
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
};

struct GeneratedFile {
  std::filesystem::path path;
  std::uint64_t records = 0;
};

// Splits llround(sum(counts) * scale) across the buckets proportionally:
// floor the exact quotas, then hand the leftover units to the largest
// fractional remainders (ties to the earlier bucket). scale = 1 is identity.
std::vector<std::uint64_t> scale_counts(const std::vector<std::uint64_t>& counts,
                                        double scale);

// Writes the profile's files into opts.out_dir. Same (profile, scale, seed)
// always produces byte-identical files. Throws std::runtime_error on an
// unwritable destination and std::invalid_argument on a non-positive scale.
std::vector<GeneratedFile> generate(const GenOptions& opts);

}  // namespace pqcscope

#include "pqcscope/loggen.hpp"

#include <zlib.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "pqcscope/rng.hpp"
#include "pqcscope/util.hpp"

namespace pqcscope {

namespace {

constexpr struct {
  GenProfile profile;
  std::string_view name;
} kProfileNames[] = {
    {GenProfile::Table2SshDay, "table2-ssh-day"},
    {GenProfile::TlsTop10, "tls-top10"},
    {GenProfile::Trend20232024, "trend-2023-2024"},
    {GenProfile::AsnHeadTail, "asn-head-tail"},
    {GenProfile::StaleServers83, "stale-servers-83"},
    {GenProfile::DowngradeEpisode, "downgrade-episode"},
};

// zlib writes a fixed gzip header (zero mtime, no name) when no explicit
// header struct is attached, which keeps same-input outputs byte-identical.
class GzWriter {
 public:
  explicit GzWriter(const std::filesystem::path& p) : path_(p) {
    file_ = gzopen(p.string().c_str(), "wb");
    if (!file_) throw std::runtime_error("cannot open for writing: " + p.string());
  }
  GzWriter(const GzWriter&) = delete;
  GzWriter& operator=(const GzWriter&) = delete;
  ~GzWriter() {
    if (file_) gzclose(file_);
  }

  void write(std::string_view s) {
    if (s.empty()) return;
    if (gzwrite(file_, s.data(), static_cast<unsigned>(s.size())) !=
        static_cast<int>(s.size())) {
      throw std::runtime_error("short write: " + path_.string());
    }
  }

  void finish() {
    int rc = gzclose(file_);
    file_ = nullptr;
    if (rc != Z_OK) throw std::runtime_error("close failed: " + path_.string());
  }

 private:
  std::filesystem::path path_;
  gzFile file_ = nullptr;
};

std::string escape_cell(std::string_view v) {
  if (v.find('\t') == std::string_view::npos && v.find('\n') == std::string_view::npos) {
    return std::string(v);
  }
  std::string out;
  out.reserve(v.size() + 6);
  for (char c : v) {
    if (c == '\t') {
      out += "\\x09";
    } else if (c == '\n') {
      out += "\\x0a";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

class ZeekLog {
 public:
  ZeekLog(const std::filesystem::path& file, std::string_view path_name,
          const std::vector<std::string_view>& fields,
          const std::vector<std::string_view>& types, std::string_view open_stamp,
          std::string_view close_stamp)
      : writer_(file), file_(file), close_stamp_(close_stamp) {
    std::string head;
    head += "#separator \\x09\n";
    head += "#set_separator\t,\n";
    head += "#empty_field\t(empty)\n";
    head += "#unset_field\t-\n";
    head += "#path\t";
    head += path_name;
    head += "\n#open\t";
    head += open_stamp;
    head += "\n#fields";
    for (auto f : fields) {
      head += '\t';
      head += f;
    }
    head += "\n#types";
    for (auto t : types) {
      head += '\t';
      head += t;
    }
    head += '\n';
    writer_.write(head);
  }

  void row(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += '\t';
      line += escape_cell(cells[i]);
    }
    line += '\n';
    writer_.write(line);
    ++rows_;
  }

  GeneratedFile finish() {
    writer_.write("#close\t" + std::string(close_stamp_) + "\n");
    writer_.finish();
    return {file_, rows_};
  }

 private:
  GzWriter writer_;
  std::filesystem::path file_;
  std::string close_stamp_;
  std::uint64_t rows_ = 0;
};

const std::vector<std::string_view> kSshFields = {
    "ts",      "uid",          "id.orig_h", "id.orig_p", "id.resp_h",
    "id.resp_p", "version",    "auth_success", "client",  "server",
    "cipher_alg", "mac_alg",   "compression_alg", "kex_alg", "host_key_alg"};
const std::vector<std::string_view> kSshTypes = {
    "time", "string", "addr", "port", "addr", "port", "count", "bool",
    "string", "string", "string", "string", "string", "string", "string"};

const std::vector<std::string_view> kTlsFields = {
    "ts",      "uid",     "id.orig_h", "id.orig_p", "id.resp_h", "id.resp_p",
    "version", "cipher",  "curve",     "server_name", "established"};
const std::vector<std::string_view> kTlsTypes = {
    "time", "string", "addr", "port", "addr", "port",
    "string", "string", "string", "string", "bool"};

constexpr std::string_view kUnset = "-";

struct SshRow {
  std::int64_t ts = 0;
  std::string uid;
  std::string orig_h;
  std::uint16_t orig_p = 0;
  std::string resp_h;
  std::uint16_t resp_p = 22;
  std::string client;  // empty renders unset
  std::string server;
  std::string cipher;
  std::string mac;
  std::string kex;
  std::string hostkey;
};

std::vector<std::string> render_ssh(const SshRow& r) {
  auto opt = [](const std::string& v) { return v.empty() ? std::string(kUnset) : v; };
  bool negotiated = !r.cipher.empty() || !r.mac.empty() || !r.kex.empty();
  return {format_ts_decimal(r.ts),
          r.uid,
          r.orig_h,
          std::to_string(r.orig_p),
          r.resp_h,
          std::to_string(r.resp_p),
          "2",
          std::string(kUnset),
          opt(r.client),
          opt(r.server),
          opt(r.cipher),
          opt(r.mac),
          negotiated ? "none" : std::string(kUnset),
          opt(r.kex),
          opt(r.hostkey)};
}

std::string make_uid(Rng& rng) {
  static const char kAlnum[] = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string uid = "C";
  for (int i = 0; i < 17; ++i) uid.push_back(kAlnum[rng.below(62)]);
  return uid;
}

std::string stamp_of(std::int64_t micros) {
  // Zeek's #open/#close shape: 2024-02-19-00-00-00.
  std::string iso = format_iso8601_micros(micros);  // 2024-02-19T00:00:00.000000Z
  std::string out = iso.substr(0, 10);
  out += '-';
  out += iso.substr(11, 2);
  out += '-';
  out += iso.substr(14, 2);
  out += '-';
  out += iso.substr(17, 2);
  return out;
}

// Expands (value, count) pairs into one value per record and mixes the column
// so roles don't correlate artificially.
std::vector<std::string_view> expand_column(
    const std::vector<std::pair<std::string_view, std::uint64_t>>& spec,
    const std::vector<std::uint64_t>& scaled, Rng& rng) {
  std::vector<std::string_view> column;
  for (size_t i = 0; i < spec.size(); ++i) {
    for (std::uint64_t k = 0; k < scaled[i]; ++k) column.push_back(spec[i].first);
  }
  rng.shuffle(column);
  return column;
}

std::vector<std::uint64_t> counts_of(
    const std::vector<std::pair<std::string_view, std::uint64_t>>& spec) {
  std::vector<std::uint64_t> out;
  out.reserve(spec.size());
  for (const auto& [_, c] : spec) out.push_back(c);
  return out;
}

std::int64_t spread(std::int64_t start, std::int64_t end, std::uint64_t i,
                    std::uint64_t total) {
  if (total == 0) return start;
  return start + static_cast<std::int64_t>((end - start) / static_cast<std::int64_t>(total) *
                                           static_cast<std::int64_t>(i));
}

// --- table2-ssh-day -------------------------------------------------------

std::vector<GeneratedFile> gen_table2(const GenOptions& opts, Rng& rng) {
  const std::vector<std::pair<std::string_view, std::uint64_t>> kex = {
      {"curve25519-sha256", 2030},
      {"curve25519-sha256@libssh.org", 473},
      {"diffie-hellman-group-exchange-sha256", 6},
      {"diffie-hellman-group1-sha1", 5},
      {"sntrup761x25519-sha512@openssh.com", 2},
      {"diffie-hellman-group14-sha1", 2}};
  const std::vector<std::pair<std::string_view, std::uint64_t>> cipher = {
      {"aes256-gcm@openssh.com", 1686}, {"aes128-ctr", 454},
      {"chacha20-poly1305@openssh.com", 188}, {"aes128-gcm@openssh.com", 156},
      {"aes256-ctr", 31}, {"aes128-cbc", 2}, {"3des-cbc", 1}};
  const std::vector<std::pair<std::string_view, std::uint64_t>> mac = {
      {"hmac-sha2-256-etm@openssh.com", 1844}, {"hmac-sha2-256", 457},
      {"umac-128-etm@openssh.com", 154}, {"umac-64-etm@openssh.com", 33},
      {"hmac-sha1", 17}, {"hmac-sha2-512", 13}};
  const std::vector<std::pair<std::string_view, std::uint64_t>> hostkey = {
      {"ecdsa-sha2-nistp256", 1275}, {"ssh-ed25519", 1233},
      {"ssh-rsa", 5}, {"rsa-sha2-512", 4}};

  auto kex_col = expand_column(kex, scale_counts(counts_of(kex), opts.scale), rng);
  auto cipher_col = expand_column(cipher, scale_counts(counts_of(cipher), opts.scale), rng);
  auto mac_col = expand_column(mac, scale_counts(counts_of(mac), opts.scale), rng);
  auto hostkey_col =
      expand_column(hostkey, scale_counts(counts_of(hostkey), opts.scale), rng);

  const std::uint64_t negotiated = kex_col.size();  // cipher and mac columns match
  const std::uint64_t connections =
      std::max<std::uint64_t>(negotiated, std::llround(2519.0 * opts.scale));

  const char* client_banners[] = {"SSH-2.0-OpenSSH_9.6", "SSH-2.0-OpenSSH_9.1p1 Debian-2",
                                  "SSH-2.0-OpenSSH_8.9p1 Ubuntu-3ubuntu0.6",
                                  "SSH-2.0-libssh2_1.11.0"};
  const char* server_banners[] = {"SSH-2.0-OpenSSH_9.6", "SSH-2.0-OpenSSH_8.9p1",
                                  "SSH-2.0-OpenSSH_9.2p1 Debian-2+deb12u2"};

  std::int64_t day = micros_at(2024, 2, 19);
  std::int64_t day_end = micros_at(2024, 2, 20);
  ZeekLog log(opts.out_dir / "ssh_sample_day.log.gz", "ssh", kSshFields, kSshTypes,
              stamp_of(day), stamp_of(day_end - 1'000'000));

  for (std::uint64_t i = 0; i < connections; ++i) {
    SshRow r;
    r.ts = spread(day, day_end, i, connections);
    r.uid = make_uid(rng);
    r.orig_h = "192.0.2." + std::to_string(1 + rng.below(254));
    r.orig_p = static_cast<std::uint16_t>(32768 + rng.below(28000));
    r.resp_h = "203.0.113." + std::to_string(1 + rng.below(64));
    r.client = client_banners[rng.below(std::size(client_banners))];
    if (i < negotiated) {
      r.server = server_banners[rng.below(std::size(server_banners))];
      r.cipher = std::string(cipher_col[i]);
      r.mac = std::string(mac_col[i]);
      r.kex = std::string(kex_col[i]);
      if (i < hostkey_col.size()) r.hostkey = std::string(hostkey_col[i]);
    }
    // Past the negotiated range: bare probes with no negotiation data.
    log.row(render_ssh(r));
  }
  return {log.finish()};
}

// --- tls-top10 --------------------------------------------------------------

std::vector<GeneratedFile> gen_tls_top10(const GenOptions& opts, Rng& rng) {
  struct Suite {
    std::string_view wire_name;  // underscore spelling as logged
    std::uint64_t count;
    bool v13;
    std::string_view curve;
  };
  const Suite suites[] = {
      {"TLS_AES_128_GCM_SHA256", 416447, true, "x25519"},
      {"TLS_ECDHE_RSA_WITH_AES_256_GCM_SHA384", 117788, false, "secp256r1"},
      {"TLS_AES_256_GCM_SHA384", 100708, true, "x25519"},
      {"TLS_ECDHE_RSA_WITH_AES_128_GCM_SHA256", 79171, false, "secp256r1"},
      {"TLS_DH_anon_WITH_AES_256_GCM_SHA384", 42261, false, ""},
      {"TLS_ECDH_anon_WITH_AES_256_CBC_SHA", 14787, false, "secp256r1"},
      {"TLS_ECDHE_RSA_WITH_NULL_SHA", 5612, false, "secp256r1"},
      {"TLS_ECDHE_ECDSA_WITH_AES_128_GCM_SHA256", 3382, false, "secp384r1"},
      {"TLS_ECDHE_RSA_WITH_CHACHA20_POLY1305_SHA256", 2787, false, "x25519"},
      {"TLS_ECDHE_ECDSA_WITH_AES_256_GCM_SHA384", 2497, false, "secp384r1"}};

  std::vector<std::uint64_t> base;
  for (const auto& s : suites) base.push_back(s.count);
  auto scaled = scale_counts(base, opts.scale);

  // Version calibration: a slice of the v1.3-suite records carries no version
  // value, sized so the share among version-bearing records lands on the
  // published figure instead of the raw suite ratio.
  std::uint64_t v13_total = 0;
  for (size_t i = 0; i < std::size(suites); ++i) {
    if (suites[i].v13) v13_total += scaled[i];
  }
  auto version_split = scale_counts({18911, 498244}, static_cast<double>(v13_total) / 517155.0);
  std::uint64_t version_unset_left = version_split[0];

  std::int64_t day = micros_at(2024, 2, 20);
  std::int64_t day_end = micros_at(2024, 2, 21);
  std::uint64_t total = std::accumulate(scaled.begin(), scaled.end(), std::uint64_t(0));
  ZeekLog log(opts.out_dir / "tls_top10.log.gz", "ssl", kTlsFields, kTlsTypes,
              stamp_of(day), stamp_of(day_end - 1'000'000));

  const char* hosts[] = {"www.example.com", "api.example.net", "cdn.example.org"};
  std::uint64_t emitted = 0;
  for (size_t si = 0; si < std::size(suites); ++si) {
    const Suite& s = suites[si];
    for (std::uint64_t k = 0; k < scaled[si]; ++k, ++emitted) {
      std::string version;
      if (s.v13) {
        if (version_unset_left > 0) {
          --version_unset_left;  // left unset on purpose
        } else {
          version = "TLSv13";
        }
      } else {
        version = "TLSv12";
      }
      std::vector<std::string> cells = {
          format_ts_decimal(spread(day, day_end, emitted, total)),
          make_uid(rng),
          "192.0.2." + std::to_string(1 + rng.below(254)),
          std::to_string(32768 + rng.below(28000)),
          "203.0.113." + std::to_string(1 + rng.below(64)),
          "443",
          version.empty() ? std::string(kUnset) : version,
          std::string(s.wire_name),
          s.curve.empty() ? std::string(kUnset) : std::string(s.curve),
          hosts[rng.below(std::size(hosts))],
          "T"};
      log.row(cells);
    }
  }
  return {log.finish()};
}

// --- trend-2023-2024 --------------------------------------------------------

std::vector<GeneratedFile> gen_trend(const GenOptions& opts, Rng& rng) {
  // Linear ramp between the published endpoints, 16 monthly buckets.
  const std::vector<std::uint64_t> ramp = {37,  140, 243, 347,  450,  553,  656,  759,
                                           863, 966, 1069, 1172, 1275, 1379, 1482, 1585};
  auto monthly = scale_counts(ramp, opts.scale);

  std::vector<GeneratedFile> out;
  {
    ZeekLog log(opts.out_dir / "ssh_trend.log.gz", "ssh", kSshFields, kSshTypes,
                stamp_of(micros_at(2023, 1, 1)), stamp_of(micros_at(2024, 4, 30)));
    for (size_t m = 0; m < monthly.size(); ++m) {
      int year = 2023 + static_cast<int>((m + 0) / 12);
      unsigned month = static_cast<unsigned>(1 + (m % 12));
      std::int64_t start = micros_at(year, month, 1);
      unsigned next_month = month == 12 ? 1 : month + 1;
      int next_year = month == 12 ? year + 1 : year;
      std::int64_t end = micros_at(next_year, next_month, 1);
      for (std::uint64_t k = 0; k < monthly[m]; ++k) {
        SshRow r;
        r.ts = spread(start, end, k, monthly[m]);
        r.uid = make_uid(rng);
        r.orig_h = "192.0.2." + std::to_string(1 + rng.below(254));
        r.orig_p = static_cast<std::uint16_t>(32768 + rng.below(28000));
        r.resp_h = "203.0.113.10";
        r.client = "SSH-2.0-OpenSSH_9.6";
        r.server = "SSH-2.0-OpenSSH_9.6";
        r.cipher = "chacha20-poly1305@openssh.com";
        r.mac = "umac-64-etm@openssh.com";
        r.kex = "sntrup761x25519-sha512@openssh.com";
        r.hostkey = "ssh-ed25519";
        log.row(render_ssh(r));
      }
    }
    out.push_back(log.finish());
  }
  {
    // Denominator stream for the headline rate: same shape, hybrid kex on a
    // calibrated sliver of records.
    auto split = scale_counts({6, 20551}, opts.scale);
    std::uint64_t total = split[0] + split[1];
    std::vector<char> is_pqc(total, 0);
    for (std::uint64_t i = 0; i < split[0]; ++i) is_pqc[i] = 1;
    {
      std::vector<char>& v = is_pqc;
      for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    }
    // One day past the ramp's last month, so a series over the whole
    // directory keeps the calibrated monthly buckets untouched.
    std::int64_t day = micros_at(2024, 5, 30);
    std::int64_t day_end = micros_at(2024, 5, 31);
    ZeekLog log(opts.out_dir / "ssh_headline.log.gz", "ssh", kSshFields, kSshTypes,
                stamp_of(day), stamp_of(day_end - 1'000'000));
    for (std::uint64_t i = 0; i < total; ++i) {
      SshRow r;
      r.ts = spread(day, day_end, i, total);
      r.uid = make_uid(rng);
      r.orig_h = "192.0.2." + std::to_string(1 + rng.below(254));
      r.orig_p = static_cast<std::uint16_t>(32768 + rng.below(28000));
      r.resp_h = "203.0.113." + std::to_string(1 + rng.below(64));
      r.client = is_pqc[i] ? "SSH-2.0-OpenSSH_9.6" : "SSH-2.0-OpenSSH_8.9p1";
      r.server = "SSH-2.0-OpenSSH_9.6";
      r.cipher = "aes256-gcm@openssh.com";
      r.mac = "hmac-sha2-256-etm@openssh.com";
      r.kex = is_pqc[i] ? "sntrup761x25519-sha512@openssh.com" : "curve25519-sha256";
      r.hostkey = "ecdsa-sha2-nistp256";
      log.row(render_ssh(r));
    }
    out.push_back(log.finish());
  }
  return out;
}

// --- asn-head-tail ----------------------------------------------------------

std::vector<GeneratedFile> gen_asn_head_tail(const GenOptions& opts, Rng& rng) {
  struct HeadAs {
    std::uint32_t asn;
    std::string_view org;
    std::string_view prefix;  // CIDR in the toy table
    bool v6;
    std::uint64_t count;
  };
  const HeadAs head[] = {
      {64512, "OARNET", "10.1.0.0/16", false, 300},
      {64513, "GTT", "10.2.0.0/16", false, 250},
      {64514, "Google Fiber Webpass", "10.3.0.0/16", false, 200},
      {64515, "Comcast", "10.4.0.0/16", false, 150},
      {64516, "Uppsala Lans Landsting", "fd00:1::/32", true, 100}};
  constexpr int kTailCount = 30;
  constexpr std::uint64_t kPerTail = 30;
  constexpr std::uint64_t kUnknown = 38;

  std::vector<std::uint64_t> base;
  for (const auto& h : head) base.push_back(h.count);
  for (int i = 0; i < kTailCount; ++i) base.push_back(kPerTail);
  base.push_back(kUnknown);
  auto scaled = scale_counts(base, opts.scale);

  std::vector<GeneratedFile> out;

  // The toy prefix table the fixture is keyed to.
  std::filesystem::path table_path = opts.out_dir / "asn_table.csv";
  {
    std::ofstream table(table_path, std::ios::binary);
    if (!table) throw std::runtime_error("cannot open for writing: " + table_path.string());
    table << "# prefix,asn,organization\n";
    for (const auto& h : head) {
      table << h.prefix << ',' << h.asn << ',' << h.org << '\n';
    }
    for (int i = 0; i < kTailCount; ++i) {
      char org[32];
      std::snprintf(org, sizeof org, "Tail Network %02d", i);
      table << "10." << (10 + i) << ".0.0/16," << (64600 + i) << ',' << org << '\n';
    }
    if (!table.flush()) throw std::runtime_error("short write: " + table_path.string());
  }
  out.push_back({table_path, static_cast<std::uint64_t>(5 + kTailCount)});

  std::int64_t day = micros_at(2024, 3, 5);
  std::int64_t day_end = micros_at(2024, 3, 6);
  std::uint64_t total = std::accumulate(scaled.begin(), scaled.end(), std::uint64_t(0));
  ZeekLog log(opts.out_dir / "ssh_asn.log.gz", "ssh", kSshFields, kSshTypes, stamp_of(day),
              stamp_of(day_end - 1'000'000));

  std::uint64_t emitted = 0;
  auto emit = [&](const std::string& orig_h, std::uint64_t n) {
    for (std::uint64_t k = 0; k < n; ++k, ++emitted) {
      SshRow r;
      r.ts = spread(day, day_end, emitted, total);
      r.uid = make_uid(rng);
      r.orig_h = orig_h;
      r.orig_p = static_cast<std::uint16_t>(32768 + rng.below(28000));
      r.resp_h = "203.0.113.22";
      r.client = "SSH-2.0-OpenSSH_9.6";
      r.server = "SSH-2.0-OpenSSH_9.6";
      r.cipher = "chacha20-poly1305@openssh.com";
      r.mac = "umac-64-etm@openssh.com";
      r.kex = "sntrup761x25519-sha512@openssh.com";
      r.hostkey = "ssh-ed25519";
      log.row(render_ssh(r));
    }
  };

  size_t bucket = 0;
  for (const auto& h : head) {
    std::uint64_t n = scaled[bucket++];
    for (std::uint64_t k = 0; k < n; ++k) {
      std::string addr;
      if (h.v6) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "fd00:1:%llx:%llx::%llx",
                      static_cast<unsigned long long>(rng.below(0xffff)),
                      static_cast<unsigned long long>(rng.below(0xffff)),
                      static_cast<unsigned long long>(1 + rng.below(0xfffe)));
        addr = buf;
      } else {
        // 10.X.0.0/16 head prefixes: vary the low half.
        std::string_view p = h.prefix;
        addr = std::string(p.substr(0, p.find(".0.0/")));
        addr += '.' + std::to_string(rng.below(256)) + '.' + std::to_string(1 + rng.below(254));
      }
      emit(addr, 1);
    }
  }
  for (int i = 0; i < kTailCount; ++i) {
    std::uint64_t n = scaled[bucket++];
    for (std::uint64_t k = 0; k < n; ++k) {
      std::string addr = "10." + std::to_string(10 + i) + '.' +
                         std::to_string(rng.below(256)) + '.' +
                         std::to_string(1 + rng.below(254));
      emit(addr, 1);
    }
  }
  {
    std::uint64_t n = scaled[bucket++];
    for (std::uint64_t k = 0; k < n; ++k) {
      emit("192.0.2." + std::to_string(1 + rng.below(254)), 1);
    }
  }
  out.push_back(log.finish());
  return out;
}

// --- stale-servers-83 -------------------------------------------------------

std::vector<GeneratedFile> gen_stale(const GenOptions& opts, Rng& rng) {
  // Banner pools: at-or-before the cutoff year, after it, and unmappable.
  const char* stale_banners[] = {
      "SSH-2.0-OpenSSH_5.3",  "SSH-2.0-OpenSSH_6.6.1p1 Ubuntu-2ubuntu2.13",
      "SSH-2.0-OpenSSH_7.4",  "SSH-2.0-OpenSSH_7.9p1 Debian-10+deb10u2",
      "SSH-2.0-OpenSSH_8.0",  "SSH-2.0-OpenSSH_8.1"};
  const char* fresh_banners[] = {"SSH-2.0-OpenSSH_8.2p1 Ubuntu-4ubuntu0.11",
                                 "SSH-2.0-OpenSSH_8.9p1", "SSH-2.0-OpenSSH_9.1p1 Debian-2",
                                 "SSH-2.0-OpenSSH_9.6"};
  const char* odd_banners[] = {"SSH-2.0-paramiko_3.3.1", "SSH-2.0-Go",
                               "SSH-2.0-dropbear_2022.83"};

  auto scaled = scale_counts({830, 170, 57}, opts.scale);
  std::uint64_t total = scaled[0] + scaled[1] + scaled[2];

  std::int64_t day = micros_at(2024, 3, 12);
  std::int64_t day_end = micros_at(2024, 3, 13);
  ZeekLog log(opts.out_dir / "ssh_stale.log.gz", "ssh", kSshFields, kSshTypes,
              stamp_of(day), stamp_of(day_end - 1'000'000));

  std::uint64_t emitted = 0;
  auto emit_group = [&](std::uint64_t n, auto& pool) {
    for (std::uint64_t k = 0; k < n; ++k, ++emitted) {
      SshRow r;
      r.ts = spread(day, day_end, emitted, total);
      r.uid = make_uid(rng);
      r.orig_h = "192.0.2." + std::to_string(1 + rng.below(254));
      r.orig_p = static_cast<std::uint16_t>(32768 + rng.below(28000));
      r.resp_h = "203.0.113." + std::to_string(1 + rng.below(200));
      r.client = "SSH-2.0-OpenSSH_9.6";
      r.server = pool[k % std::size(pool)];
      r.cipher = "aes256-gcm@openssh.com";
      r.mac = "hmac-sha2-256-etm@openssh.com";
      r.kex = "curve25519-sha256";
      r.hostkey = "ecdsa-sha2-nistp256";
      log.row(render_ssh(r));
    }
  };
  emit_group(scaled[0], stale_banners);
  emit_group(scaled[1], fresh_banners);
  emit_group(scaled[2], odd_banners);
  return {log.finish()};
}

// --- downgrade-episode ------------------------------------------------------

std::vector<GeneratedFile> gen_downgrade(const GenOptions& opts, Rng& rng) {
  constexpr std::string_view kHybrid = "sntrup761x25519-sha512@openssh.com";
  constexpr std::string_view kClassic = "curve25519-sha256";
  std::vector<GeneratedFile> out;

  auto base_row = [&rng](std::int64_t ts, std::string_view orig, std::string_view resp,
                         std::string_view kex, std::string_view client_banner) {
    SshRow r;
    r.ts = ts;
    r.orig_h = std::string(orig);
    r.orig_p = static_cast<std::uint16_t>(32768 + rng.below(28000));
    r.resp_h = std::string(resp);
    r.client = std::string(client_banner);
    r.server = "SSH-2.0-OpenSSH_9.6";
    r.cipher = "chacha20-poly1305@openssh.com";
    r.mac = "umac-64-etm@openssh.com";
    r.kex = std::string(kex);
    r.hostkey = "ssh-ed25519";
    return r;
  };
  auto hour = [](int h) { return micros_at(2024, 3, 18, static_cast<unsigned>(h)); };

  {
    ZeekLog log(opts.out_dir / "ssh_downgrade.log.gz", "ssh", kSshFields, kSshTypes,
                stamp_of(hour(0)), stamp_of(micros_at(2024, 4, 30)));
    std::vector<SshRow> rows;

    // The episode: hybrid first, then two same-banner fallbacks inside the
    // window. One alert for the contiguous pair.
    rows.push_back(base_row(hour(1), "192.0.2.10", "203.0.113.5", kHybrid,
                            "SSH-2.0-OpenSSH_9.1p1 Debian-2"));
    rows.push_back(base_row(hour(2), "192.0.2.10", "203.0.113.5", kClassic,
                            "SSH-2.0-OpenSSH_9.1p1 Debian-2"));
    rows.push_back(base_row(hour(3), "192.0.2.10", "203.0.113.5", kClassic,
                            "SSH-2.0-OpenSSH_9.1p1 Debian-2"));
    // Hybrid-only pair.
    rows.push_back(base_row(hour(1), "192.0.2.20", "203.0.113.5", kHybrid,
                            "SSH-2.0-OpenSSH_9.6"));
    rows.push_back(base_row(hour(4), "192.0.2.20", "203.0.113.5", kHybrid,
                            "SSH-2.0-OpenSSH_9.6"));
    // Classical-only pair.
    rows.push_back(base_row(hour(1), "192.0.2.30", "203.0.113.6", kClassic,
                            "SSH-2.0-OpenSSH_8.9p1"));
    rows.push_back(base_row(hour(5), "192.0.2.30", "203.0.113.6", kClassic,
                            "SSH-2.0-OpenSSH_8.9p1"));
    rows.push_back(base_row(hour(9), "192.0.2.30", "203.0.113.6", kClassic,
                            "SSH-2.0-OpenSSH_8.9p1"));
    // Upgrade direction: classical then hybrid.
    rows.push_back(base_row(hour(2), "192.0.2.40", "203.0.113.7", kClassic,
                            "SSH-2.0-OpenSSH_9.6"));
    rows.push_back(base_row(hour(6), "192.0.2.40", "203.0.113.7", kHybrid,
                            "SSH-2.0-OpenSSH_9.6"));
    // Fallback explained by a strictly older client banner: suppressed.
    rows.push_back(base_row(hour(2), "192.0.2.50", "203.0.113.8", kHybrid,
                            "SSH-2.0-OpenSSH_9.6"));
    rows.push_back(base_row(hour(7), "192.0.2.50", "203.0.113.8", kClassic,
                            "SSH-2.0-OpenSSH_8.9p1"));
    // Fallback far outside the window: suppressed.
    rows.push_back(base_row(hour(3), "192.0.2.60", "203.0.113.9", kHybrid,
                            "SSH-2.0-OpenSSH_9.6"));
    rows.push_back(base_row(micros_at(2024, 4, 25, 3), "192.0.2.60", "203.0.113.9",
                            kClassic, "SSH-2.0-OpenSSH_9.6"));

    for (auto& r : rows) {
      r.uid = make_uid(rng);
      log.row(render_ssh(r));
    }
    out.push_back(log.finish());
  }

  // Controls. Scale widens them; the episode file stays fixed so the alert
  // count is stable at every scale.
  auto control = [&](const char* name, std::string_view kex, std::string_view banner) {
    ZeekLog log(opts.out_dir / name, "ssh", kSshFields, kSshTypes, stamp_of(hour(0)),
                stamp_of(micros_at(2024, 3, 19)));
    std::uint64_t n = std::max<std::uint64_t>(8, std::llround(20.0 * opts.scale));
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string orig = "192.0.2." + std::to_string(100 + i % 4);
      SshRow r = base_row(hour(0) + static_cast<std::int64_t>(i) * 900'000'000, orig,
                          "203.0.113.40", kex, banner);
      r.uid = make_uid(rng);
      log.row(render_ssh(r));
    }
    out.push_back(log.finish());
  };
  control("ssh_all_pqc.log.gz", kHybrid, "SSH-2.0-OpenSSH_9.6");
  control("ssh_all_classical.log.gz", kClassic, "SSH-2.0-OpenSSH_8.9p1");
  return out;
}

}  // namespace

std::optional<GenProfile> gen_profile_from_string(std::string_view name) {
  for (const auto& row : kProfileNames) {
    if (row.name == name) return row.profile;
  }
  return std::nullopt;
}

std::string_view to_string(GenProfile profile) {
  for (const auto& row : kProfileNames) {
    if (row.profile == profile) return row.name;
  }
  return "?";
}

const std::vector<std::string_view>& gen_profile_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& row : kProfileNames) v.push_back(row.name);
    return v;
  }();
  return names;
}

std::vector<std::uint64_t> scale_counts(const std::vector<std::uint64_t>& counts,
                                        double scale) {
  if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
  std::uint64_t sum = std::accumulate(counts.begin(), counts.end(), std::uint64_t(0));
  auto target = static_cast<std::uint64_t>(std::llround(static_cast<double>(sum) * scale));

  std::vector<std::uint64_t> out(counts.size(), 0);
  std::vector<std::pair<double, size_t>> remainders;
  std::uint64_t floored = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    double quota = static_cast<double>(counts[i]) * scale;
    out[i] = static_cast<std::uint64_t>(quota);
    floored += out[i];
    remainders.emplace_back(quota - static_cast<double>(out[i]), i);
  }
  // Largest remainder first; equal remainders resolve to the earlier bucket.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::uint64_t leftover = target > floored ? target - floored : 0;
  for (size_t k = 0; k < leftover && !remainders.empty(); ++k) {
    ++out[remainders[k % remainders.size()].second];
  }
  // Rounding drift the other way (possible with tiny scales) trims the
  // smallest remainders.
  std::uint64_t excess = floored > target ? floored - target : 0;
  for (size_t k = 0; k < excess; ++k) {
    size_t idx = remainders[remainders.size() - 1 - (k % remainders.size())].second;
    if (out[idx] > 0) --out[idx];
  }
  return out;
}

std::vector<GeneratedFile> generate(const GenOptions& opts) {
  if (!(opts.scale > 0)) throw std::invalid_argument("scale must be positive");
  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (!std::filesystem::is_directory(opts.out_dir)) {
    throw std::runtime_error("not a writable directory: " + opts.out_dir.string());
  }
  Rng rng(opts.seed ^ (static_cast<std::uint64_t>(opts.profile) << 56));
  switch (opts.profile) {
    case GenProfile::Table2SshDay:
      return gen_table2(opts, rng);
    case GenProfile::TlsTop10:
      return gen_tls_top10(opts, rng);
    case GenProfile::Trend20232024:
      return gen_trend(opts, rng);
    case GenProfile::AsnHeadTail:
      return gen_asn_head_tail(opts, rng);
    case GenProfile::StaleServers83:
      return gen_stale(opts, rng);
    case GenProfile::DowngradeEpisode:
      return gen_downgrade(opts, rng);
  }
  throw std::invalid_argument("unknown profile");
}

}  // namespace pqcscope

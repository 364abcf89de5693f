#include "pqcscope/zeek.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>
#include <unordered_set>

#include "pqcscope/util.hpp"

namespace pqcscope {

namespace detail {

class ByteSource {
 public:
  virtual ~ByteSource() = default;
  // 0 means end of stream (cap is never 0).
  virtual size_t read(char* dst, size_t cap) = 0;
  virtual bool truncated() const { return false; }
  virtual std::string error() const { return {}; }
};

namespace {

class FileSource : public ByteSource {
 public:
  explicit FileSource(const std::filesystem::path& path)
      : f_(std::fopen(path.c_str(), "rb")) {
    if (!f_) throw IngestError("cannot open " + path.string());
  }
  ~FileSource() override {
    if (f_) std::fclose(f_);
  }
  size_t read(char* dst, size_t cap) override { return std::fread(dst, 1, cap, f_); }

 private:
  std::FILE* f_;
};

class MemorySource : public ByteSource {
 public:
  explicit MemorySource(std::string data) : data_(std::move(data)) {}
  size_t read(char* dst, size_t cap) override {
    size_t n = std::min(cap, data_.size() - pos_);
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
    return n;
  }

 private:
  std::string data_;
  size_t pos_ = 0;
};

// Serves a few already-read bytes before the wrapped source.
class PrefixSource : public ByteSource {
 public:
  PrefixSource(std::string prefix, std::unique_ptr<ByteSource> inner)
      : prefix_(std::move(prefix)), inner_(std::move(inner)) {}
  size_t read(char* dst, size_t cap) override {
    if (pos_ < prefix_.size()) {
      size_t n = std::min(cap, prefix_.size() - pos_);
      std::memcpy(dst, prefix_.data() + pos_, n);
      pos_ += n;
      return n;
    }
    return inner_->read(dst, cap);
  }

 private:
  std::string prefix_;
  size_t pos_ = 0;
  std::unique_ptr<ByteSource> inner_;
};

class GzipSource : public ByteSource {
 public:
  explicit GzipSource(std::unique_ptr<ByteSource> inner)
      : inner_(std::move(inner)), in_buf_(1 << 18) {
    std::memset(&strm_, 0, sizeof(strm_));
    if (inflateInit2(&strm_, 15 + 16) != Z_OK) {
      throw IngestError("zlib: inflateInit failed");
    }
  }
  ~GzipSource() override { inflateEnd(&strm_); }

  size_t read(char* dst, size_t cap) override {
    if (finished_) return 0;
    strm_.next_out = reinterpret_cast<Bytef*>(dst);
    strm_.avail_out = static_cast<uInt>(cap);
    while (strm_.avail_out > 0 && !finished_) {
      if (strm_.avail_in == 0 && !inner_eof_) {
        size_t got = inner_->read(in_buf_.data(), in_buf_.size());
        if (got == 0) inner_eof_ = true;
        strm_.next_in = reinterpret_cast<Bytef*>(in_buf_.data());
        strm_.avail_in = static_cast<uInt>(got);
      }
      if (strm_.avail_in == 0 && inner_eof_) {
        // Ended exactly between members: clean. Mid-member: truncated, keep
        // whatever already decompressed.
        if (!at_boundary_) {
          truncated_ = true;
          error_ = "gzip stream ended mid-member";
        }
        finished_ = true;
        break;
      }
      if (at_boundary_) {
        // Rotated hourly chunks are often concatenated members.
        inflateReset(&strm_);
        at_boundary_ = false;
      }
      int rc = inflate(&strm_, Z_NO_FLUSH);
      if (rc == Z_STREAM_END) {
        at_boundary_ = true;
      } else if (rc != Z_OK && rc != Z_BUF_ERROR) {
        truncated_ = true;
        error_ = "corrupt gzip stream";
        finished_ = true;
      }
    }
    return cap - strm_.avail_out;
  }

  bool truncated() const override { return truncated_; }
  std::string error() const override { return error_; }

 private:
  std::unique_ptr<ByteSource> inner_;
  std::vector<char> in_buf_;
  z_stream strm_;
  bool inner_eof_ = false;
  bool at_boundary_ = true;  // positioned before a member header
  bool finished_ = false;
  bool truncated_ = false;
  std::string error_;
};

}  // namespace
}  // namespace detail

std::optional<size_t> LogSchema::index_of(std::string_view name) const {
  for (size_t i = 0; i < field_names.size(); ++i) {
    if (field_names[i] == name) return i;
  }
  return std::nullopt;
}

LogSchema parse_header(const std::vector<std::string_view>& lines) {
  LogSchema s;
  bool seen_fields = false;
  std::vector<std::string_view> toks;
  for (std::string_view line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] != '#') continue;
    if (starts_with(line, "#separator")) {
      // This one line is space-delimited: the separator is being declared.
      size_t sp = line.find(' ');
      if (sp == std::string_view::npos) throw IngestError("#separator missing a value");
      std::string_view val = trim(line.substr(sp + 1));
      if (val.size() == 4 && val[0] == '\\' && (val[1] == 'x' || val[1] == 'X')) {
        auto hex = [](char c) -> int {
          if (c >= '0' && c <= '9') return c - '0';
          if (c >= 'a' && c <= 'f') return c - 'a' + 10;
          if (c >= 'A' && c <= 'F') return c - 'A' + 10;
          return -1;
        };
        int hi = hex(val[2]), lo = hex(val[3]);
        if (hi < 0 || lo < 0) throw IngestError("separator escape is not hex");
        s.separator = static_cast<char>(hi * 16 + lo);
      } else if (val.size() == 1) {
        s.separator = val[0];
      } else {
        throw IngestError("separator is not a single byte");
      }
      continue;
    }
    split_into(line, s.separator, toks);
    std::string_view directive = toks[0];
    auto value = [&]() { return toks.size() > 1 ? toks[1] : std::string_view(); };
    if (directive == "#set_separator") {
      s.set_separator = std::string(value());
    } else if (directive == "#empty_field") {
      s.empty_marker = std::string(value());
    } else if (directive == "#unset_field") {
      s.unset_marker = std::string(value());
    } else if (directive == "#path") {
      s.path = std::string(value());
    } else if (directive == "#fields") {
      s.field_names.assign(toks.begin() + 1, toks.end());
      seen_fields = true;
    } else if (directive == "#types") {
      s.field_types.assign(toks.begin() + 1, toks.end());
    }
    // #open / #close / anything else: not schema.
  }
  if (!seen_fields || s.field_names.empty()) throw IngestError("header missing #fields");
  if (!s.field_types.empty() && s.field_types.size() != s.field_names.size()) {
    throw IngestError("#types arity differs from #fields");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& n : s.field_names) {
    if (n.empty()) throw IngestError("empty field name in #fields");
    if (!seen.insert(n).second) throw IngestError("duplicate field name '" + n + "'");
  }
  return s;
}

void ParseStats::note_malformed(std::string_view line) {
  ++malformed;
  if (malformed_samples.size() < 10) {
    malformed_samples.emplace_back(line.substr(0, 200));
  }
}

void ParseStats::merge(const ParseStats& other) {
  lines_total += other.lines_total;
  records += other.records;
  malformed += other.malformed;
  utf8_replacements += other.utf8_replacements;
  skipped_projection += other.skipped_projection;
  for (const auto& s : other.malformed_samples) {
    if (malformed_samples.size() >= 10) break;
    malformed_samples.push_back(s);
  }
  clean_close = clean_close && other.clean_close;
  truncated = truncated || other.truncated;
  if (stream_error.empty()) stream_error = other.stream_error;
}

namespace {
constexpr size_t kInitialBuf = 1 << 20;
constexpr size_t kMaxLine = 256u << 20;
}  // namespace

LogReader::LogReader(std::unique_ptr<detail::ByteSource> source, std::string name)
    : source_(std::move(source)), name_(std::move(name)) {
  buf_.resize(kInitialBuf);
}

LogReader::~LogReader() = default;
LogReader::LogReader(LogReader&&) noexcept = default;
LogReader& LogReader::operator=(LogReader&&) noexcept = default;

LogReader LogReader::open(const std::filesystem::path& path) {
  auto file = std::make_unique<detail::FileSource>(path);
  char magic[2];
  size_t got = 0;
  while (got < 2) {
    size_t n = file->read(magic + got, 2 - got);
    if (n == 0) break;
    got += n;
  }
  auto prefixed = std::make_unique<detail::PrefixSource>(std::string(magic, got),
                                                         std::move(file));
  std::unique_ptr<detail::ByteSource> source = std::move(prefixed);
  if (got == 2 && static_cast<unsigned char>(magic[0]) == 0x1f &&
      static_cast<unsigned char>(magic[1]) == 0x8b) {
    source = std::make_unique<detail::GzipSource>(std::move(source));
  }
  LogReader reader(std::move(source), path.string());
  reader.read_schema();
  return reader;
}

LogReader LogReader::from_buffer(std::string data, std::string name) {
  bool gz = data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
            static_cast<unsigned char>(data[1]) == 0x8b;
  std::unique_ptr<detail::ByteSource> source =
      std::make_unique<detail::MemorySource>(std::move(data));
  if (gz) source = std::make_unique<detail::GzipSource>(std::move(source));
  LogReader reader(std::move(source), std::move(name));
  reader.read_schema();
  return reader;
}

bool LogReader::next_line(std::string_view& line) {
  while (true) {
    const char* base = buf_.data();
    const void* nl = std::memchr(base + buf_pos_, '\n', buf_end_ - buf_pos_);
    if (nl) {
      size_t nl_off = static_cast<size_t>(static_cast<const char*>(nl) - base);
      size_t start = buf_pos_;
      buf_pos_ = nl_off + 1;
      size_t len = nl_off - start;
      if (len > 0 && base[start + len - 1] == '\r') --len;
      line = std::string_view(base + start, len);
      return true;
    }
    if (eof_) {
      if (buf_pos_ < buf_end_) {
        size_t start = buf_pos_;
        size_t len = buf_end_ - buf_pos_;
        buf_pos_ = buf_end_;
        if (len > 0 && buf_[start + len - 1] == '\r') --len;
        if (stats_.truncated || len == 0) {
          // A cut stream's trailing fragment is not a record.
          return false;
        }
        line = std::string_view(buf_.data() + start, len);
        return true;
      }
      return false;
    }
    // Compact, grow if a single line fills the buffer, then refill.
    if (buf_pos_ > 0) {
      std::memmove(buf_.data(), buf_.data() + buf_pos_, buf_end_ - buf_pos_);
      buf_end_ -= buf_pos_;
      buf_pos_ = 0;
    }
    if (buf_end_ == buf_.size()) {
      if (buf_.size() >= kMaxLine) throw IngestError(name_ + ": line longer than 256 MB");
      buf_.resize(std::min(buf_.size() * 2, kMaxLine));
    }
    size_t got = source_->read(buf_.data() + buf_end_, buf_.size() - buf_end_);
    if (got == 0) {
      eof_ = true;
      if (source_->truncated()) {
        stats_.truncated = true;
        stats_.stream_error = source_->error();
      }
    } else {
      buf_end_ += got;
    }
  }
}

void LogReader::read_schema() {
  std::vector<std::string> meta;
  std::string first_data;
  bool have_data = false;
  std::string_view line;
  while (next_line(line)) {
    if (!line.empty() && line[0] == '#') {
      meta.emplace_back(line);
      continue;
    }
    first_data.assign(line);
    have_data = true;
    break;
  }
  std::vector<std::string_view> views(meta.begin(), meta.end());
  schema_ = parse_header(views);
  pending_line_ = std::move(first_data);
  pending_valid_ = have_data;
}

bool LogReader::parse_into(std::string_view line, RecordView& out) {
  split_into(line, schema_.separator, scratch_);
  if (scratch_.size() != schema_.field_names.size()) return false;
  out.schema_ = &schema_;
  out.fields_.resize(scratch_.size());
  out.set_.resize(scratch_.size());
  out.unescape_buf_.clear();
  out.unescape_buf_.reserve(line.size());
  for (size_t i = 0; i < scratch_.size(); ++i) {
    std::string_view f = scratch_[i];
    if (f == schema_.unset_marker) {
      out.set_[i] = 0;
      out.fields_[i] = {};
      continue;
    }
    out.set_[i] = 1;
    if (f == schema_.empty_marker) {
      out.fields_[i] = std::string_view();
      continue;
    }
    if (f.find('\\') != std::string_view::npos) {
      // Zeek writes separator bytes inside values as \xHH. unescape_buf_ is
      // pre-reserved, so stored views never move.
      size_t start = out.unescape_buf_.size();
      auto hex = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
      };
      for (size_t k = 0; k < f.size();) {
        if (f[k] == '\\' && k + 3 < f.size() && (f[k + 1] == 'x' || f[k + 1] == 'X') &&
            hex(f[k + 2]) >= 0 && hex(f[k + 3]) >= 0) {
          out.unescape_buf_.push_back(
              static_cast<char>(hex(f[k + 2]) * 16 + hex(f[k + 3])));
          k += 4;
        } else {
          out.unescape_buf_.push_back(f[k]);
          ++k;
        }
      }
      out.fields_[i] =
          std::string_view(out.unescape_buf_.data() + start, out.unescape_buf_.size() - start);
    } else {
      out.fields_[i] = f;
    }
  }
  return true;
}

bool LogReader::next(RecordView& out) {
  while (true) {
    std::string_view line;
    if (pending_valid_) {
      line = pending_line_;
      pending_valid_ = false;
    } else if (!next_line(line)) {
      return false;
    }
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (starts_with(line, "#close")) stats_.clean_close = true;
      continue;
    }
    ++stats_.lines_total;
    if (parse_into(line, out)) {
      ++stats_.records;
      return true;
    }
    stats_.note_malformed(line);
  }
}

namespace {

// ASCII fast path: a byte under 0x80 can never be part of an invalid
// sequence, so most fields skip validation entirely.
std::string sanitize_field(std::string_view v, ParseStats& stats) {
  bool ascii = true;
  for (unsigned char c : v) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii || is_valid_utf8(v)) return std::string(v);
  return replace_invalid_utf8(v, stats.utf8_replacements);
}

std::optional<std::string> opt_field(const RecordView& rec, std::string_view name,
                                     ParseStats& stats) {
  auto idx = rec.schema().index_of(name);
  if (!idx || !rec.is_set(*idx)) return std::nullopt;
  return sanitize_field(rec.raw(*idx), stats);
}

std::optional<ConnTuple> project_conn(const RecordView& rec, ParseStats& stats) {
  const LogSchema& s = rec.schema();
  auto ts_i = s.index_of("ts");
  auto uid_i = s.index_of("uid");
  auto oh_i = s.index_of("id.orig_h");
  auto op_i = s.index_of("id.orig_p");
  auto rh_i = s.index_of("id.resp_h");
  auto rp_i = s.index_of("id.resp_p");
  if (!ts_i || !uid_i || !oh_i || !op_i || !rh_i || !rp_i) return std::nullopt;
  for (size_t i : {*ts_i, *uid_i, *oh_i, *op_i, *rh_i, *rp_i}) {
    if (!rec.is_set(i)) return std::nullopt;
  }
  ConnTuple c;
  auto ts = parse_ts_micros(rec.raw(*ts_i));
  if (!ts || *ts <= 0) return std::nullopt;
  c.ts = *ts;
  c.uid = sanitize_field(rec.raw(*uid_i), stats);
  auto parse_port = [](std::string_view p) -> std::optional<std::uint16_t> {
    if (p.empty() || p.size() > 5) return std::nullopt;
    unsigned v = 0;
    for (char ch : p) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + static_cast<unsigned>(ch - '0');
    }
    if (v < 1 || v > 65535) return std::nullopt;
    return static_cast<std::uint16_t>(v);
  };
  auto oip = IpAddress::parse(rec.raw(*oh_i));
  auto rip = IpAddress::parse(rec.raw(*rh_i));
  auto oport = parse_port(rec.raw(*op_i));
  auto rport = parse_port(rec.raw(*rp_i));
  if (!oip || !rip || !oport || !rport) return std::nullopt;
  c.orig_ip = *oip;
  c.orig_port = *oport;
  c.resp_ip = *rip;
  c.resp_port = *rport;
  return c;
}

void check_path(const RecordView& rec, std::initializer_list<std::string_view> accepted,
                std::string_view projection) {
  for (auto p : accepted) {
    if (rec.schema().path == p) return;
  }
  throw IngestError(std::string(projection) + " applied to a '" + rec.schema().path +
                    "' log");
}

}  // namespace

std::optional<SshObservation> project_ssh(const RecordView& rec, ParseStats& stats) {
  check_path(rec, {"ssh"}, "project_ssh");
  auto conn = project_conn(rec, stats);
  if (!conn) {
    ++stats.skipped_projection;
    return std::nullopt;
  }
  SshObservation o;
  o.conn = std::move(*conn);
  o.client_banner = opt_field(rec, "client", stats).value_or("");
  o.server_banner = opt_field(rec, "server", stats).value_or("");
  o.cipher_alg = opt_field(rec, "cipher_alg", stats);
  o.mac_alg = opt_field(rec, "mac_alg", stats);
  o.kex_alg = opt_field(rec, "kex_alg", stats);
  o.host_key_alg = opt_field(rec, "host_key_alg", stats);
  return o;
}

namespace {

std::optional<std::string> normalize_tls_version(std::string_view v) {
  if (v == "TLSv1.3" || v == "TLSv13") return "TLSv1.3";
  if (v == "TLSv1.2" || v == "TLSv12") return "TLSv1.2";
  if (v == "TLSv1.1" || v == "TLSv11") return "TLSv1.1";
  if (v == "TLSv1.0" || v == "TLSv10" || v == "TLSv1") return "TLSv1.0";
  // SSLv3 and friends stay out of the TLS version domain.
  return std::nullopt;
}

}  // namespace

std::optional<TlsObservation> project_tls(const RecordView& rec, ParseStats& stats) {
  check_path(rec, {"ssl", "tls"}, "project_tls");
  auto conn = project_conn(rec, stats);
  if (!conn) {
    ++stats.skipped_projection;
    return std::nullopt;
  }
  TlsObservation o;
  o.conn = std::move(*conn);
  if (auto v = opt_field(rec, "version", stats)) o.tls_version = normalize_tls_version(*v);
  o.cipher_suite = opt_field(rec, "cipher", stats);
  o.curve_or_group = opt_field(rec, "curve", stats);
  return o;
}

std::optional<RdpObservation> project_rdp(const RecordView& rec, ParseStats& stats) {
  check_path(rec, {"rdp"}, "project_rdp");
  auto conn = project_conn(rec, stats);
  if (!conn) {
    ++stats.skipped_projection;
    return std::nullopt;
  }
  RdpObservation o;
  o.conn = std::move(*conn);
  o.security_protocol = opt_field(rec, "security_protocol", stats);
  return o;
}

}  // namespace pqcscope

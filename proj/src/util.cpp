#include "pqcscope/util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace pqcscope {

namespace {

std::string format_scaled(long long scaled, int decimals) {
  // scaled is the value multiplied by 10^decimals, already rounded.
  bool neg = scaled < 0;
  unsigned long long mag = neg ? -static_cast<unsigned long long>(scaled) : scaled;
  unsigned long long div = 1;
  for (int i = 0; i < decimals; ++i) div *= 10;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%llu.%0*llu", neg ? "-" : "", mag / div, decimals,
                mag % div);
  return buf;
}

}  // namespace

std::string format_percent2(double percent) {
  return format_scaled(std::llround(percent * 100.0), 2);
}

std::string format_rate_percent(double ratio) {
  double pct = ratio * 100.0;
  if (pct == 0.0) return "0.00%";
  if (std::abs(pct) >= 0.05) return format_percent2(pct) + "%";
  double scale = 1000.0;
  for (int d = 3; d <= 8; ++d, scale *= 10.0) {
    long long scaled = std::llround(pct * scale);
    if (scaled != 0) return format_scaled(scaled, d) + "%";
  }
  return format_scaled(0, 8) + "%";
}

std::string csv_escape(std::string_view field) {
  bool needs_quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

void split_into(std::string_view s, char sep, std::vector<std::string_view>& out) {
  out.clear();
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

namespace {

// Returns length of a valid UTF-8 sequence starting at i, or 0 if invalid.
size_t utf8_seq_len(std::string_view s, size_t i) {
  auto byte = [&](size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char c = byte(i);
  if (c < 0x80) return 1;
  size_t len;
  std::uint32_t cp;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
    cp = c & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  if (len == 2 && cp < 0x80) return 0;
  if (len == 3 && cp < 0x800) return 0;
  if (len == 4 && cp < 0x10000) return 0;
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  for (size_t i = 0; i < s.size();) {
    size_t len = utf8_seq_len(s, i);
    if (len == 0) return false;
    i += len;
  }
  return true;
}

std::string replace_invalid_utf8(std::string_view s, std::uint64_t& replacements) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size();) {
    size_t len = utf8_seq_len(s, i);
    if (len == 0) {
      out.append("\xEF\xBF\xBD");  // U+FFFD
      ++replacements;
      ++i;
      // Swallow the rest of the broken run so one bad sequence yields one marker.
      while (i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) ++i;
    } else {
      out.append(s.substr(i, len));
      i += len;
    }
  }
  return out;
}

// Day-count conversions after Howard Hinnant's civil calendar algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

std::optional<std::int64_t> parse_ts_micros(std::string_view s) {
  if (s.empty()) return std::nullopt;
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i >= s.size() || s[i] < '0' || s[i] > '9') return std::nullopt;
  std::int64_t secs = 0;
  for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
    if (secs > 9'000'000'000'000LL) return std::nullopt;
    secs = secs * 10 + (s[i] - '0');
  }
  std::int64_t usec = 0;
  if (i < s.size()) {
    if (s[i] != '.') return std::nullopt;
    ++i;
    int digits = 0;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
      if (digits < 6) {
        usec = usec * 10 + (s[i] - '0');
        ++digits;
      }
    }
    if (i != s.size()) return std::nullopt;
    while (digits < 6) {
      usec *= 10;
      ++digits;
    }
  }
  std::int64_t total = secs * 1'000'000 + usec;
  return neg ? -total : total;
}

std::optional<std::int64_t> parse_date_micros(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto num = [&](size_t off, size_t len) -> std::optional<int> {
    int v = 0;
    for (size_t k = off; k < off + len; ++k) {
      if (s[k] < '0' || s[k] > '9') return std::nullopt;
      v = v * 10 + (s[k] - '0');
    }
    return v;
  };
  auto y = num(0, 4), m = num(5, 2), d = num(8, 2);
  if (!y || !m || !d) return std::nullopt;
  if (*m < 1 || *m > 12 || *d < 1 || *d > 31) return std::nullopt;
  return days_from_civil(*y, static_cast<unsigned>(*m), static_cast<unsigned>(*d)) *
         86400LL * 1'000'000LL;
}

std::int64_t micros_at(int y, unsigned m, unsigned d, unsigned hh, unsigned mm, unsigned ss,
                       unsigned usec) {
  return ((days_from_civil(y, m, d) * 86400LL + hh * 3600LL + mm * 60LL + ss) * 1'000'000LL) +
         usec;
}

std::string format_iso8601_micros(std::int64_t micros) {
  std::int64_t days = micros / 86'400'000'000LL;
  std::int64_t rem = micros % 86'400'000'000LL;
  if (rem < 0) {
    rem += 86'400'000'000LL;
    --days;
  }
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  unsigned hh = static_cast<unsigned>(rem / 3'600'000'000LL);
  unsigned mm = static_cast<unsigned>((rem / 60'000'000LL) % 60);
  unsigned ss = static_cast<unsigned>((rem / 1'000'000LL) % 60);
  unsigned us = static_cast<unsigned>(rem % 1'000'000LL);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02u:%02u:%02u.%06uZ", y, m, d, hh, mm, ss,
                us);
  return buf;
}

std::string format_ts_decimal(std::int64_t micros) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%06lld", static_cast<long long>(micros / 1'000'000),
                static_cast<long long>(micros % 1'000'000));
  return buf;
}

}  // namespace pqcscope

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pqcscope {

// Percentage display used by distribution tables: two decimals, halves
// rounded away from zero. Input is already in percentage points.
std::string format_percent2(double percent);

// Display rule for adoption-style rates (input is a plain ratio, output
// includes the trailing '%'). Rates at or above 0.05 percentage points use
// the two-decimal rule; smaller nonzero rates widen to the first precision
// (three decimals and up, capped at eight) where the rounding is nonzero,
// so small adoption signals survive display.
std::string format_rate_percent(double ratio);

std::string csv_escape(std::string_view field);
std::string to_hex(std::span<const std::uint8_t> bytes);

void split_into(std::string_view s, char sep, std::vector<std::string_view>& out);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

bool is_valid_utf8(std::string_view s);
// Replaces every invalid byte run with U+FFFD and bumps the counter once per
// replacement emitted.
std::string replace_invalid_utf8(std::string_view s, std::uint64_t& replacements);

// Proleptic Gregorian <-> day-count conversions (UTC only, no timezone
// machinery anywhere in this codebase).
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

// Zeek timestamps: decimal seconds with up to microsecond fraction.
std::optional<std::int64_t> parse_ts_micros(std::string_view s);
// "YYYY-MM-DD" -> UTC midnight in microseconds.
std::optional<std::int64_t> parse_date_micros(std::string_view s);
std::int64_t micros_at(int y, unsigned m, unsigned d, unsigned hh = 0, unsigned mm = 0,
                       unsigned ss = 0, unsigned usec = 0);

std::string format_iso8601_micros(std::int64_t micros);
// Zeek wire form: "1672531200.000000".
std::string format_ts_decimal(std::int64_t micros);

}  // namespace pqcscope

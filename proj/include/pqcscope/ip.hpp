#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace pqcscope {

// Either family in one value; v4 occupies bytes[0..3].
struct IpAddress {
  std::array<std::uint8_t, 16> bytes{};
  bool v4 = true;

  static std::optional<IpAddress> parse(std::string_view text);
  std::string str() const;

  int width() const { return v4 ? 32 : 128; }
  // MSB-first bit addressing within the family's width.
  bool bit(int i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1; }

  friend bool operator==(const IpAddress&, const IpAddress&) = default;
};

// True when addr falls inside prefix/len (families must match).
bool prefix_contains(const IpAddress& prefix, int len, const IpAddress& addr);

struct IpAddressHash {
  size_t operator()(const IpAddress& a) const noexcept;
};

}  // namespace pqcscope

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace pqcscope {

using Digest512 = std::array<std::uint8_t, 64>;

Digest512 sha512(std::span<const std::uint8_t> data);
Digest512 sha512(std::string_view data);
// Digest of a || b without materializing the concatenation.
Digest512 sha512_concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace pqcscope

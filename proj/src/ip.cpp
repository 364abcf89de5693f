#include "pqcscope/ip.hpp"

#include <arpa/inet.h>

#include <cstring>

namespace pqcscope {

std::optional<IpAddress> IpAddress::parse(std::string_view text) {
  if (text.empty() || text.size() >= INET6_ADDRSTRLEN) return std::nullopt;
  char buf[INET6_ADDRSTRLEN];
  std::memcpy(buf, text.data(), text.size());
  buf[text.size()] = '\0';
  IpAddress out;
  in_addr a4;
  if (inet_pton(AF_INET, buf, &a4) == 1) {
    out.v4 = true;
    std::memcpy(out.bytes.data(), &a4, 4);
    return out;
  }
  in6_addr a6;
  if (inet_pton(AF_INET6, buf, &a6) == 1) {
    out.v4 = false;
    std::memcpy(out.bytes.data(), &a6, 16);
    return out;
  }
  return std::nullopt;
}

std::string IpAddress::str() const {
  char buf[INET6_ADDRSTRLEN];
  if (v4) {
    in_addr a4;
    std::memcpy(&a4, bytes.data(), 4);
    inet_ntop(AF_INET, &a4, buf, sizeof(buf));
  } else {
    in6_addr a6;
    std::memcpy(&a6, bytes.data(), 16);
    inet_ntop(AF_INET6, &a6, buf, sizeof(buf));
  }
  return buf;
}

bool prefix_contains(const IpAddress& prefix, int len, const IpAddress& addr) {
  if (prefix.v4 != addr.v4) return false;
  for (int i = 0; i < len; ++i) {
    if (prefix.bit(i) != addr.bit(i)) return false;
  }
  return true;
}

size_t IpAddressHash::operator()(const IpAddress& a) const noexcept {
  std::uint64_t h = a.v4 ? 0x9e3779b97f4a7c15ULL : 0xc2b2ae3d27d4eb4fULL;
  for (int i = 0; i < 16; i += 8) {
    std::uint64_t chunk;
    std::memcpy(&chunk, a.bytes.data() + i, 8);
    h ^= chunk + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<size_t>(h);
}

}  // namespace pqcscope

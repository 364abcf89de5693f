#include "pqcscope/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace pqcscope {

namespace {

struct CtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

Digest512 digest_parts(std::span<const std::uint8_t> a, const std::uint8_t* b_data,
                       size_t b_size) {
  std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha512(), nullptr) != 1) {
    throw std::runtime_error("sha512: context init failed");
  }
  if (!a.empty() && EVP_DigestUpdate(ctx.get(), a.data(), a.size()) != 1) {
    throw std::runtime_error("sha512: update failed");
  }
  if (b_size > 0 && EVP_DigestUpdate(ctx.get(), b_data, b_size) != 1) {
    throw std::runtime_error("sha512: update failed");
  }
  Digest512 out;
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != out.size()) {
    throw std::runtime_error("sha512: finalize failed");
  }
  return out;
}

}  // namespace

Digest512 sha512(std::span<const std::uint8_t> data) {
  return digest_parts(data, nullptr, 0);
}

Digest512 sha512(std::string_view data) {
  return digest_parts(
      {reinterpret_cast<const std::uint8_t*>(data.data()), data.size()}, nullptr, 0);
}

Digest512 sha512_concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  return digest_parts(a, b.data(), b.size());
}

}  // namespace pqcscope

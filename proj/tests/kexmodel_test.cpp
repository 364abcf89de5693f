#include "pqcscope/kexmodel.hpp"

#include <doctest.h>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

using namespace pqcscope;

namespace {

std::string to_hex(const Digest512& d) {
  static const char* k = "0123456789abcdef";
  std::string out;
  out.reserve(128);
  for (auto b : d) {
    out.push_back(k[b >> 4]);
    out.push_back(k[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> bytes(std::string_view s) {
  return {s.begin(), s.end()};
}

// Independent irreducibility oracle: trial division of x^p - x - 1 by every
// monic polynomial of degree 1..p/2 over F_q. Coefficients low-order first.
bool irreducible_by_trial_division(std::uint32_t p, std::uint32_t q) {
  std::vector<std::uint32_t> f(p + 1, 0);
  f[0] = q - 1;
  f[1] = q - 1;
  f[p] = 1;
  for (std::uint32_t d = 1; d <= p / 2; ++d) {
    std::vector<std::uint32_t> g(d + 1, 0);
    g[d] = 1;
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < d; ++i) combos *= q;
    for (std::uint64_t idx = 0; idx < combos; ++idx) {
      std::uint64_t v = idx;
      for (std::uint32_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % q);
        v /= q;
      }
      auto rem = f;
      while (rem.size() > d) {
        std::uint32_t lead = rem.back();
        if (lead != 0) {
          // g is monic, so the quotient coefficient is just the leading term.
          std::size_t shift = rem.size() - 1 - d;
          for (std::size_t k = 0; k <= d; ++k) {
            rem[shift + k] = (rem[shift + k] + (q - lead) * g[k]) % q;
          }
        }
        rem.pop_back();
      }
      bool zero = true;
      for (auto c : rem) {
        if (c != 0) zero = false;
      }
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("sha512 matches the standard reference vectors") {
  CHECK(to_hex(sha512("abc")) ==
        "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a"
        "2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f");
  CHECK(to_hex(sha512("")) ==
        "cf83e1357eefb8bdf1542850d66d8007d620e4050b5715dc83f4a921d36ce9ce"
        "47d0d13c5d85f2b0ff8318d2877eec2f63b931bd47417a81a538327af927da3e");
  CHECK(to_hex(sha512("abcdefghbcdefghicdefghijdefghijkefghijklfghijklmghijklmnhijklmno"
                      "ijklmnopjklmnopqklmnopqrlmnopqrsmnopqrstnopqrstu")) ==
        "8e959b75dae313da8cf4f72814fc143f8f7779c6eb9f7fa17299aeadb6889018"
        "501d289e4900f7e4331b99dec4b5433ac7d329eeb6dd26545e96e55b874be909");
}

TEST_CASE("sha512_concat equals the digest of the concatenation") {
  auto a = bytes("abcdefgh");
  auto b = bytes("ijklmnop");
  auto joined = bytes("abcdefghijklmnop");
  CHECK(sha512_concat(a, b) == sha512(std::span<const std::uint8_t>(joined)));
  std::vector<std::uint8_t> empty;
  CHECK(sha512_concat(empty, a) == sha512(std::span<const std::uint8_t>(a)));
}

TEST_CASE("probable-prime test rejects known pseudoprime traps") {
  CHECK_FALSE(is_probable_prime(BigInt(0)));
  CHECK_FALSE(is_probable_prime(BigInt(1)));
  CHECK(is_probable_prime(BigInt(2)));
  CHECK(is_probable_prime(BigInt(3)));
  CHECK_FALSE(is_probable_prime(BigInt(4)));
  CHECK_FALSE(is_probable_prime(BigInt(561)));         // Carmichael
  CHECK_FALSE(is_probable_prime(BigInt(2047)));        // 23 * 89, base-2 liar
  CHECK_FALSE(is_probable_prime(BigInt(3215031751)));  // liar to bases 2,3,5,7
  CHECK(is_probable_prime(BigInt(761)));
  CHECK(is_probable_prime(BigInt(4591)));
  CHECK(is_probable_prime((BigInt(1) << 61) - 1));
  CHECK(is_probable_prime((BigInt(1) << 89) - 1));
  CHECK(is_probable_prime((BigInt(1) << 255) - 19));
  // Perfect squares are where weak Lucas setups loop or err.
  BigInt m89 = (BigInt(1) << 89) - 1;
  CHECK_FALSE(is_probable_prime(m89 * m89));
  CHECK_FALSE(is_probable_prime(((BigInt(1) << 255) - 19) * 3));
}

TEST_CASE("euler criterion agrees with brute-force squares") {
  for (std::uint32_t m : {11u, 13u, 10007u}) {
    std::set<std::uint32_t> squares;
    for (std::uint64_t x = 1; x < m; ++x) {
      squares.insert(static_cast<std::uint32_t>(x * x % m));
    }
    for (std::uint32_t a = 0; a < std::min(m, 200u); ++a) {
      int want = (a % m == 0) ? 0 : (squares.count(a) ? 1 : -1);
      CHECK(euler_square_test(BigInt(a), BigInt(m)) == want);
    }
    // And probe above the modulus to exercise reduction.
    CHECK(euler_square_test(BigInt(m) + 4, BigInt(m)) == 1);
    CHECK(euler_square_test(BigInt(m) * 2, BigInt(m)) == 0);
  }
}

TEST_CASE("trinomial irreducibility agrees with trial division over small fields") {
  const std::uint32_t ps[] = {2, 3, 5, 7};
  const std::uint32_t qs[] = {2, 3, 5, 7, 11, 13};
  for (auto p : ps) {
    for (auto q : qs) {
      CAPTURE(p);
      CAPTURE(q);
      CHECK(trinomial_irreducible(p, q) == irreducible_by_trial_division(p, q));
    }
  }
  // A few entries pinned independently of the oracle above:
  CHECK(trinomial_irreducible(2, 2));        // no roots in F2
  CHECK_FALSE(trinomial_irreducible(2, 5));  // x^2-x-1 = (x-3)^2 over F5
  CHECK(trinomial_irreducible(3, 2));
  CHECK_FALSE(trinomial_irreducible(5, 2));
}

TEST_CASE("trinomial check refuses composite or oversized inputs") {
  CHECK_FALSE(trinomial_irreducible(4, 2));   // composite degree
  CHECK_FALSE(trinomial_irreducible(3, 9));   // composite field order
  CHECK_FALSE(trinomial_irreducible(1, 2));
  CHECK_FALSE(trinomial_irreducible(3, 0x10000));
}

TEST_CASE("lattice parameter validation passes on the shipped set") {
  ValidationReport r = validate_sntrup_params(SntrupParams{});
  REQUIRE(r.checks.size() == 3);
  CHECK(r.checks[0].name == "p-primality");
  CHECK(r.checks[1].name == "q-primality");
  CHECK(r.checks[2].name == "trinomial-irreducibility");
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  REQUIRE(r.w_in_range.has_value());
  CHECK(*r.w_in_range);
  CHECK(r.all_passed());
}

TEST_CASE("lattice parameter validation flags broken sets") {
  SntrupParams composite_p;
  composite_p.p = 760;
  ValidationReport r = validate_sntrup_params(composite_p);
  CHECK_FALSE(r.checks[0].passed);
  CHECK_FALSE(r.all_passed());

  SntrupParams zero_w;
  zero_w.w = 0;
  ValidationReport r2 = validate_sntrup_params(zero_w);
  REQUIRE(r2.w_in_range.has_value());
  CHECK_FALSE(*r2.w_in_range);

  SntrupParams heavy_w;
  heavy_w.w = 761;
  CHECK_FALSE(*validate_sntrup_params(heavy_w).w_in_range);
}

TEST_CASE("curve parameter validation passes the shipped set and flags bad ones") {
  ValidationReport r = validate_curve_params(CurveParams{});
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].name == "modulus-primality");
  CHECK(r.checks[1].name == "a2-minus-4-nonresidue");
  CHECK(r.all_passed());
  CHECK_FALSE(r.w_in_range.has_value());

  CurveParams even_modulus;
  even_modulus.modulus = (BigInt(1) << 255) - 20;
  CHECK_FALSE(validate_curve_params(even_modulus).checks[0].passed);

  CurveParams degenerate;
  degenerate.a_coefficient = 2;  // A^2 - 4 == 0
  CHECK_FALSE(validate_curve_params(degenerate).checks[1].passed);
}

TEST_CASE("algorithm policies reject empty and duplicated preference lists") {
  CHECK_THROWS_AS(AlgorithmPolicy(std::vector<std::string>{}), std::invalid_argument);
  CHECK_THROWS_AS(AlgorithmPolicy({"a", "b", "a"}), std::invalid_argument);
  AlgorithmPolicy ok({"x", "y"});
  CHECK(ok.preferences() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("negotiation follows client preference order") {
  AlgorithmPolicy client({kHybridKexId, "curve25519-sha256"});
  AlgorithmPolicy server({"curve25519-sha256", kHybridKexId});
  auto chosen = negotiate(client, server);
  REQUIRE(chosen.has_value());
  CHECK(*chosen == kHybridKexId);

  AlgorithmPolicy prefers_classic({"curve25519-sha256", kHybridKexId});
  CHECK(*negotiate(prefers_classic, server) == "curve25519-sha256");

  AlgorithmPolicy other({"ecdh-sha2-nistp256"});
  CHECK_FALSE(negotiate(client, other).has_value());
}

TEST_CASE("hybrid secret combination is a plain digest of the concatenation") {
  CHECK(to_hex(hybrid_combine(bytes("a"), bytes("bc"))) ==
        "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a"
        "2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f");
  CHECK_THROWS_AS(hybrid_combine({}, bytes("x")), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_combine(bytes("x"), {}), std::invalid_argument);
}

TEST_CASE("simulated handshake agrees, is deterministic, and logs five steps") {
  AlgorithmPolicy both({kHybridKexId, "curve25519-sha256"});
  auto r = simulate_handshake(both, both, 7, 9);
  REQUIRE(r.has_value());
  CHECK(r->negotiated == kHybridKexId);
  CHECK(r->hybrid);
  CHECK(r->keys_agree());
  REQUIRE(r->transcript.size() == 5);
  CHECK(r->transcript[0].name == "EphemeralKeyGeneration");
  CHECK(r->transcript[1].name == "PublicKeyExchange");
  CHECK(r->transcript[2].name == "SharedSecretCalculation");
  CHECK(r->transcript[3].name == "CombiningAndHashing");
  CHECK(r->transcript[4].name == "FinalKey");

  auto again = simulate_handshake(both, both, 7, 9);
  REQUIRE(again.has_value());
  CHECK(again->client_key == r->client_key);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(again->transcript[i].detail == r->transcript[i].detail);
  }

  auto other_kem = simulate_handshake(both, both, 8, 9);
  CHECK(other_kem->client_key != r->client_key);
  auto other_ecdh = simulate_handshake(both, both, 7, 10);
  CHECK(other_ecdh->client_key != r->client_key);
  CHECK(other_kem->client_key != other_ecdh->client_key);
}

TEST_CASE("classical-only negotiation still agrees but is not hybrid") {
  AlgorithmPolicy classic({"curve25519-sha256"});
  auto r = simulate_handshake(classic, classic, 1, 2);
  REQUIRE(r.has_value());
  CHECK(r->negotiated == "curve25519-sha256");
  CHECK_FALSE(r->hybrid);
  CHECK(r->keys_agree());
  REQUIRE(r->transcript.size() == 5);

  AlgorithmPolicy hybrid_only({kHybridKexId});
  CHECK_FALSE(simulate_handshake(hybrid_only, classic, 1, 2).has_value());
}

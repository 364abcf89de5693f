#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pqcscope/hash.hpp"

namespace pqcscope {

using BigInt = boost::multiprecision::cpp_int;

// Parameter set of the lattice half of the hybrid exchange.
struct SntrupParams {
  std::uint32_t p = 761;
  std::uint32_t q = 4591;
  std::uint32_t w = 286;
};

// Montgomery curve y^2 = x^3 + A x^2 + x over a prime field.
struct CurveParams {
  BigInt modulus = (BigInt(1) << 255) - 19;
  BigInt a_coefficient = 486662;
};

struct ParamCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ParamCheck> checks;
  // Weight bound 0 < w < p, reported beside the named checks. Only present
  // for the lattice parameter report.
  std::optional<bool> w_in_range;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

// Miller-Rabin with 64 pseudorandom witnesses from a fixed-seed generator,
// then a strong Lucas test with Selfridge's parameter choice. No fixed
// witness set is deterministic at 255-bit sizes, so this is an
// overwhelming-confidence check rather than a proof.
bool is_probable_prime(const BigInt& n);

// Legendre/Jacobi-style squareness decision by Euler's criterion:
// a^((m-1)/2) mod m for odd prime m. Returns 1 (square), -1 (non-square),
// or 0 (a divisible by m).
int euler_square_test(const BigInt& a, const BigInt& odd_prime_modulus);

// Whether x^p - x - 1 is irreducible over the field of q elements, decided
// by Frobenius powering: for prime degree p the polynomial is irreducible
// iff x^(q^p) == x (mod f) and x^q != x (mod f). Requires p and q prime;
// composite inputs return false.
bool trinomial_irreducible(std::uint32_t p, std::uint32_t q);

// Three named checks: p-primality, q-primality, trinomial-irreducibility.
// The weight invariant rides along as w_in_range. Pure and reproducible.
ValidationReport validate_sntrup_params(const SntrupParams& params);

// Two named checks: modulus-primality, and (A^2 - 4) being a non-square by
// the Euler criterion. A^2 - 4 == 0 counts as a degenerate square and fails.
ValidationReport validate_curve_params(const CurveParams& params);

inline constexpr const char* kHybridKexId = "sntrup761x25519-sha512@openssh.com";

// Ordered preference list one endpoint offers. Throws std::invalid_argument
// on an empty list or duplicates.
class AlgorithmPolicy {
 public:
  explicit AlgorithmPolicy(std::vector<std::string> preferences);
  const std::vector<std::string>& preferences() const { return prefs_; }

 private:
  std::vector<std::string> prefs_;
};

// First entry of the client's list that the server also offers (SSH
// convention); nullopt when the lists share nothing.
std::optional<std::string> negotiate(const AlgorithmPolicy& client,
                                     const AlgorithmPolicy& server);

// SHA-512 over secret_kem followed by secret_ecdh. The order is fixed so both
// sides and the test vectors agree on one canonical digest. Throws
// std::invalid_argument on an empty component.
Digest512 hybrid_combine(const std::vector<std::uint8_t>& secret_kem,
                         const std::vector<std::uint8_t>& secret_ecdh);

struct HandshakeStep {
  std::string name;
  std::string detail;
};

struct HandshakeResult {
  std::string negotiated;
  bool hybrid = false;
  Digest512 client_key{};
  Digest512 server_key{};
  // Exactly five steps, in order: EphemeralKeyGeneration, PublicKeyExchange,
  // SharedSecretCalculation, CombiningAndHashing, FinalKey.
  std::vector<HandshakeStep> transcript;

  bool keys_agree() const { return client_key == server_key; }
};

// Runs the exchange end to end with toy stand-ins for the primitives: a
// KDF-masked KEM whose two sides recover the same secret by construction,
// and a commutative fixed-base modular exchange. The protocol shape is the
// real one; the primitives deliberately are not. kem_seed drives the lattice
// side's randomness, ecdh_seed the curve side's. Returns nullopt when
// negotiation fails; when the negotiated identifier is not the hybrid one,
// the final key hashes the single curve secret.
std::optional<HandshakeResult> simulate_handshake(const AlgorithmPolicy& client,
                                                  const AlgorithmPolicy& server,
                                                  std::uint64_t kem_seed,
                                                  std::uint64_t ecdh_seed);

}  // namespace pqcscope

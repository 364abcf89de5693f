#include "pqcscope/kexmodel.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include <boost/multiprecision/integer.hpp>

#include "pqcscope/rng.hpp"
#include "pqcscope/util.hpp"

namespace pqcscope {

namespace {

constexpr std::uint64_t kWitnessSeed = 0x70716373636f7065ULL;  // stable across runs

const int kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                            43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(BigInt a, BigInt n) {
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      unsigned r = static_cast<unsigned>(n & 7);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool miller_rabin_round(const BigInt& n, const BigInt& n_minus_1, const BigInt& d,
                        unsigned s, const BigInt& witness) {
  BigInt x = boost::multiprecision::powm(witness, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

// Strong Lucas probable-prime test, Selfridge parameters. Callers have
// already ruled out small factors, even n, and perfect squares.
bool strong_lucas(const BigInt& n) {
  BigInt d_param = 5;
  int sign = 1;
  for (;;) {
    BigInt candidate = sign > 0 ? d_param : -d_param;
    int j = jacobi(candidate, n);
    if (j == -1) {
      d_param = candidate;
      break;
    }
    if (j == 0 && boost::multiprecision::abs(candidate) != n) return false;
    d_param += 2;
    sign = -sign;
    if (d_param > 1000) {
      // Unreachable for non-squares; defensive bail rather than spin.
      return false;
    }
  }
  // P = 1, Q = (1 - D) / 4.
  BigInt q_param = (1 - d_param) / 4;

  BigInt delta = n + 1;
  unsigned s = 0;
  while ((delta & 1) == 0) {
    delta >>= 1;
    ++s;
  }
  // delta is now the odd cofactor; walk its bits most significant first.
  auto mod_n = [&n](BigInt v) {
    v %= n;
    if (v < 0) v += n;
    return v;
  };
  auto halve = [&n](BigInt v) {
    if ((v & 1) != 0) v += n;
    return v >> 1;
  };

  BigInt u = 1, v = 1, qk = mod_n(q_param);
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(delta));
  for (int i = static_cast<int>(bits) - 1; i >= 0; --i) {
    // Double: k -> 2k.
    BigInt u2 = mod_n(u * v);
    BigInt v2 = mod_n(v * v - 2 * qk);
    qk = mod_n(qk * qk);
    u = u2;
    v = v2;
    if (boost::multiprecision::bit_test(delta, static_cast<unsigned>(i))) {
      // Increment: k -> k + 1 (P = 1).
      BigInt u1 = mod_n(halve(mod_n(u + v)));
      BigInt v1 = mod_n(halve(mod_n(d_param * u + v)));
      qk = mod_n(qk * q_param);
      u = u1;
      v = v1;
    }
  }

  if (u == 0 || v == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    v = mod_n(v * v - 2 * qk);
    if (v == 0) return true;
    qk = mod_n(qk * qk);
  }
  return false;
}

std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

using Poly = std::vector<std::uint32_t>;  // coefficients, degree < p

// Product reduced by x^p = x + 1. Coefficients stay below q < 2^16, so the
// accumulator never overflows for p up to millions.
Poly polymul(const Poly& a, const Poly& b, std::uint32_t p, std::uint32_t q) {
  std::vector<std::uint64_t> acc(2 * p - 1, 0);
  for (std::uint32_t i = 0; i < p; ++i) {
    if (a[i] == 0) continue;
    std::uint64_t ai = a[i];
    for (std::uint32_t j = 0; j < p; ++j) acc[i + j] += ai * b[j];
  }
  for (std::uint32_t i = 2 * p - 2; i >= p; --i) {
    std::uint64_t t = acc[i] % q;
    acc[i - p + 1] += t;
    acc[i - p] += t;
    if (i == p) break;
  }
  Poly out(p);
  for (std::uint32_t i = 0; i < p; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % q);
  return out;
}

Poly poly_x(std::uint32_t p) {
  Poly x(p, 0);
  x[1] = 1;
  return x;
}

Poly polypow_x(std::uint32_t e, std::uint32_t p, std::uint32_t q) {
  Poly result(p, 0);
  result[0] = 1;
  Poly base = poly_x(p);
  while (e > 0) {
    if (e & 1) result = polymul(result, base, p, q);
    base = polymul(base, base, p, q);
    e >>= 1;
  }
  return result;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint8_t> random_bytes(Rng& rng, size_t n) {
  std::vector<std::uint8_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(rng.below(256));
  return out;
}

std::vector<std::uint8_t> truncate32(const Digest512& d) {
  return std::vector<std::uint8_t>(d.begin(), d.begin() + 32);
}

std::vector<std::uint8_t> xor_bytes(const std::vector<std::uint8_t>& a,
                                    const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

std::vector<std::uint8_t> be64_bytes(std::uint64_t v) {
  std::vector<std::uint8_t> out(8);
  for (int i = 7; i >= 0; --i) {
    out[static_cast<size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

}  // namespace

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  for (int sp : kSmallPrimes) {
    if (n == sp) return true;
    if (n % sp == 0) return false;
  }
  if (n < 97 * 97) return true;  // survived trial division below its square root

  BigInt n_minus_1 = n - 1;
  BigInt d = n_minus_1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }

  Rng rng(kWitnessSeed);
  BigInt span = n - 3;  // witnesses drawn from [2, n - 2]
  bool narrow = span <= std::uint64_t(-1);
  std::uint64_t span64 = narrow ? span.convert_to<std::uint64_t>() : 0;
  for (int round = 0; round < 64; ++round) {
    BigInt witness =
        narrow ? BigInt(2 + rng.below(span64)) : BigInt(2) + BigInt(rng.next());
    if (!miller_rabin_round(n, n_minus_1, d, s, witness)) return false;
  }

  // A perfect square defeats the Selfridge parameter search, so rule it out.
  BigInt root = boost::multiprecision::sqrt(n);
  if (root * root == n) return false;
  return strong_lucas(n);
}

int euler_square_test(const BigInt& a, const BigInt& odd_prime_modulus) {
  const BigInt& m = odd_prime_modulus;
  BigInt r = a % m;
  if (r < 0) r += m;
  if (r == 0) return 0;
  BigInt e = boost::multiprecision::powm(r, (m - 1) / 2, m);
  if (e == 1) return 1;
  if (e == m - 1) return -1;
  return 0;
}

bool trinomial_irreducible(std::uint32_t p, std::uint32_t q) {
  if (p < 2 || q < 2 || q > 0xffff) return false;
  if (!is_prime_u32(p) || !is_prime_u32(q)) return false;

  // g1 = x^q mod f. Irreducibility needs the Frobenius map to move x.
  Poly g1 = polypow_x(q, p, q);
  if (g1 == poly_x(p)) return false;

  // Matrix of the Frobenius map in the monomial basis: column i is g1^i.
  // Column-major storage keeps the repeated mat-vec products sequential.
  std::vector<Poly> columns(p);
  columns[0] = Poly(p, 0);
  columns[0][0] = 1;
  for (std::uint32_t i = 1; i < p; ++i) columns[i] = polymul(columns[i - 1], g1, p, q);

  std::vector<std::uint64_t> acc(p);
  Poly v = poly_x(p);
  for (std::uint32_t iter = 0; iter < p; ++iter) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint32_t i = 0; i < p; ++i) {
      if (v[i] == 0) continue;
      std::uint64_t vi = v[i];
      const Poly& col = columns[i];
      for (std::uint32_t r = 0; r < p; ++r) acc[r] += vi * col[r];
    }
    for (std::uint32_t r = 0; r < p; ++r) v[r] = static_cast<std::uint32_t>(acc[r] % q);
  }
  return v == poly_x(p);
}

ValidationReport validate_sntrup_params(const SntrupParams& params) {
  ValidationReport report;
  bool p_prime = is_probable_prime(BigInt(params.p));
  bool q_prime = is_probable_prime(BigInt(params.q));
  report.checks.push_back({"p-primality", p_prime,
                           "p = " + std::to_string(params.p) +
                               (p_prime ? " is prime" : " is not prime")});
  report.checks.push_back({"q-primality", q_prime,
                           "q = " + std::to_string(params.q) +
                               (q_prime ? " is prime" : " is not prime")});
  ParamCheck irr;
  irr.name = "trinomial-irreducibility";
  if (p_prime && q_prime) {
    irr.passed = trinomial_irreducible(params.p, params.q);
    irr.detail = "x^" + std::to_string(params.p) + " - x - 1 over GF(" +
                 std::to_string(params.q) + ") via Frobenius powering: " +
                 (irr.passed ? "irreducible" : "reducible");
  } else {
    irr.passed = false;
    irr.detail = "not evaluated: the Frobenius criterion needs prime p and q";
  }
  report.checks.push_back(std::move(irr));
  report.w_in_range = params.w > 0 && params.w < params.p;
  return report;
}

ValidationReport validate_curve_params(const CurveParams& params) {
  ValidationReport report;
  bool modulus_prime = params.modulus > 2 && (params.modulus & 1) == 1 &&
                       is_probable_prime(params.modulus);
  report.checks.push_back({"modulus-primality", modulus_prime,
                           modulus_prime ? "field modulus is prime"
                                         : "field modulus is not an odd prime"});
  ParamCheck nr;
  nr.name = "a2-minus-4-nonresidue";
  if (modulus_prime) {
    BigInt value = params.a_coefficient * params.a_coefficient - 4;
    int verdict = euler_square_test(value, params.modulus);
    nr.passed = verdict == -1;
    if (verdict == -1) {
      nr.detail = "A^2 - 4 is a non-square by the Euler criterion";
    } else if (verdict == 0) {
      nr.detail = "A^2 - 4 vanishes modulo the field prime (degenerate square)";
    } else {
      nr.detail = "A^2 - 4 is a square modulo the field prime";
    }
  } else {
    nr.passed = false;
    nr.detail = "not evaluated: the Euler criterion needs a prime modulus";
  }
  report.checks.push_back(std::move(nr));
  return report;
}

AlgorithmPolicy::AlgorithmPolicy(std::vector<std::string> preferences)
    : prefs_(std::move(preferences)) {
  if (prefs_.empty()) throw std::invalid_argument("algorithm policy must not be empty");
  std::unordered_set<std::string_view> seen;
  for (const auto& id : prefs_) {
    if (!seen.insert(id).second) {
      throw std::invalid_argument("duplicate identifier in algorithm policy: " + id);
    }
  }
}

std::optional<std::string> negotiate(const AlgorithmPolicy& client,
                                     const AlgorithmPolicy& server) {
  const auto& offered = server.preferences();
  for (const auto& id : client.preferences()) {
    if (std::find(offered.begin(), offered.end(), id) != offered.end()) return id;
  }
  return std::nullopt;
}

Digest512 hybrid_combine(const std::vector<std::uint8_t>& secret_kem,
                         const std::vector<std::uint8_t>& secret_ecdh) {
  if (secret_kem.empty() || secret_ecdh.empty()) {
    throw std::invalid_argument("hybrid_combine requires two non-empty secrets");
  }
  return sha512_concat(secret_kem, secret_ecdh);
}

std::optional<HandshakeResult> simulate_handshake(const AlgorithmPolicy& client,
                                                  const AlgorithmPolicy& server,
                                                  std::uint64_t kem_seed,
                                                  std::uint64_t ecdh_seed) {
  auto chosen = negotiate(client, server);
  if (!chosen) return std::nullopt;

  HandshakeResult result;
  result.negotiated = *chosen;
  result.hybrid = *chosen == kHybridKexId;

  Rng kem_rng(kem_seed);
  Rng ecdh_rng(ecdh_seed);

  // Toy KEM. Public key is a KDF of the private key; the ciphertext masks the
  // encapsulator's coins with a KDF of the public key, so decapsulation
  // recovers them exactly and both sides hash the same transcript.
  auto client_kem_sk = random_bytes(kem_rng, 32);
  auto kem_pk = truncate32(sha512(client_kem_sk));
  auto server_coins = random_bytes(kem_rng, 32);
  auto mask = truncate32(sha512(kem_pk));
  auto kem_ct = xor_bytes(server_coins, mask);
  auto server_kem_secret = truncate32(sha512_concat(kem_pk, server_coins));
  auto recovered_coins = xor_bytes(kem_ct, mask);
  auto client_kem_secret = truncate32(sha512_concat(kem_pk, recovered_coins));

  // Toy commutative exchange: fixed-base powers modulo the Mersenne prime
  // 2^61 - 1. Small, fast, and genuinely commutative.
  constexpr std::uint64_t kMod = (std::uint64_t(1) << 61) - 1;
  constexpr std::uint64_t kBase = 7;
  std::uint64_t exp_client = 2 + ecdh_rng.below(kMod - 3);
  std::uint64_t exp_server = 2 + ecdh_rng.below(kMod - 3);
  std::uint64_t pub_client = powmod64(kBase, exp_client, kMod);
  std::uint64_t pub_server = powmod64(kBase, exp_server, kMod);
  auto client_ecdh_secret = be64_bytes(powmod64(pub_server, exp_client, kMod));
  auto server_ecdh_secret = be64_bytes(powmod64(pub_client, exp_server, kMod));

  result.transcript.push_back(
      {"EphemeralKeyGeneration",
       "client built a KEM key pair and an exchange exponent; server built its "
       "exchange exponent and encapsulation coins"});
  result.transcript.push_back(
      {"PublicKeyExchange",
       "client sent the KEM public key and exchange value " + to_hex(be64_bytes(pub_client)) +
           "; server replied with the KEM ciphertext and exchange value " +
           to_hex(be64_bytes(pub_server))});
  result.transcript.push_back(
      {"SharedSecretCalculation",
       result.hybrid
           ? "both sides derived the KEM secret and the exchange secret independently"
           : "both sides derived the exchange secret independently"});

  if (result.hybrid) {
    result.client_key = hybrid_combine(client_kem_secret, client_ecdh_secret);
    result.server_key = hybrid_combine(server_kem_secret, server_ecdh_secret);
    result.transcript.push_back(
        {"CombiningAndHashing",
         "concatenated KEM secret then exchange secret, hashed with SHA-512"});
  } else {
    result.client_key = sha512(client_ecdh_secret);
    result.server_key = sha512(server_ecdh_secret);
    result.transcript.push_back(
        {"CombiningAndHashing", "single exchange secret hashed with SHA-512"});
  }
  result.transcript.push_back(
      {"FinalKey", "512-bit session key: " + to_hex(result.client_key) +
                       (result.keys_agree() ? " (both sides agree)" : " (MISMATCH)")});
  return result;
}

}  // namespace pqcscope

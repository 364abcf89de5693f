#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pqcscope {

// Deterministic across platforms and standard libraries: raw mt19937_64
// draws with explicit rejection bounding. std::uniform_int_distribution and
// std::shuffle are implementation-defined and must not appear anywhere a
// byte-identical output is promised.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pqcscope

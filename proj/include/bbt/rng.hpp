#pragma once

#include <cstdint>
#include <random>

namespace bbt {

// Seeded generator with a platform-independent bounded draw; the standard
// distributions are implementation-defined, which would break replay.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bbt

#include "bbt/bigint.hpp"

#include "bbt/errors.hpp"

namespace bbt {

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw ResourceError("integer " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace bbt

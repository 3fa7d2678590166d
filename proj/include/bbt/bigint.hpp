#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace bbt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

// Throws if v does not fit in 64 bits.
std::uint64_t to_u64(const BigInt& v);

BigInt factorial(unsigned n);

}  // namespace bbt

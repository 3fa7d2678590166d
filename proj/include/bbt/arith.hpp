#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbt/bigint.hpp"

namespace bbt {

// Prime-exponent pairs, primes strictly increasing.
using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

Factorization factorize(std::uint64_t n);
Factorization factorize(const BigInt& n);  // trial division; inputs are small
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<BigInt> divisors(const BigInt& n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t n);
BigInt ipow(const BigInt& b, unsigned e);
bool is_prime(std::uint64_t n);

// t * prod over primes p | t with p not dividing k of (p-1)/p.
std::uint64_t phi_k(std::int64_t k, std::uint64_t t);

// a lies in U_n: a ≡ 1 mod every prime dividing n, and mod 4 when 4 | n.
bool is_full_period(std::int64_t a, std::uint64_t n);

// sum_{i<t} a^i mod n
std::uint64_t alpha(std::int64_t a, std::uint64_t t, std::uint64_t n);

enum class LieFamily { PSL2, PSU3, Sz, Ree, PSL3 };

std::string to_string(LieFamily f);
std::optional<LieFamily> parse_family(const std::string& s);

// Parameters of an almost simple group with socle of small-rank Lie type.
struct LieParams {
  LieFamily family = LieFamily::PSL2;
  std::uint64_t p = 2;
  unsigned e = 1;
  unsigned t = 1;
  unsigned t_G = 1;
  unsigned e_G = 1;
  unsigned r_G = 0;

  BigInt q() const { return ipow(BigInt(p), e); }
  // Degree of the field that carries the automorphism y_0.
  unsigned field_degree() const { return family == LieFamily::PSU3 ? 2 * e : e; }
  // Minimal exponent f with lambda -> lambda^{p^f} of order e_G.
  unsigned f_G() const { return field_degree() / e_G; }
  BigInt a_G() const { return ipow(BigInt(p), f_G()); }
  // Order of the multiplicative group of the underlying field.
  BigInt field_units() const;
  // k in s x s = x^{k+1}.
  BigInt k() const;
  BigInt rprime() const;  // r_G * sum_{i<e_G} a_G^i
};

// The t prescribed for the socle and field; throws on unsupported input.
unsigned expected_t(LieFamily family, std::uint64_t p, unsigned e);
// Throws ValidationError describing the first violated constraint.
void validate(const LieParams& params);

struct RankOneReport {
  BigInt d_G;
  BigInt o_G;
  std::map<BigInt, BigInt> h;  // divisor n of d_G -> h_n, with h_1 = 1
  bool sharp = false;
};

RankOneReport rank1_classify(const LieParams& params);

struct LdcExample {
  std::uint64_t m = 0;
  BigInt q;
  unsigned q_exponent = 0;  // q = p^q_exponent
};

// m = ord_n(p) and q = p^{mn} when m is odd.
std::optional<LdcExample> ldc_example_params(std::uint64_t p, std::uint64_t n);
// Parameters of PGU3(q) extended by the order-2n field automorphism.
LieParams ldc_example_lie_params(std::uint64_t p, std::uint64_t n);

}  // namespace bbt

#include "bbt/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "bbt/errors.hpp"

namespace bbt {

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw ValidationError("cannot factor 0");
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

Factorization factorize(const BigInt& n) {
  if (n <= 0) throw ValidationError("cannot factor a nonpositive integer");
  if (n <= std::numeric_limits<std::uint64_t>::max()) return factorize(n.convert_to<std::uint64_t>());
  Factorization f;
  BigInt r = n;
  for (std::uint64_t p = 2; BigInt(p) * p <= r; ++p) {
    if (p > 100'000'000) throw ResourceError("trial division limit reached");
    if (r % p != 0) continue;
    unsigned e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (r > 1) {
    if (r > std::numeric_limits<std::uint64_t>::max()) throw ResourceError("large prime factor");
    f.emplace_back(r.convert_to<std::uint64_t>(), 1);
  }
  return f;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t sz = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t sz = out.size();
    BigInt pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

BigInt ipow(const BigInt& b, unsigned e) { return boost::multiprecision::pow(b, e); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::uint64_t phi_k(std::int64_t k, std::uint64_t t) {
  if (t == 0) throw ValidationError("phi_k requires t >= 1");
  std::uint64_t r = t;
  for (auto [p, e] : factorize(t)) {
    if (k % static_cast<std::int64_t>(p) != 0) r = r / p * (p - 1);
  }
  return r;
}

bool is_full_period(std::int64_t a, std::uint64_t n) {
  if (n == 0) throw ValidationError("modulus must be positive");
  for (auto [p, e] : factorize(n)) {
    if (mod_floor(a - 1, static_cast<std::int64_t>(p)) != 0) return false;
  }
  if (n % 4 == 0 && mod_floor(a - 1, 4) != 0) return false;
  return true;
}

std::uint64_t alpha(std::int64_t a, std::uint64_t t, std::uint64_t n) {
  const auto am = static_cast<unsigned __int128>(mod_floor(a, static_cast<std::int64_t>(n)));
  unsigned __int128 s = 0;
  for (std::uint64_t i = 0; i < t; ++i) s = (s * am + 1) % n;
  return static_cast<std::uint64_t>(s);
}

std::string to_string(LieFamily f) {
  switch (f) {
    case LieFamily::PSL2: return "PSL2";
    case LieFamily::PSU3: return "PSU3";
    case LieFamily::Sz: return "Sz";
    case LieFamily::Ree: return "Ree";
    case LieFamily::PSL3: return "PSL3";
  }
  return "?";
}

std::optional<LieFamily> parse_family(const std::string& s) {
  std::string l;
  for (char c : s) l.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (l == "psl2") return LieFamily::PSL2;
  if (l == "psu3") return LieFamily::PSU3;
  if (l == "sz" || l == "suzuki") return LieFamily::Sz;
  if (l == "ree") return LieFamily::Ree;
  if (l == "psl3") return LieFamily::PSL3;
  return std::nullopt;
}

BigInt LieParams::field_units() const {
  BigInt qq = q();
  return family == LieFamily::PSU3 ? BigInt(qq * qq - 1) : BigInt(qq - 1);
}

BigInt LieParams::k() const {
  return family == LieFamily::PSU3 ? BigInt(-(q() + 1)) : BigInt(-2);
}

BigInt LieParams::rprime() const {
  BigInt a = a_G();
  BigInt s = 0;
  BigInt pw = 1;
  for (unsigned i = 0; i < e_G; ++i) {
    s += pw;
    pw *= a;
  }
  return s * r_G;
}

unsigned expected_t(LieFamily family, std::uint64_t p, unsigned e) {
  BigInt q = ipow(BigInt(p), e);
  switch (family) {
    case LieFamily::PSL2: return p % 2 == 1 ? 2 : 1;
    case LieFamily::PSU3: return (q + 1) % 3 == 0 ? 3 : 1;
    case LieFamily::PSL3: return (q - 1) % 3 == 0 ? 3 : 1;
    case LieFamily::Sz:
    case LieFamily::Ree: return 1;
  }
  return 1;
}

void validate(const LieParams& lp) {
  if (!is_prime(lp.p)) throw ValidationError("p must be prime");
  if (lp.e < 1) throw ValidationError("e must be positive");
  BigInt q = lp.q();
  switch (lp.family) {
    case LieFamily::Sz:
      if (lp.p != 2 || lp.e < 3 || lp.e % 2 == 0) throw ValidationError("Sz requires q = 2^e, e odd >= 3");
      break;
    case LieFamily::Ree:
      if (lp.p != 3 || lp.e < 3 || lp.e % 2 == 0) throw ValidationError("Ree requires q = 3^e, e odd >= 3");
      break;
    case LieFamily::PSL2:
      if (q < 4) throw ValidationError("PSL2 requires q >= 4");
      break;
    case LieFamily::PSU3:
      if (q < 3) throw ValidationError("PSU3 requires q >= 3");
      break;
    case LieFamily::PSL3: break;
  }
  if (lp.e_G == 0 || lp.field_degree() % lp.e_G != 0) {
    throw ValidationError("e_G must divide the degree of the field carrying the automorphism");
  }
  if (lp.t != expected_t(lp.family, lp.p, lp.e)) {
    throw ValidationError("t must be " + std::to_string(expected_t(lp.family, lp.p, lp.e)));
  }
  if (lp.t_G != 1 && lp.t_G != lp.t) throw ValidationError("t_G must be 1 or t");
  if (lp.r_G >= lp.t_G) throw ValidationError("r_G must satisfy 0 <= r_G < t_G");
  if (lp.rprime() % lp.t_G != 0) throw ValidationError("y^{e_G} must lie in <x>");
}

RankOneReport rank1_classify(const LieParams& lp) {
  validate(lp);
  if (lp.family == LieFamily::PSL3) throw ValidationError("PSL3 is not of rank 1");
  RankOneReport rep;
  const BigInt a = lp.a_G();
  const BigInt units = lp.field_units() / lp.t_G;
  const BigInt rp = lp.rprime() / lp.t_G;
  rep.o_G = rp == 0 ? units : BigInt(boost::multiprecision::gcd(units, rp));
  const BigInt g = boost::multiprecision::gcd(BigInt(lp.e_G), rep.o_G);
  const bool star = lp.t == 2 && lp.t_G == 2 && lp.e_G % 2 == 0 && lp.r_G == 1;
  const BigInt q = lp.q();
  BigInt d = 1;
  for (auto [pi, ei] : factorize(g)) {
    unsigned keep = 0;
    if (pi == 2) {
      if (star) {
        if (a % 4 == 1) keep = ei;
        else if (a % 4 == 3 && ei > 0) keep = 1;
      }
    } else {
      bool excluded = false;
      if (lp.family == LieFamily::PSU3 && (q + 1) % pi == 0) {
        excluded = pi != 3 || (q + 1) % 9 == 0 || lp.r_G == 0;
      }
      if (!excluded && a % pi == 1) keep = ei;
    }
    d *= ipow(BigInt(pi), keep);
  }
  rep.d_G = d;
  for (auto n : divisors(d.convert_to<std::uint64_t>())) {
    if (n == 1) {
      rep.h[1] = 1;
      continue;
    }
    auto gn = boost::multiprecision::gcd(BigInt(a - 1), BigInt(n)).convert_to<std::uint64_t>();
    rep.h[n] = phi_k(lp.t_G, gn);
  }
  return rep;
}

std::optional<LdcExample> ldc_example_params(std::uint64_t p, std::uint64_t n) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (n <= 1 || n % 2 == 0) throw ValidationError("n must be odd and > 1");
  if (n % p == 0) throw ValidationError("n must be coprime to p");
  std::uint64_t m = 1;
  for (unsigned __int128 v = p % n; v != 1; v = v * p % n) ++m;
  if (m % 2 == 0) return std::nullopt;
  LdcExample ex;
  ex.m = m;
  ex.q_exponent = static_cast<unsigned>(m * n);
  ex.q = ipow(BigInt(p), ex.q_exponent);
  return ex;
}

LieParams ldc_example_lie_params(std::uint64_t p, std::uint64_t n) {
  auto ex = ldc_example_params(p, n);
  if (!ex) throw ValidationError("the multiplicative order of p mod n is even");
  LieParams lp;
  lp.family = LieFamily::PSU3;
  lp.p = p;
  lp.e = ex->q_exponent;
  lp.t = expected_t(lp.family, p, lp.e);
  lp.t_G = 1;
  lp.e_G = static_cast<unsigned>(2 * n);
  lp.r_G = 0;
  return lp;
}

}  // namespace bbt

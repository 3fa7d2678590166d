#include "bbt/field.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "bbt/data.hpp"
#include "bbt/errors.hpp"

namespace bbt {

namespace {

std::vector<std::uint64_t> find_polynomial(std::uint64_t p, unsigned e, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open polynomial table " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t lp = 0;
    unsigned le = 0;
    if (!(ls >> lp >> le)) continue;
    if (lp != p || le != e) continue;
    std::vector<std::uint64_t> c;
    std::uint64_t v;
    while (ls >> v) c.push_back(v);
    if (c.size() != e + 1 || c.back() != 1) {
      throw ValidationError("malformed polynomial entry for p=" + std::to_string(p) +
                            " e=" + std::to_string(e));
    }
    return c;
  }
  throw ValidationError("no irreducible polynomial tabulated for p=" + std::to_string(p) +
                        " e=" + std::to_string(e));
}

}  // namespace

FiniteField FiniteField::load(std::uint64_t p, unsigned e, const std::string& table_path) {
  if (p < 2 || e < 1) throw ValidationError("field requires prime p and e >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw ResourceError("field order exceeds " + std::to_string(kMaxOrder));
  }
  FiniteField f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = static_cast<std::uint32_t>(q);
  f.poly_ = find_polynomial(p, e, table_path);
  for (auto c : f.poly_) {
    if (c >= p) throw ValidationError("polynomial coefficient out of range");
  }

  // Digit-wise addition.
  f.add_.resize(q * q);
  f.neg_.resize(q);
  for (std::uint64_t a = 0; a < q; ++a) {
    std::uint64_t n = 0;
    for (std::uint64_t t = a, pw = 1; pw < q; t /= p, pw *= p) n += ((p - t % p) % p) * pw;
    f.neg_[a] = static_cast<Elt>(n);
    for (std::uint64_t b = 0; b < q; ++b) {
      std::uint64_t s = 0;
      for (std::uint64_t x = a, y = b, pw = 1; pw < q; x /= p, y /= p, pw *= p) {
        s += ((x % p + y % p) % p) * pw;
      }
      f.add_[a * q + b] = static_cast<Elt>(s);
    }
  }

  // Powers of mu: multiply by x and reduce by the monic polynomial.
  std::uint64_t m = 1;
  if (e == 1) m = (p - f.poly_[0]) % p;  // root of x + c0
  else m = p;                             // the class of x
  f.exp_.assign(q - 1, 0);
  f.log_.assign(q, 0);
  std::vector<std::uint64_t> cur(e, 0);
  cur[0] = 1;
  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t r = 0;
    for (unsigned i = e; i-- > 0;) r = r * p + v[i];
    return static_cast<Elt>(r);
  };
  std::vector<bool> seen(q, false);
  for (std::uint64_t i = 0; i + 1 < q; ++i) {
    Elt c = encode(cur);
    if (seen[c]) throw ValidationError("tabulated polynomial does not give a primitive element");
    seen[c] = true;
    f.exp_[i] = c;
    f.log_[c] = static_cast<std::uint32_t>(i);
    if (e == 1) {
      cur[0] = cur[0] * m % p;
    } else {
      std::uint64_t top = cur[e - 1];
      for (unsigned j = e - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      for (unsigned j = 0; j < e; ++j) cur[j] = (cur[j] + (p - top) * f.poly_[j]) % p;
    }
  }
  if (encode(cur) != 1) throw ValidationError("tabulated polynomial does not give a primitive element");
  return f;
}

std::shared_ptr<const FiniteField> FiniteField::get(std::uint64_t p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot) {
    slot = std::make_shared<const FiniteField>(load(p, e, data_path("irreducible_polynomials.txt")));
  }
  return slot;
}

std::shared_ptr<const FiniteField> FiniteField::get_order(std::uint64_t q) {
  if (q < 2) throw ValidationError("field order must be at least 2");
  std::uint64_t p = 2;
  while (q % p) ++p;
  unsigned e = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw ValidationError(std::to_string(q) + " is not a prime power");
  return get(p, e);
}

FiniteField::Elt FiniteField::mul(Elt a, Elt b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

FiniteField::Elt FiniteField::inv(Elt a) const {
  if (a == 0) throw ValidationError("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elt FiniteField::pow(Elt a, std::int64_t k) const {
  if (a == 0) {
    if (k < 0) throw ValidationError("inverse of zero");
    return k == 0 ? 1 : 0;
  }
  const std::int64_t n = q_ - 1;
  std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (k % n)) % n;
  if (r < 0) r += n;
  return exp_[r];
}

FiniteField::Elt FiniteField::frob(Elt a, unsigned k) const {
  std::int64_t pk = 1;
  for (unsigned i = 0; i < k % e_; ++i) pk *= static_cast<std::int64_t>(p_);
  return pow(a, pk);
}

FiniteField::Elt FiniteField::exp(std::int64_t i) const {
  const std::int64_t n = q_ - 1;
  std::int64_t r = i % n;
  if (r < 0) r += n;
  return exp_[r];
}

std::uint32_t FiniteField::log(Elt a) const {
  if (a == 0) throw ValidationError("log of zero");
  return log_[a];
}

std::vector<std::uint32_t> FiniteField::digits(Elt a) const {
  std::vector<std::uint32_t> d(e_);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = static_cast<std::uint32_t>(a % p_);
    a = static_cast<Elt>(a / p_);
  }
  return d;
}

}  // namespace bbt

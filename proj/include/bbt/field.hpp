#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bbt {

// GF(p^e) with elements encoded as integers 0..q-1: the base-p digits are the
// coefficients of a polynomial in mu, the class of x modulo the tabulated
// irreducible polynomial. So 0 and 1 encode zero and one.
class FiniteField {
 public:
  using Elt = std::uint32_t;
  static constexpr std::uint64_t kMaxOrder = 1u << 12;

  // Reads the polynomial for (p, e) from the table file and checks that mu
  // generates the multiplicative group.
  static FiniteField load(std::uint64_t p, unsigned e, const std::string& table_path);
  // Cached instance from the bundled table.
  static std::shared_ptr<const FiniteField> get(std::uint64_t p, unsigned e);
  static std::shared_ptr<const FiniteField> get_order(std::uint64_t q);

  std::uint64_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint64_t>& polynomial() const { return poly_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt mu() const { return exp_[1 % exp_.size()]; }

  Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt sub(Elt a, Elt b) const { return add(a, neg_[b]); }
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::int64_t k) const;
  // a^(p^k)
  Elt frob(Elt a, unsigned k) const;
  // mu^i
  Elt exp(std::int64_t i) const;
  // Discrete log base mu; a must be nonzero.
  std::uint32_t log(Elt a) const;
  // Base-p digits of a, i.e. coordinates over the basis 1, mu, ..., mu^{e-1}.
  std::vector<std::uint32_t> digits(Elt a) const;

 private:
  std::uint64_t p_ = 0;
  unsigned e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint64_t> poly_;
  std::vector<Elt> add_;
  std::vector<Elt> neg_;
  std::vector<Elt> exp_;  // length q-1
  std::vector<std::uint32_t> log_;
};

}  // namespace bbt

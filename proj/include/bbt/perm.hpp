#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bbt/bigint.hpp"

namespace bbt {

using Point = std::uint32_t;

// A bijection of {0,...,degree-1}. Products compose right to left:
// (a * b)(x) = a(b(x)), matching matrices acting on column vectors.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  // Validates that images form a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return img_.size(); }
  Point operator()(Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation operator*(const Permutation& rhs) const;
  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  BigInt order() const;
  // First point moved, or degree() if identity.
  Point first_moved() const;
  std::string cycle_string() const;
  std::size_t hash() const;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : img_(std::move(images)) {}
  std::vector<Point> img_;
};

Permutation power(const Permutation& g, long long e);
Permutation conjugate(const Permutation& g, const Permutation& by);  // by*g*by^-1
Permutation commutator(const Permutation& a, const Permutation& b);  // a^-1 b^-1 a b

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace bbt

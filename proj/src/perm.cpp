#include "bbt/perm.hpp"

#include <numeric>
#include <sstream>

#include "bbt/errors.hpp"

namespace bbt {

Permutation::Permutation(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x]) {
      throw ValidationError("permutation images are not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Point a = c[i];
      if (a >= degree || used[a]) throw ValidationError("malformed cycle");
      used[a] = true;
      img[a] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv), Unchecked{});
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  std::vector<Point> out(rhs.img_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = img_[rhs.img_[i]];
  return Permutation(std::move(out), Unchecked{});
}

BigInt Permutation::order() const {
  BigInt result = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point j = static_cast<Point>(i); !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    result = boost::multiprecision::lcm(result, BigInt(len));
  }
  return result;
}

Point Permutation::first_moved() const {
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != i) return static_cast<Point>(i);
  }
  return static_cast<Point>(img_.size());
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    os << '(';
    bool first = true;
    for (Point j = static_cast<Point>(i); !seen[j]; j = img_[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j;
      first = false;
    }
    os << ')';
    any = true;
  }
  return any ? os.str() : "()";
}

std::size_t Permutation::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : img_) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Permutation power(const Permutation& g, long long e) {
  Permutation base = e < 0 ? g.inverse() : g;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation result(g.degree());
  while (k) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

Permutation conjugate(const Permutation& g, const Permutation& by) {
  return by * g * by.inverse();
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

}  // namespace bbt

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbt/permgroup.hpp"

namespace bbt {

// Fixed-size bitset over the elements of a SmallGroup.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t universe() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;
  bool subset_of(const ElementSet& o) const;
  std::vector<std::uint32_t> members() const;

  bool operator==(const ElementSet& o) const { return w_ == o.w_; }
  std::size_t hash() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

// Isomorphism invariants used to compare against tabulated structure names.
struct Fingerprint {
  std::uint64_t order = 1;
  std::uint64_t exponent = 1;
  int derived_length = 0;  // -1 when not solvable
  std::vector<std::uint64_t> abelian_invariants;  // elementary divisors, ascending

  bool operator==(const Fingerprint&) const = default;
  std::string str() const;
};

// A finite group held as a full multiplication table; element 0 is the identity.
class SmallGroup {
 public:
  using Elt = std::uint16_t;
  static constexpr std::size_t kMaxOrder = 6000;

  struct Subgroup {
    ElementSet elements;
    std::vector<Elt> gens;
    std::size_t order() const { return elements.count(); }
  };

  static SmallGroup from_perm_group(const PermGroup& g, std::size_t limit = kMaxOrder);

  std::size_t order() const { return n_; }
  Elt mul(Elt a, Elt b) const { return table_[std::size_t{a} * n_ + b]; }
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt a, Elt by) const { return mul(mul(by, a), inv_[by]); }  // by a by^-1
  std::uint32_t element_order(Elt a) const { return ord_[a]; }
  const Permutation& element(Elt a) const { return elts_[a]; }
  std::optional<Elt> index_of(const Permutation& p) const;
  const std::vector<Elt>& generators() const { return gens_; }

  Subgroup whole() const;
  Subgroup closure(const std::vector<Elt>& gens) const;
  ElementSet conjugate(const ElementSet& h, Elt by) const;
  Subgroup conjugate(const Subgroup& h, Elt by) const;
  Subgroup derived(const Subgroup& h) const;
  Fingerprint fingerprint(const Subgroup& h) const;

  // Conjugacy classes of subgroups; each class lists every member.
  std::vector<std::vector<Subgroup>> subgroup_classes() const;
  std::vector<Subgroup> all_subgroups() const;

  PermGroup to_perm_group(const Subgroup& h) const;

 private:
  std::uint64_t key_of(const Permutation& p) const;
  std::size_t n_ = 0;
  std::size_t degree_ = 0;
  std::vector<Point> base_;
  std::vector<Permutation> elts_;
  std::vector<Elt> table_;
  std::vector<Elt> inv_;
  std::vector<std::uint32_t> ord_;
  std::vector<Elt> gens_;
  std::vector<std::pair<std::uint64_t, Elt>> index_;  // sorted by key
};

// Fingerprint of an arbitrary permutation group (Cayley table when small).
Fingerprint fingerprint(const PermGroup& g);

}  // namespace bbt

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bbt/bigint.hpp"
#include "bbt/permgroup.hpp"

namespace bbt {

// Partition of {0..degree-1} into blocks of equal size.
class BlockSystem {
 public:
  BlockSystem() = default;
  // Block labels are renumbered by first appearance.
  explicit BlockSystem(const std::vector<std::uint32_t>& block_of);
  static BlockSystem singletons(std::size_t degree);
  static BlockSystem universal(std::size_t degree);

  std::size_t degree() const { return block_of_.size(); }
  std::uint32_t block_of(Point x) const { return block_of_[x]; }
  const std::vector<std::uint32_t>& labels() const { return block_of_; }
  std::size_t block_size() const { return block_size_; }
  std::size_t block_count() const { return block_count_; }
  std::vector<Point> block(std::uint32_t b) const;

  // Each generator maps blocks onto blocks.
  bool is_invariant(const PermGroup& g) const;
  bool operator==(const BlockSystem& o) const { return block_of_ == o.block_of_; }

 private:
  std::vector<std::uint32_t> block_of_;
  std::size_t block_size_ = 0;
  std::size_t block_count_ = 0;
};

class ImprimitiveAction {
 public:
  // Throws ValidationError when the blocks are not invariant.
  ImprimitiveAction(PermGroup group, BlockSystem blocks);

  const PermGroup& group() const { return group_; }
  const BlockSystem& blocks() const { return blocks_; }
  // Action on the set of blocks.
  PermGroup block_action() const;
  BigInt block_kernel_order() const;
  bool is_block_faithful() const { return block_kernel_order() == 1; }

 private:
  PermGroup group_;
  BlockSystem blocks_;
};

// G acting on G/L with L inside the stabilizer of alpha; the block of a coset
// gL is g(alpha).
ImprimitiveAction imprimitive_coset_action(const CosetSpace& cs, Point alpha);

// prod_{i<k} (degree - i*block_size), or 0 with fewer than k blocks.
BigInt distant_tuple_count(const BlockSystem& blocks, unsigned k);

bool is_k_by_block_transitive(const ImprimitiveAction& act, unsigned k);

// Distant pair (0, x) with x the first point outside the block of 0.
std::pair<Point, Point> base_distant_pair(const BlockSystem& blocks);
PermGroup distant_pair_stabilizer(const ImprimitiveAction& act);

// Minimal block containing the given points (union-find closure).
BlockSystem minimal_blocks(const PermGroup& g, const std::vector<Point>& seed);

// The unique maximal nonuniversal block system; singletons if primitive.
// Throws AmbiguityError when several maximal systems exist.
BlockSystem coarsest_invariant_blocks(const PermGroup& g);

bool is_sharply_2bbt(const ImprimitiveAction& act);

struct TripleOrbitReport {
  std::size_t orbit_count = 0;
  std::vector<BigInt> orbit_sizes;
  unsigned c = 0;  // orbit_count / n^2 when that is 1 or 2, else 0
  std::size_t n = 0;
};

TripleOrbitReport distant_triple_orbits(const ImprimitiveAction& act);

// |G(w)|^2 / (|G| - |G([w])|)
Rational pair_stabilizer_order(const BigInt& order_g, const BigInt& order_point,
                               const BigInt& order_block);

// Divisors d of |G(x)| with |G| - |G(x)| dividing d^2, ascending; the last
// entry is |G(x)| itself whenever it qualifies.
std::vector<BigInt> admissible_subgroup_orders(const BigInt& order_g, const BigInt& order_block);

// Orbit count of G on distant k-tuples by listing them; degree <= 60 only.
std::size_t distant_tuple_orbits_bruteforce(const ImprimitiveAction& act, unsigned k);

}  // namespace bbt

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "bbt/bigint.hpp"
#include "bbt/perm.hpp"
#include "bbt/rng.hpp"

namespace bbt {

inline constexpr std::size_t kDefaultDegreeBound = 1'000'000;

struct GroupOptions {
  // Upper bound on the group order. Random Schreier-Sims stops as soon as the
  // chain reaches it, which proves completeness; otherwise the chain is
  // finished deterministically.
  std::optional<BigInt> order_bound;
  std::vector<Point> base_prefix;
  std::uint64_t seed = 0;
  std::size_t degree_bound = kDefaultDegreeBound;
};

// Base and strong generating set with Schreier-vector transversals.
class StabChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<std::uint32_t> gens;  // indices into strong()
    std::vector<std::int32_t> label;  // -2 outside orbit, -1 root, else gen index
    std::vector<Point> orbit;
  };

  explicit StabChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<Permutation>& strong() const { return strong_; }
  std::vector<Point> base() const;
  BigInt order() const;

  // Sift from level `from`; returns residue and the level where sifting
  // stopped (levels().size() when every level was passed).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation& g) const;
  // Element u of level i with u(base_i) = x; x must lie in the orbit.
  Permutation transversal(std::size_t i, Point x) const;
  // Generators of the stabilizer of the first `depth` base points, as a chain.
  StabChain tail(std::size_t depth) const;
  // Generators of the group at level i.
  std::vector<Permutation> level_generators(std::size_t i) const;

  void build(const std::vector<Permutation>& gens, const GroupOptions& opts);

 private:
  void add_strong(const Permutation& h, std::size_t j);
  void rebuild_orbit(std::size_t i);
  void random_phase(const std::vector<Permutation>& gens, const BigInt& bound,
                    std::uint64_t seed);
  void complete_deterministically();

  std::size_t degree_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> strong_inv_;
  std::vector<Level> levels_;
};

class PermGroup {
 public:
  PermGroup() : PermGroup(from_generators(0, {})) {}

  static PermGroup from_generators(std::size_t degree, std::vector<Permutation> gens,
                                   GroupOptions opts = {});
  static PermGroup trivial(std::size_t degree) { return from_generators(degree, {}); }
  static PermGroup symmetric(std::size_t degree);
  static PermGroup alternating(std::size_t degree);

  std::size_t degree() const;
  const std::vector<Permutation>& generators() const;
  const StabChain& chain() const;
  const BigInt& order() const;

  bool is_member(const Permutation& p) const;
  std::vector<Point> orbit(Point pt) const;
  std::vector<std::vector<Point>> orbits() const;
  bool is_transitive() const;
  PermGroup stabilizer(Point pt) const;
  PermGroup pointwise_stabilizer(std::span<const Point> pts) const;
  // Rebuild with the given base prefix (same group).
  PermGroup with_base(std::span<const Point> prefix) const;

  bool is_subgroup_of(const PermGroup& other) const;
  bool same_group(const PermGroup& other) const;

  // All elements; throws ResourceError if the order exceeds limit.
  std::vector<Permutation> elements(std::size_t limit = 1'000'000) const;
  Permutation random_element(Rng& rng) const;

 private:
  struct State;
  explicit PermGroup(std::shared_ptr<State> s) : s_(std::move(s)) {}
  static PermGroup from_chain(std::size_t degree, StabChain chain, std::uint64_t seed);
  std::shared_ptr<State> s_;
};

// Free-function forms of the core queries.
PermGroup from_generators(std::size_t degree, const std::vector<Permutation>& gens);
std::vector<Point> orbit(const PermGroup& g, Point pt);
PermGroup stabilizer(const PermGroup& g, Point pt);
bool is_member(const PermGroup& g, const Permutation& p);

PermGroup derived_subgroup(const PermGroup& g);
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& gens);

// Action of G on the left cosets of L.
class CosetSpace {
 public:
  const PermGroup& parent() const { return parent_; }
  const PermGroup& subgroup() const { return subgroup_; }
  const BigInt& index() const { return index_; }
  const PermGroup& action() const { return action_; }
  std::size_t size() const { return keys_.size(); }

  // Image in the action of an arbitrary element of the parent.
  Permutation act(const Permutation& g) const;
  // Images of the parent's base under the canonical representative.
  const std::vector<Point>& key(std::size_t coset) const { return keys_[coset]; }
  Permutation representative(std::size_t coset) const;
  std::size_t coset_of(const Permutation& g) const;

 private:
  friend CosetSpace coset_action(const PermGroup&, const PermGroup&, std::size_t,
                                 std::uint64_t);
  struct KeyHash {
    std::size_t operator()(const std::vector<Point>& v) const;
  };
  std::pair<std::vector<Point>, Permutation> canonical(Permutation g) const;

  PermGroup parent_;
  PermGroup subgroup_;
  StabChain lchain_{0};
  BigInt index_;
  PermGroup action_;
  std::vector<std::vector<Point>> keys_;
  std::vector<Permutation> reps_;  // empty when reconstructed on demand
  std::shared_ptr<std::unordered_map<std::vector<Point>, std::uint32_t, KeyHash>> lookup_;
};

inline constexpr std::size_t kDefaultIndexBound = 1'000'000;

CosetSpace coset_action(const PermGroup& g, const PermGroup& l,
                        std::size_t max_index = kDefaultIndexBound, std::uint64_t seed = 0);

// |H|^2 / |H ∩ sHs^-1| == |G|, i.e. G = sHs^-1 H.
bool product_covers(const PermGroup& g, const Permutation& s, const PermGroup& h);
// |H ∩ sHs^-1| by enumerating H.
BigInt conjugate_intersection_order(const PermGroup& h, const Permutation& s);

}  // namespace bbt

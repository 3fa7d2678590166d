#include "bbt/blockact.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "bbt/arith.hpp"
#include "bbt/errors.hpp"

namespace bbt {

BlockSystem::BlockSystem(const std::vector<std::uint32_t>& block_of) {
  std::unordered_map<std::uint32_t, std::uint32_t> relabel;
  block_of_.reserve(block_of.size());
  std::vector<std::size_t> sizes;
  for (auto b : block_of) {
    auto [it, fresh] = relabel.emplace(b, static_cast<std::uint32_t>(relabel.size()));
    if (fresh) sizes.push_back(0);
    ++sizes[it->second];
    block_of_.push_back(it->second);
  }
  block_count_ = sizes.size();
  block_size_ = sizes.empty() ? 0 : sizes[0];
  for (auto s : sizes) {
    if (s != block_size_) throw ValidationError("blocks have unequal sizes");
  }
}

BlockSystem BlockSystem::singletons(std::size_t degree) {
  std::vector<std::uint32_t> b(degree);
  std::iota(b.begin(), b.end(), 0);
  return BlockSystem(b);
}

BlockSystem BlockSystem::universal(std::size_t degree) {
  return BlockSystem(std::vector<std::uint32_t>(degree, 0));
}

std::vector<Point> BlockSystem::block(std::uint32_t b) const {
  std::vector<Point> out;
  for (Point x = 0; x < block_of_.size(); ++x) {
    if (block_of_[x] == b) out.push_back(x);
  }
  return out;
}

bool BlockSystem::is_invariant(const PermGroup& g) const {
  if (g.degree() != degree()) return false;
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> image(block_count_);
  for (const auto& h : g.generators()) {
    std::fill(image.begin(), image.end(), kUnset);
    for (Point x = 0; x < degree(); ++x) {
      const std::uint32_t to = block_of_[h(x)];
      auto& slot = image[block_of_[x]];
      if (slot == kUnset) slot = to;
      else if (slot != to) return false;
    }
  }
  return true;
}

ImprimitiveAction::ImprimitiveAction(PermGroup group, BlockSystem blocks)
    : group_(std::move(group)), blocks_(std::move(blocks)) {
  if (!blocks_.is_invariant(group_)) throw ValidationError("block system is not invariant");
}

PermGroup ImprimitiveAction::block_action() const {
  std::vector<Permutation> gens;
  const std::size_t nb = blocks_.block_count();
  std::vector<Point> rep(nb);
  for (Point x = static_cast<Point>(blocks_.degree()); x-- > 0;) rep[blocks_.block_of(x)] = x;
  for (const auto& h : group_.generators()) {
    std::vector<Point> img(nb);
    for (std::uint32_t b = 0; b < nb; ++b) img[b] = blocks_.block_of(h(rep[b]));
    gens.emplace_back(std::move(img));
  }
  GroupOptions opts;
  opts.order_bound = group_.order();
  return PermGroup::from_generators(nb, std::move(gens), opts);
}

BigInt ImprimitiveAction::block_kernel_order() const {
  return group_.order() / block_action().order();
}

ImprimitiveAction imprimitive_coset_action(const CosetSpace& cs, Point alpha) {
  const auto base = cs.parent().chain().base();
  const bool use_key = !base.empty() && base[0] == alpha;
  std::vector<std::uint32_t> labels(cs.size());
  for (std::size_t c = 0; c < cs.size(); ++c) {
    labels[c] = use_key ? cs.key(c)[0] : cs.representative(c)(alpha);
  }
  return ImprimitiveAction(cs.action(), BlockSystem(labels));
}

BigInt distant_tuple_count(const BlockSystem& blocks, unsigned k) {
  if (k < 1) throw ValidationError("k must be positive");
  if (blocks.block_count() < k) return 0;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= BigInt(blocks.degree() - i * blocks.block_size());
  return r;
}

namespace {

bool kbbt_rec(const PermGroup& h, const BlockSystem& b, std::vector<bool>& excluded,
              unsigned k, std::size_t remaining) {
  if (k == 0) return true;
  if (remaining < k) return false;
  Point p = 0;
  while (excluded[b.block_of(p)]) ++p;
  if (h.orbit(p).size() != remaining * b.block_size()) return false;
  if (k == 1) return true;
  const PermGroup hp = h.stabilizer(p);
  excluded[b.block_of(p)] = true;
  const bool ok = kbbt_rec(hp, b, excluded, k - 1, remaining - 1);
  excluded[b.block_of(p)] = false;
  return ok;
}

}  // namespace

bool is_k_by_block_transitive(const ImprimitiveAction& act, unsigned k) {
  if (k < 1) throw ValidationError("k must be positive");
  const auto& b = act.blocks();
  std::vector<bool> excluded(b.block_count(), false);
  return kbbt_rec(act.group(), b, excluded, k, b.block_count());
}

std::pair<Point, Point> base_distant_pair(const BlockSystem& blocks) {
  if (blocks.block_count() < 2) throw ValidationError("need at least two blocks");
  Point x = 1;
  while (blocks.block_of(x) == blocks.block_of(0)) ++x;
  return {0, x};
}

PermGroup distant_pair_stabilizer(const ImprimitiveAction& act) {
  auto [a, b] = base_distant_pair(act.blocks());
  const Point pts[2] = {a, b};
  return act.group().pointwise_stabilizer(pts);
}

namespace {

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Point find(Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

BlockSystem minimal_blocks(const PermGroup& g, const std::vector<Point>& seed) {
  const std::size_t n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  for (std::size_t i = 1; i < seed.size(); ++i) {
    if (uf.unite(seed[0], seed[i])) queue.emplace_back(seed[0], seed[i]);
  }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const auto [a, b] = queue[h];
    for (const auto& gen : g.generators()) {
      const Point x = gen(a), y = gen(b);
      if (uf.unite(x, y)) queue.emplace_back(x, y);
    }
  }
  std::vector<std::uint32_t> labels(n);
  for (Point x = 0; x < n; ++x) labels[x] = uf.find(x);
  return BlockSystem(labels);
}

BlockSystem coarsest_invariant_blocks(const PermGroup& g) {
  if (g.degree() < 2) throw ValidationError("degree must be at least 2");
  if (!g.is_transitive()) throw ValidationError("group is not transitive");
  const std::size_t n = g.degree();
  std::vector<Point> reps;
  {
    const PermGroup g0 = g.stabilizer(0);
    for (const auto& o : g0.orbits()) {
      if (o[0] != 0) reps.push_back(*std::min_element(o.begin(), o.end()));
    }
    std::sort(reps.begin(), reps.end());
  }
  std::vector<BlockSystem> minimal;
  for (Point x : reps) {
    BlockSystem b = minimal_blocks(g, {0, x});
    if (b.block_count() > 1) minimal.push_back(std::move(b));
  }
  if (minimal.empty()) return BlockSystem::singletons(n);
  BlockSystem best = minimal.front();
  for (bool grown = true; grown;) {
    grown = false;
    std::vector<Point> seed = best.block(best.block_of(0));
    for (Point y : reps) {
      if (best.block_of(y) == best.block_of(0)) continue;
      seed.push_back(y);
      BlockSystem c = minimal_blocks(g, seed);
      seed.pop_back();
      if (c.block_count() > 1) {
        best = std::move(c);
        grown = true;
        break;
      }
    }
  }
  const std::uint32_t home = best.block_of(0);
  for (const auto& m : minimal) {
    for (Point x : m.block(m.block_of(0))) {
      if (best.block_of(x) != home) throw AmbiguityError("several maximal block systems");
    }
  }
  return best;
}

bool is_sharply_2bbt(const ImprimitiveAction& act) {
  return is_k_by_block_transitive(act, 2) &&
         act.group().order() == distant_tuple_count(act.blocks(), 2);
}

TripleOrbitReport distant_triple_orbits(const ImprimitiveAction& act) {
  const auto& b = act.blocks();
  if (b.block_count() < 3) throw ValidationError("need at least three blocks");
  if (!is_k_by_block_transitive(act, 2)) {
    throw ValidationError("action is not 2-by-block-transitive");
  }
  auto [w0, w1] = base_distant_pair(b);
  const PermGroup p = distant_pair_stabilizer(act);
  const BigInt pairs = distant_tuple_count(b, 2);
  TripleOrbitReport rep;
  rep.n = b.block_size();
  for (const auto& o : p.orbits()) {
    const auto blk = b.block_of(o[0]);
    if (blk == b.block_of(w0) || blk == b.block_of(w1)) continue;
    rep.orbit_sizes.push_back(pairs * o.size());
  }
  rep.orbit_count = rep.orbit_sizes.size();
  const std::size_t n2 = rep.n * rep.n;
  if (rep.orbit_count % n2 == 0 && (rep.orbit_count == n2 || rep.orbit_count == 2 * n2)) {
    rep.c = static_cast<unsigned>(rep.orbit_count / n2);
  }
  return rep;
}

Rational pair_stabilizer_order(const BigInt& order_g, const BigInt& order_point,
                               const BigInt& order_block) {
  if (order_block >= order_g) throw ValidationError("block stabilizer must be proper");
  return Rational(order_point * order_point, order_g - order_block);
}

std::vector<BigInt> admissible_subgroup_orders(const BigInt& order_g, const BigInt& order_block) {
  if (order_block <= 0 || order_g % order_block != 0) {
    throw ValidationError("block stabilizer order must divide the group order");
  }
  const BigInt diff = order_g - order_block;
  std::vector<BigInt> out;
  for (const auto& d : divisors(order_block)) {
    if (diff == 0 || (d * d) % diff == 0) out.push_back(d);
  }
  return out;
}

std::size_t distant_tuple_orbits_bruteforce(const ImprimitiveAction& act, unsigned k) {
  const auto& b = act.blocks();
  const std::size_t n = b.degree();
  if (n > 60) throw ResourceError("brute-force tuple enumeration is limited to degree 60");
  if (k < 1) throw ValidationError("k must be positive");
  if (b.block_count() < k) return 0;
  std::vector<std::vector<Point>> tuples;
  std::vector<Point> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == k) {
      tuples.push_back(cur);
      return;
    }
    for (Point x = 0; x < n; ++x) {
      bool ok = true;
      for (Point y : cur) ok = ok && b.block_of(x) != b.block_of(y);
      if (!ok) continue;
      cur.push_back(x);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  auto code = [&](const std::vector<Point>& t) {
    std::uint64_t c = 0;
    for (Point x : t) c = c * n + x;
    return c;
  };
  std::unordered_map<std::uint64_t, Point> index;
  for (Point i = 0; i < tuples.size(); ++i) index.emplace(code(tuples[i]), i);
  UnionFind uf(tuples.size());
  std::size_t comps = tuples.size();
  std::vector<Point> img(k);
  for (const auto& g : act.group().generators()) {
    for (Point i = 0; i < tuples.size(); ++i) {
      for (unsigned j = 0; j < k; ++j) img[j] = g(tuples[i][j]);
      if (uf.unite(i, index.at(code(img)))) --comps;
    }
  }
  return comps;
}

}  // namespace bbt

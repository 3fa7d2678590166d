#include "bbt/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>

#include "bbt/errors.hpp"

namespace bbt {

namespace {

constexpr std::size_t kTrivialSiftLimit = 40;
constexpr std::size_t kPoolSize = 10;
constexpr std::size_t kStoredRepLimit = 50'000'000;

std::size_t bit_width(std::size_t v) {
  std::size_t w = 0;
  while (v) {
    ++w;
    v >>= 1;
  }
  return w;
}

}  // namespace

// ---------------------------------------------------------------- StabChain

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

BigInt StabChain::order() const {
  BigInt r = 1;
  for (const auto& lv : levels_) r *= lv.orbit.size();
  return r;
}

std::pair<Permutation, std::size_t> StabChain::sift(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    Point x = g(lv.base);
    if (lv.label[x] == -2) return {std::move(g), i};
    while (lv.label[x] != -1) {
      g = strong_inv_[static_cast<std::size_t>(lv.label[x])] * g;
      x = g(lv.base);
    }
  }
  return {std::move(g), levels_.size()};
}

bool StabChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return sift(g).first.is_identity();
}

Permutation StabChain::transversal(std::size_t i, Point x) const {
  const Level& lv = levels_[i];
  if (lv.label[x] == -2) throw ValidationError("point outside basic orbit");
  Permutation u(degree_);
  // u_x = s_{k1} * u_{parent}; accumulate from the root side.
  std::vector<std::uint32_t> path;
  while (lv.label[x] != -1) {
    auto k = static_cast<std::uint32_t>(lv.label[x]);
    path.push_back(k);
    x = strong_inv_[k](x);
  }
  for (auto it = path.begin(); it != path.end(); ++it) u = u * strong_[*it];
  return u;
}

StabChain StabChain::tail(std::size_t depth) const {
  StabChain out(degree_);
  std::vector<std::int32_t> remap(strong_.size(), -1);
  for (std::size_t i = depth; i < levels_.size(); ++i) {
    for (auto k : levels_[i].gens) {
      if (remap[k] < 0) {
        remap[k] = static_cast<std::int32_t>(out.strong_.size());
        out.strong_.push_back(strong_[k]);
        out.strong_inv_.push_back(strong_inv_[k]);
      }
    }
  }
  for (std::size_t i = depth; i < levels_.size(); ++i) {
    Level lv = levels_[i];
    for (auto& k : lv.gens) k = static_cast<std::uint32_t>(remap[k]);
    for (auto& lab : lv.label) {
      if (lab >= 0) lab = remap[static_cast<std::size_t>(lab)];
    }
    out.levels_.push_back(std::move(lv));
  }
  return out;
}

std::vector<Permutation> StabChain::level_generators(std::size_t i) const {
  std::vector<Permutation> out;
  if (i >= levels_.size()) return out;
  for (auto k : levels_[i].gens) out.push_back(strong_[k]);
  return out;
}

void StabChain::rebuild_orbit(std::size_t i) {
  // Breadth-first Schreier tree. Deep trees make sifting quadratic, so the
  // deepest transversal element is promoted to a generator until shallow.
  for (int extra = 0;; ++extra) {
    Level& lv = levels_[i];
    lv.label.assign(degree_, -2);
    lv.orbit.clear();
    lv.label[lv.base] = -1;
    lv.orbit.push_back(lv.base);
    std::vector<std::uint32_t> depth(degree_, 0);
    std::uint32_t max_depth = 0;
    Point deepest = lv.base;
    for (std::size_t h = 0; h < lv.orbit.size(); ++h) {
      Point x = lv.orbit[h];
      for (auto k : lv.gens) {
        Point y = strong_[k](x);
        if (lv.label[y] == -2) {
          lv.label[y] = static_cast<std::int32_t>(k);
          lv.orbit.push_back(y);
          depth[y] = depth[x] + 1;
          if (depth[y] > max_depth) {
            max_depth = depth[y];
            deepest = y;
          }
        }
      }
    }
    if (extra >= 24 || max_depth <= 2 * bit_width(lv.orbit.size()) + 2) return;
    Permutation u = transversal(i, deepest);
    strong_.push_back(u);
    strong_inv_.push_back(u.inverse());
    levels_[i].gens.push_back(static_cast<std::uint32_t>(strong_.size() - 1));
  }
}

void StabChain::add_strong(const Permutation& h, std::size_t j) {
  if (j == levels_.size()) {
    Level lv;
    lv.base = h.first_moved();
    levels_.push_back(std::move(lv));
  }
  strong_.push_back(h);
  strong_inv_.push_back(h.inverse());
  auto k = static_cast<std::uint32_t>(strong_.size() - 1);
  for (std::size_t l = 0; l <= j; ++l) levels_[l].gens.push_back(k);
  for (std::size_t l = 0; l <= j; ++l) rebuild_orbit(l);
}

void StabChain::random_phase(const std::vector<Permutation>& gens, const BigInt& bound,
                             std::uint64_t seed) {
  if (gens.empty()) return;
  Rng rng(seed ^ 0x5eed5eedULL);
  std::vector<Permutation> pool = gens;
  while (pool.size() < kPoolSize) pool.push_back(gens[pool.size() % gens.size()]);
  Permutation acc(degree_);
  auto step = [&]() {
    std::size_t a = rng.below(pool.size());
    std::size_t b = rng.below(pool.size() - 1);
    if (b >= a) ++b;
    pool[a] = rng.below(2) ? pool[a] * pool[b] : pool[a] * pool[b].inverse();
    acc = acc * pool[a];
    return acc;
  };
  for (int i = 0; i < 50; ++i) step();
  std::size_t misses = 0;
  while (misses < kTrivialSiftLimit) {
    if (bound > 0 && order() >= bound) return;
    auto [res, j] = sift(step());
    if (res.is_identity()) {
      ++misses;
    } else {
      add_strong(res, j);
      misses = 0;
    }
  }
}

void StabChain::complete_deterministically() {
  auto i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    auto ui = static_cast<std::size_t>(i);
    bool restarted = false;
    const std::vector<std::uint32_t> gens = levels_[ui].gens;
    const std::vector<Point> orb = levels_[ui].orbit;
    for (Point x : orb) {
      Permutation ux = transversal(ui, x);
      for (auto k : gens) {
        Point y = strong_[k](x);
        Permutation h = transversal(ui, y).inverse() * strong_[k] * ux;
        auto [res, j] = sift(std::move(h), ui + 1);
        if (!res.is_identity()) {
          add_strong(res, j);
          i = static_cast<std::ptrdiff_t>(j);
          if (j == levels_.size()) i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
          restarted = true;
          break;
        }
      }
      if (restarted) break;
    }
    if (!restarted) --i;
  }
}

void StabChain::build(const std::vector<Permutation>& gens, const GroupOptions& opts) {
  if (degree_ > opts.degree_bound) {
    throw ResourceError("degree " + std::to_string(degree_) + " exceeds bound");
  }
  levels_.clear();
  strong_.clear();
  strong_inv_.clear();
  for (Point b : opts.base_prefix) {
    if (b >= degree_) throw ValidationError("base point out of range");
    Level lv;
    lv.base = b;
    levels_.push_back(std::move(lv));
    rebuild_orbit(levels_.size() - 1);
  }
  for (const auto& g : gens) {
    auto [res, j] = sift(g);
    if (!res.is_identity()) add_strong(res, j);
  }
  BigInt bound = opts.order_bound.value_or(0);
  random_phase(gens, bound, opts.seed);
  if (bound > 0 && order() > bound) {
    throw ValidationError("group order exceeds the supplied bound " + bound.str());
  }
  if (bound == 0 || order() < bound) complete_deterministically();
  if (bound > 0 && order() > bound) {
    throw ValidationError("group order exceeds the supplied bound " + bound.str());
  }
}

// ---------------------------------------------------------------- PermGroup

struct PermGroup::State {
  std::size_t degree = 0;
  std::vector<Permutation> gens;
  GroupOptions opts;
  std::once_flag once;
  std::optional<StabChain> chain;
  BigInt order;
};

PermGroup PermGroup::from_generators(std::size_t degree, std::vector<Permutation> gens,
                                     GroupOptions opts) {
  auto s = std::make_shared<State>();
  s->degree = degree;
  for (auto& g : gens) {
    if (g.degree() != degree) throw ValidationError("generator degree mismatch");
    if (!g.is_identity()) s->gens.push_back(std::move(g));
  }
  s->opts = std::move(opts);
  return PermGroup(std::move(s));
}

PermGroup PermGroup::from_chain(std::size_t degree, StabChain chain, std::uint64_t seed) {
  auto s = std::make_shared<State>();
  s->degree = degree;
  s->gens = chain.level_generators(0);
  s->opts.seed = seed;
  std::call_once(s->once, [&]() {
    s->order = chain.order();
    s->chain.emplace(std::move(chain));
  });
  return PermGroup(std::move(s));
}

PermGroup PermGroup::symmetric(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
    std::vector<Point> cyc(n);
    std::iota(cyc.begin(), cyc.end(), Point{0});
    gens.push_back(Permutation::from_cycles(n, {cyc}));
  }
  GroupOptions o;
  o.order_bound = factorial(static_cast<unsigned>(n));
  return from_generators(n, std::move(gens), o);
}

PermGroup PermGroup::alternating(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 3) {
    gens.push_back(Permutation::from_cycles(n, {{0, 1, 2}}));
    std::vector<Point> cyc;
    for (Point i = (n % 2 == 1) ? 0 : 1; i < n; ++i) cyc.push_back(i);
    if (cyc.size() >= 2) gens.push_back(Permutation::from_cycles(n, {cyc}));
  }
  GroupOptions o;
  o.order_bound = n >= 2 ? BigInt(factorial(static_cast<unsigned>(n)) / 2) : BigInt(1);
  return from_generators(n, std::move(gens), o);
}

std::size_t PermGroup::degree() const { return s_->degree; }

const std::vector<Permutation>& PermGroup::generators() const { return s_->gens; }

const StabChain& PermGroup::chain() const {
  std::call_once(s_->once, [this]() {
    StabChain c(s_->degree);
    c.build(s_->gens, s_->opts);
    s_->order = c.order();
    s_->chain.emplace(std::move(c));
  });
  return *s_->chain;
}

const BigInt& PermGroup::order() const {
  chain();
  return s_->order;
}

bool PermGroup::is_member(const Permutation& p) const { return chain().contains(p); }

std::vector<Point> PermGroup::orbit(Point pt) const {
  std::vector<Point> out{pt};
  std::vector<bool> seen(degree(), false);
  seen[pt] = true;
  for (std::size_t h = 0; h < out.size(); ++h) {
    for (const auto& g : s_->gens) {
      Point y = g(out[h]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree(), false);
  for (Point p = 0; p < degree(); ++p) {
    if (seen[p]) continue;
    auto o = orbit(p);
    for (Point x : o) seen[x] = true;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

bool PermGroup::is_transitive() const {
  return degree() <= 1 || orbit(0).size() == degree();
}

PermGroup PermGroup::with_base(std::span<const Point> prefix) const {
  const auto& c = chain();
  auto b = c.base();
  if (b.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), b.begin())) {
    return *this;
  }
  GroupOptions o = s_->opts;
  o.order_bound = order();
  o.base_prefix.assign(prefix.begin(), prefix.end());
  StabChain nc(degree());
  nc.build(s_->gens, o);
  auto s = std::make_shared<State>();
  s->degree = degree();
  s->gens = s_->gens;
  s->opts = o;
  std::call_once(s->once, [&]() {
    s->order = nc.order();
    s->chain.emplace(std::move(nc));
  });
  return PermGroup(std::move(s));
}

PermGroup PermGroup::pointwise_stabilizer(std::span<const Point> pts) const {
  PermGroup g = with_base(pts);
  return from_chain(degree(), g.chain().tail(pts.size()), s_->opts.seed);
}

PermGroup PermGroup::stabilizer(Point pt) const {
  Point p[1] = {pt};
  return pointwise_stabilizer(p);
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (other.degree() != degree()) return false;
  for (const auto& g : s_->gens) {
    if (!other.is_member(g)) return false;
  }
  return true;
}

bool PermGroup::same_group(const PermGroup& other) const {
  return is_subgroup_of(other) && order() == other.order();
}

std::vector<Permutation> PermGroup::elements(std::size_t limit) const {
  if (order() > limit) throw ResourceError("group of order " + order().str() + " too large to list");
  const auto& c = chain();
  std::vector<Permutation> out{Permutation(degree())};
  for (auto lv = c.levels().size(); lv-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * c.levels()[lv].orbit.size());
    for (Point x : c.levels()[lv].orbit) {
      Permutation u = c.transversal(lv, x);
      for (const auto& e : out) next.push_back(u * e);
    }
    out = std::move(next);
  }
  return out;
}

Permutation PermGroup::random_element(Rng& rng) const {
  const auto& c = chain();
  Permutation g(degree());
  for (std::size_t i = 0; i < c.levels().size(); ++i) {
    const auto& orb = c.levels()[i].orbit;
    g = g * c.transversal(i, orb[rng.below(orb.size())]);
  }
  return g;
}

PermGroup from_generators(std::size_t degree, const std::vector<Permutation>& gens) {
  return PermGroup::from_generators(degree, gens);
}

std::vector<Point> orbit(const PermGroup& g, Point pt) { return g.orbit(pt); }

PermGroup stabilizer(const PermGroup& g, Point pt) { return g.stabilizer(pt); }

bool is_member(const PermGroup& g, const Permutation& p) { return g.is_member(p); }

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& gens) {
  std::vector<Permutation> hg;
  for (const auto& x : gens) {
    if (!x.is_identity()) hg.push_back(x);
  }
  GroupOptions o;
  o.order_bound = g.order();
  PermGroup h = PermGroup::from_generators(g.degree(), hg, o);
  for (;;) {
    std::vector<Permutation> added;
    for (const auto& y : h.generators()) {
      for (const auto& x : g.generators()) {
        Permutation c = conjugate(y, x);
        if (!h.is_member(c)) {
          bool dup = false;
          for (const auto& a : added) dup = dup || a == c;
          if (!dup) added.push_back(c);
        }
      }
    }
    if (added.empty()) return h;
    hg = h.generators();
    hg.insert(hg.end(), added.begin(), added.end());
    h = PermGroup::from_generators(g.degree(), hg, o);
  }
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator(gens[i], gens[j]);
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  }
  return normal_closure(g, comms);
}

// ---------------------------------------------------------------- CosetSpace

std::size_t CosetSpace::KeyHash::operator()(const std::vector<Point>& v) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : v) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::pair<std::vector<Point>, Permutation> CosetSpace::canonical(Permutation g) const {
  const auto& lv = lchain_.levels();
  const auto gbase = parent_.chain().base();
  for (std::size_t i = 0; i < lv.size(); ++i) {
    Point best = lv[i].orbit.front();
    for (Point o : lv[i].orbit) {
      if (g(o) < g(best)) best = o;
    }
    if (best != lv[i].base) g = g * lchain_.transversal(i, best);
  }
  std::vector<Point> key(gbase.size());
  for (std::size_t i = 0; i < gbase.size(); ++i) key[i] = g(gbase[i]);
  return {std::move(key), std::move(g)};
}

Permutation CosetSpace::representative(std::size_t coset) const {
  if (!reps_.empty()) return reps_[coset];
  const auto& c = parent_.chain();
  const auto& key = keys_[coset];
  Permutation h(parent_.degree());
  for (std::size_t i = 0; i < c.levels().size(); ++i) {
    Point y = h.inverse()(key[i]);
    h = h * c.transversal(i, y);
  }
  return h;
}

std::size_t CosetSpace::coset_of(const Permutation& g) const {
  auto key = canonical(g).first;
  auto it = lookup_->find(key);
  if (it == lookup_->end()) throw ValidationError("element outside the parent group");
  return it->second;
}

Permutation CosetSpace::act(const Permutation& g) const {
  std::vector<Point> img(size());
  for (std::size_t c = 0; c < size(); ++c) {
    img[c] = static_cast<Point>(coset_of(g * representative(c)));
  }
  return Permutation(std::move(img));
}

CosetSpace coset_action(const PermGroup& g, const PermGroup& l, std::size_t max_index,
                        std::uint64_t seed) {
  if (l.degree() != g.degree()) throw ValidationError("subgroup degree mismatch");
  if (g.order() % l.order() != 0) throw ValidationError("subgroup order does not divide");
  BigInt index = g.order() / l.order();
  if (index > max_index) {
    throw ResourceError("coset action of index " + index.str() + " exceeds bound");
  }
  if (!l.is_subgroup_of(g)) throw ValidationError("not a subgroup");
  CosetSpace cs;
  cs.parent_ = g;
  cs.subgroup_ = l;
  cs.index_ = index;
  auto gbase = g.chain().base();
  cs.lchain_ = l.with_base(gbase).chain();
  cs.lookup_ = std::make_shared<
      std::unordered_map<std::vector<Point>, std::uint32_t, CosetSpace::KeyHash>>();
  const auto n = static_cast<std::size_t>(index);
  const bool store = n * g.degree() <= kStoredRepLimit;
  const auto& gens = g.generators();
  std::vector<std::vector<Point>> img(gens.size(), std::vector<Point>(n, 0));

  auto [k0, r0] = cs.canonical(Permutation(g.degree()));
  cs.lookup_->emplace(k0, 0);
  cs.keys_.push_back(std::move(k0));
  if (store) cs.reps_.push_back(r0);
  std::deque<Permutation> queue;
  if (!store) queue.push_back(r0);
  for (std::size_t c = 0; c < cs.keys_.size(); ++c) {
    Permutation rep;
    if (store) {
      rep = cs.reps_[c];
    } else {
      rep = std::move(queue.front());
      queue.pop_front();
    }
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto [key, r] = cs.canonical(gens[k] * rep);
      auto it = cs.lookup_->find(key);
      std::uint32_t idx;
      if (it == cs.lookup_->end()) {
        idx = static_cast<std::uint32_t>(cs.keys_.size());
        if (idx >= n) throw ValidationError("coset enumeration overflow");
        cs.lookup_->emplace(key, idx);
        cs.keys_.push_back(std::move(key));
        if (store) {
          cs.reps_.push_back(std::move(r));
        } else {
          queue.push_back(std::move(r));
        }
      } else {
        idx = it->second;
      }
      img[k][c] = idx;
    }
  }
  if (cs.keys_.size() != n) throw ValidationError("coset enumeration incomplete");
  std::vector<Permutation> agens;
  for (auto& v : img) agens.emplace_back(std::move(v));
  GroupOptions o;
  o.order_bound = g.order();
  o.seed = seed;
  cs.action_ = PermGroup::from_generators(n, std::move(agens), o);
  return cs;
}

BigInt conjugate_intersection_order(const PermGroup& h, const Permutation& s) {
  Permutation si = s.inverse();
  BigInt count = 0;
  for (const auto& x : h.elements(4'000'000)) {
    if (h.is_member(si * x * s)) ++count;
  }
  return count;
}

bool product_covers(const PermGroup& g, const Permutation& s, const PermGroup& h) {
  BigInt inter = conjugate_intersection_order(h, s);
  return h.order() * h.order() == g.order() * inter;
}

}  // namespace bbt

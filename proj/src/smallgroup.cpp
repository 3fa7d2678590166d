#include "bbt/smallgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "bbt/errors.hpp"

namespace bbt {

namespace {

std::size_t bits_for(std::size_t degree) {
  std::size_t b = 1;
  while ((std::size_t{1} << b) < degree) ++b;
  return b;
}

}  // namespace

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

bool ElementSet::subset_of(const ElementSet& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (w_[i] & ~o.w_[i]) return false;
  }
  return true;
}

std::vector<std::uint32_t> ElementSet::members() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    for (std::uint64_t w = w_[i]; w; w &= w - 1) {
      out.push_back(static_cast<std::uint32_t>(i * 64 + __builtin_ctzll(w)));
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto w : w_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "order=" << order << " exponent=" << exponent << " derived_length=" << derived_length
     << " abelianization=[";
  for (std::size_t i = 0; i < abelian_invariants.size(); ++i) {
    os << (i ? "," : "") << abelian_invariants[i];
  }
  os << "]";
  return os.str();
}

std::uint64_t SmallGroup::key_of(const Permutation& p) const {
  const std::size_t b = bits_for(degree_);
  std::uint64_t k = 0;
  if (base_.size() * b <= 64) {
    for (Point x : base_) k = (k << b) | p(x);
    return k;
  }
  k = 1469598103934665603ULL;
  for (Point x : base_) {
    k ^= p(x);
    k *= 1099511628211ULL;
  }
  return k;
}

std::optional<SmallGroup::Elt> SmallGroup::index_of(const Permutation& p) const {
  if (p.degree() != degree_) return std::nullopt;
  auto k = key_of(p);
  auto it = std::lower_bound(index_.begin(), index_.end(), std::make_pair(k, Elt{0}));
  if (it == index_.end() || it->first != k) return std::nullopt;
  if (elts_[it->second] != p) return std::nullopt;
  return it->second;
}

SmallGroup SmallGroup::from_perm_group(const PermGroup& g, std::size_t limit) {
  limit = std::min(limit, kMaxOrder);
  if (g.order() > limit) {
    throw ResourceError("group of order " + g.order().str() + " exceeds the Cayley-table bound");
  }
  SmallGroup sg;
  sg.degree_ = g.degree();
  sg.base_ = g.chain().base();
  sg.elts_ = g.elements(limit);
  sg.n_ = sg.elts_.size();
  auto id = std::find_if(sg.elts_.begin(), sg.elts_.end(),
                         [](const Permutation& p) { return p.is_identity(); });
  std::iter_swap(sg.elts_.begin(), id);
  const std::size_t n = sg.n_;
  sg.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) sg.index_.emplace_back(sg.key_of(sg.elts_[i]), static_cast<Elt>(i));
  std::sort(sg.index_.begin(), sg.index_.end());
  for (std::size_t i = 1; i < n; ++i) {
    if (sg.index_[i].first == sg.index_[i - 1].first) {
      throw ResourceError("element key collision in Cayley table");
    }
  }
  // Products only need base images: (a*b)(x) = a(b(x)).
  const std::size_t bl = sg.base_.size();
  std::vector<Point> bimg(n * bl);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < bl; ++j) bimg[i * bl + j] = sg.elts_[i](sg.base_[j]);
  }
  const std::size_t bits = bits_for(sg.degree_);
  const bool packed = bl * bits <= 64;
  sg.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& pa = sg.elts_[a];
    for (std::size_t b = 0; b < n; ++b) {
      std::uint64_t k = packed ? 0 : 1469598103934665603ULL;
      for (std::size_t j = 0; j < bl; ++j) {
        Point y = pa(bimg[b * bl + j]);
        if (packed) {
          k = (k << bits) | y;
        } else {
          k ^= y;
          k *= 1099511628211ULL;
        }
      }
      auto it = std::lower_bound(sg.index_.begin(), sg.index_.end(), std::make_pair(k, Elt{0}));
      sg.table_[a * n + b] = it->second;
    }
  }
  sg.inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (sg.table_[a * n + b] == 0) {
        sg.inv_[a] = static_cast<Elt>(b);
        break;
      }
    }
  }
  sg.ord_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::uint32_t o = 1;
    for (Elt x = static_cast<Elt>(a); x != 0; x = sg.mul(x, static_cast<Elt>(a))) ++o;
    sg.ord_[a] = o;
  }
  for (const auto& p : g.generators()) sg.gens_.push_back(*sg.index_of(p));
  return sg;
}

SmallGroup::Subgroup SmallGroup::whole() const { return closure(gens_); }

SmallGroup::Subgroup SmallGroup::closure(const std::vector<Elt>& gens) const {
  Subgroup h;
  h.elements = ElementSet(n_);
  h.elements.set(0);
  for (Elt g : gens) {
    if (g != 0 && std::find(h.gens.begin(), h.gens.end(), g) == h.gens.end()) h.gens.push_back(g);
  }
  std::vector<Elt> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Elt g : h.gens) {
      Elt y = mul(queue[i], g);
      if (!h.elements.test(y)) {
        h.elements.set(y);
        queue.push_back(y);
      }
    }
  }
  return h;
}

ElementSet SmallGroup::conjugate(const ElementSet& h, Elt by) const {
  ElementSet out(n_);
  for (auto x : h.members()) out.set(conj(static_cast<Elt>(x), by));
  return out;
}

SmallGroup::Subgroup SmallGroup::conjugate(const Subgroup& h, Elt by) const {
  Subgroup out;
  out.elements = conjugate(h.elements, by);
  for (Elt g : h.gens) out.gens.push_back(conj(g, by));
  return out;
}

SmallGroup::Subgroup SmallGroup::derived(const Subgroup& h) const {
  std::vector<Elt> comms;
  for (Elt a : h.gens) {
    for (Elt b : h.gens) {
      Elt c = mul(mul(inv(a), inv(b)), mul(a, b));
      if (c != 0) comms.push_back(c);
    }
  }
  Subgroup d = closure(comms);
  for (;;) {
    std::vector<Elt> extra;
    for (Elt x : d.gens) {
      for (Elt g : h.gens) {
        Elt c = conj(x, g);
        if (!d.elements.test(c)) extra.push_back(c);
      }
    }
    if (extra.empty()) return d;
    auto gens = d.gens;
    gens.insert(gens.end(), extra.begin(), extra.end());
    d = closure(gens);
  }
}

Fingerprint SmallGroup::fingerprint(const Subgroup& h) const {
  Fingerprint f;
  const auto mem = h.elements.members();
  f.order = mem.size();
  for (auto x : mem) f.exponent = std::lcm(f.exponent, std::uint64_t{ord_[x]});

  Subgroup cur = h;
  int len = 0;
  while (cur.order() > 1) {
    Subgroup next = derived(cur);
    if (next.order() == cur.order()) {
      len = -1;
      break;
    }
    cur = std::move(next);
    ++len;
  }
  f.derived_length = len;

  Subgroup d = derived(h);
  const std::size_t dsize = d.order();
  const std::uint64_t m = f.order / dsize;
  // Count cosets of the derived subgroup by their order in the quotient.
  std::map<std::uint64_t, std::uint64_t> by_order;
  for (auto x : mem) {
    std::uint64_t j = 1;
    Elt y = static_cast<Elt>(x);
    while (!d.elements.test(y)) {
      y = mul(y, static_cast<Elt>(x));
      ++j;
    }
    by_order[j] += 1;
  }
  for (auto& [o, c] : by_order) c /= dsize;
  std::uint64_t rest = m;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    // s_k = log_p #{a : a^{p^k} = 1} = sum_i min(k, a_i).
    std::vector<int> s{0};
    std::uint64_t pk = 1;
    for (;;) {
      pk *= p;
      std::uint64_t cnt = 0;
      for (auto& [o, c] : by_order) {
        if (pk % o == 0) cnt += c;
      }
      int sk = 0;
      for (std::uint64_t t = cnt; t > 1; t /= p) ++sk;
      s.push_back(sk);
      if (s.back() == s[s.size() - 2]) break;
    }
    std::vector<int> ge(s.size() + 1, 0);
    for (std::size_t k = 1; k < s.size(); ++k) ge[k] = s[k] - s[k - 1];
    for (std::size_t k = 1; k < s.size(); ++k) {
      int exact = ge[k] - ge[k + 1];
      std::uint64_t pa = 1;
      for (std::size_t i = 0; i < k; ++i) pa *= p;
      for (int i = 0; i < exact; ++i) f.abelian_invariants.push_back(pa);
    }
  }
  std::sort(f.abelian_invariants.begin(), f.abelian_invariants.end());
  return f;
}

std::vector<std::vector<SmallGroup::Subgroup>> SmallGroup::subgroup_classes() const {
  auto is_prime_power = [](std::uint32_t v) {
    if (v < 2) return false;
    std::uint32_t p = 2;
    while (v % p) ++p;
    while (v % p == 0) v /= p;
    return v == 1;
  };
  std::vector<Subgroup> cyclics;
  std::unordered_set<ElementSet, ElementSetHash> cseen;
  for (std::size_t a = 1; a < n_; ++a) {
    if (!is_prime_power(ord_[a])) continue;
    Subgroup c = closure({static_cast<Elt>(a)});
    if (cseen.insert(c.elements).second) cyclics.push_back(std::move(c));
  }

  std::vector<std::vector<Subgroup>> classes;
  std::unordered_set<ElementSet, ElementSetHash> seen;
  auto add_class = [&](Subgroup rep) {
    if (seen.count(rep.elements)) return;
    std::vector<Subgroup> members;
    seen.insert(rep.elements);
    members.push_back(std::move(rep));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Elt g : gens_) {
        Subgroup c = conjugate(members[i], g);
        if (seen.insert(c.elements).second) members.push_back(std::move(c));
      }
    }
    classes.push_back(std::move(members));
  };
  add_class(closure({}));
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const Subgroup rep = classes[ci].front();
    for (const auto& c : cyclics) {
      Elt gen = c.gens.front();
      if (rep.elements.test(gen)) continue;
      auto gens = rep.gens;
      gens.push_back(gen);
      Subgroup k = closure(gens);
      if (!seen.count(k.elements)) add_class(std::move(k));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    return a.front().order() < b.front().order();
  });
  return classes;
}

std::vector<SmallGroup::Subgroup> SmallGroup::all_subgroups() const {
  std::vector<Subgroup> out;
  for (auto& cls : subgroup_classes()) {
    for (auto& h : cls) out.push_back(std::move(h));
  }
  return out;
}

PermGroup SmallGroup::to_perm_group(const Subgroup& h) const {
  std::vector<Permutation> gens;
  for (Elt g : h.gens) gens.push_back(elts_[g]);
  GroupOptions o;
  o.order_bound = BigInt(h.order());
  return PermGroup::from_generators(degree_, std::move(gens), o);
}

Fingerprint fingerprint(const PermGroup& g) {
  auto sg = SmallGroup::from_perm_group(g);
  return sg.fingerprint(sg.whole());
}

}  // namespace bbt

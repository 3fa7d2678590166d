#include "bbt/metacyclic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "bbt/errors.hpp"

namespace bbt {

namespace {

std::uint64_t modn(std::int64_t v, std::uint64_t n) {
  return static_cast<std::uint64_t>(mod_floor(v, static_cast<std::int64_t>(n)));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

}  // namespace

void validate(const MetacyclicSpec& sp) {
  if (sp.N == 0 || sp.m == 0) throw ValidationError("N and m must be positive");
  const std::uint64_t N = sp.N;
  const std::uint64_t a = modn(sp.a, N);
  if (std::gcd(a, N) != 1 && N > 1) throw ValidationError("a must be a unit mod N");
  std::uint64_t am = 1 % N;
  for (std::uint64_t i = 0; i < sp.m; ++i) am = mulmod(am, a, N);
  if (am != 1 % N) throw ValidationError("a^m must be 1 mod N");
  const std::uint64_t r = modn(sp.rprime, N);
  if (mulmod(a, r, N) != r) throw ValidationError("a * rprime must equal rprime mod N");
  const std::uint64_t k1 = modn(sp.k + 1, N);
  if (mulmod(k1, k1, N) != 1 % N) throw ValidationError("(k+1)^2 must be 1 mod N");
  const std::uint64_t l = modn(sp.l, N);
  if (mulmod(l, modn(sp.k + 2, N), N) != 0) throw ValidationError("l(k+2) must be 0 mod N");
  const std::uint64_t am_sum = alpha(static_cast<std::int64_t>(a), sp.m, N);
  if (mulmod(l, am_sum, N) != mulmod(modn(sp.k, N), r, N)) {
    throw ValidationError("s does not preserve y^m = x^rprime (need l*alpha(m) = k*rprime mod N)");
  }
}

MetacyclicGroup::MetacyclicGroup(const MetacyclicSpec& spec) : spec_(spec) {
  validate(spec_);
  const std::uint64_t N = spec_.N;
  spec_.a = static_cast<std::int64_t>(modn(spec_.a, N));
  spec_.rprime = static_cast<std::int64_t>(modn(spec_.rprime, N));
  spec_.k = static_cast<std::int64_t>(modn(spec_.k, N));
  spec_.l = static_cast<std::int64_t>(modn(spec_.l, N));
  apow_.resize(spec_.m + 1);
  alpha_.resize(spec_.m + 1);
  apow_[0] = 1 % N;
  alpha_[0] = 0;
  for (std::uint64_t j = 0; j < spec_.m; ++j) {
    apow_[j + 1] = mulmod(apow_[j], static_cast<std::uint64_t>(spec_.a), N);
    alpha_[j + 1] = (alpha_[j] + apow_[j]) % N;
  }
}

MetaElt MetacyclicGroup::mul(MetaElt u, MetaElt v) const {
  const std::uint64_t N = spec_.N;
  std::uint64_t i = (u.i + mulmod(apow_[u.j], v.i, N)) % N;
  std::uint64_t j = u.j + v.j;
  if (j >= spec_.m) {
    j -= spec_.m;
    i = (i + static_cast<std::uint64_t>(spec_.rprime)) % N;
  }
  return {i, j};
}

MetaElt MetacyclicGroup::y() const {
  if (spec_.m == 1) return {modn(spec_.rprime, spec_.N), 0};
  return {0, 1};
}

MetaElt MetacyclicGroup::inv(MetaElt u) const {
  // (x^i y^j)^-1 = y^-j x^-i; y^-j = x^-r y^(m-j) for j > 0
  const std::uint64_t N = spec_.N;
  MetaElt yinv{0, 0};
  if (u.j > 0) yinv = {(N - static_cast<std::uint64_t>(spec_.rprime)) % N, spec_.m - u.j};
  return mul(yinv, MetaElt{(N - u.i) % N, 0});
}

MetaElt MetacyclicGroup::pow(MetaElt u, std::uint64_t e) const {
  MetaElt r{0, 0};
  MetaElt b = u;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

MetaElt MetacyclicGroup::s_conj(MetaElt u) const {
  const std::uint64_t N = spec_.N;
  const std::uint64_t i = (mulmod(u.i, modn(spec_.k + 1, N), N) +
                           mulmod(static_cast<std::uint64_t>(spec_.l), alpha_[u.j], N)) % N;
  return {i, u.j};
}

std::vector<std::uint64_t> MetacyclicGroup::closure(const std::vector<MetaElt>& gens) const {
  std::vector<bool> seen(order(), false);
  std::vector<std::uint64_t> out{0};
  seen[0] = true;
  for (std::size_t h = 0; h < out.size(); ++h) {
    const MetaElt e = element(out[h]);
    for (const auto& g : gens) {
      const std::uint64_t t = index(mul(e, g));
      if (!seen[t]) {
        seen[t] = true;
        out.push_back(t);
      }
    }
  }
  return out;
}

Realization realize(const MetacyclicSpec& spec) {
  const MetacyclicGroup g(spec);
  const std::uint64_t n = g.order();
  if (2 * n > kDefaultDegreeBound) throw ResourceError("realization exceeds the degree bound");
  // Point 2*idx + eps stands for x^i y^j s^eps; left multiplication.
  auto left = [&](MetaElt h, bool hs) {
    std::vector<Point> img(2 * n);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      const MetaElt e = g.element(idx);
      for (int eps = 0; eps < 2; ++eps) {
        // (h s^hs)(e s^eps) = h (s^hs e s^hs) s^(hs+eps)
        const MetaElt moved = hs ? g.s_conj(e) : e;
        const MetaElt prod = g.mul(h, moved);
        const int out_eps = (eps + (hs ? 1 : 0)) % 2;
        img[2 * idx + eps] = static_cast<Point>(2 * g.index(prod) + out_eps);
      }
    }
    return Permutation(std::move(img));
  };
  Realization r;
  r.x = left(g.x(), false);
  r.y = left(g.y(), false);
  r.s = left(MetaElt{0, 0}, true);
  const std::size_t deg = 2 * n;
  const auto id = Permutation::identity(deg);
  auto xp = [&](std::int64_t e) { return power(r.x, e); };
  if (power(r.x, static_cast<long long>(spec.N)) != id) throw ValidationError("x^N != 1");
  if (power(r.y, static_cast<long long>(spec.m)) != xp(spec.rprime)) throw ValidationError("y^m != x^rprime");
  if (r.y * r.x * r.y.inverse() != xp(spec.a)) throw ValidationError("y x y^-1 != x^a");
  if (r.s * r.s != id) throw ValidationError("s^2 != 1");
  if (r.s * r.x * r.s != xp(spec.k + 1)) throw ValidationError("s x s != x^(k+1)");
  if (r.s * r.y * r.s != xp(spec.l) * r.y) throw ValidationError("s y s != x^l y");
  GroupOptions o;
  o.order_bound = BigInt(n);
  r.xy = PermGroup::from_generators(deg, {r.x, r.y}, o);
  o.order_bound = BigInt(2 * n);
  r.group = PermGroup::from_generators(deg, {r.x, r.y, r.s}, o);
  if (r.xy.order() != n || r.group.order() != 2 * n) throw ValidationError("realization has wrong order");
  return r;
}

CoverEnumeration enumerate_covers(const MetacyclicSpec& spec, std::uint64_t n, std::uint64_t bound) {
  if (n == 0) throw ValidationError("index must be positive");
  if (spec.N * spec.m > bound) throw ResourceError("metacyclic group exceeds the brute-force bound");
  const MetacyclicGroup g(spec);
  const std::uint64_t N = spec.N, m = spec.m, G = g.order();
  CoverEnumeration out;
  out.n = n;
  if (G % n != 0) return out;
  const MetaElt x = g.x(), y = g.y();
  const std::vector<std::uint64_t> xn_yn = g.closure({g.pow(x, n), g.pow(y, n)});
  std::vector<bool> in_xn_yn(G, false);
  for (auto e : xn_yn) in_xn_yn[e] = true;
  std::vector<char> in_h(G), in_sh(G);
  for (std::uint64_t c = 1; c <= N; ++c) {
    if (N % c || n % c || m % (n / c)) continue;
    const std::uint64_t u = n / c;
    // Valid offsets i: (x^i y^u)^(m/u) lies in <x^c>.
    std::vector<std::uint64_t> valid;
    for (std::uint64_t i = 0; i < c; ++i) {
      const MetaElt p = g.pow(MetaElt{i, u % m}, m / u);
      if (p.j == 0 && p.i % c == 0) valid.push_back(i);
    }
    out.candidates += valid.size();
    std::vector<std::uint64_t> witness_of(c, ~std::uint64_t{0});
    for (std::uint64_t i : valid) {
      const auto h = g.closure({MetaElt{c % N, 0}, MetaElt{i, u % m}});
      if (h.size() * n != G) throw ValidationError("subgroup normal form has the wrong order");
      std::fill(in_h.begin(), in_h.end(), 0);
      std::fill(in_sh.begin(), in_sh.end(), 0);
      for (auto e : h) in_h[e] = 1;
      for (auto e : h) in_sh[g.index(g.s_conj(g.element(e)))] = 1;
      std::uint64_t inter = 0;
      bool same = true;
      for (std::uint64_t e = 0; e < G; ++e) {
        const bool both = in_h[e] && in_sh[e];
        inter += both;
        same = same && (both == in_xn_yn[e]);
      }
      const auto hs = static_cast<unsigned __int128>(h.size());
      if (hs * hs != static_cast<unsigned __int128>(G) * inter) continue;
      witness_of[i] = out.witnesses.size();
      out.witnesses.push_back({c, u, i, inter, same});
    }
    // Conjugation by x and y permutes the offsets of subgroups with this (c, u).
    std::vector<std::uint64_t> parent(c);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint64_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (std::uint64_t i : valid) {
      for (const MetaElt& by : {x, y}) {
        const MetaElt img = g.conj(MetaElt{i, u % m}, by);
        const std::uint64_t i2 = img.i % c;
        const std::uint64_t r1 = find(i), r2 = find(i2);
        if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
      }
    }
    std::vector<bool> counted(c, false);
    for (std::uint64_t i : valid) {
      if (witness_of[i] == ~std::uint64_t{0}) continue;
      const std::uint64_t r = find(i);
      if (!counted[r]) {
        counted[r] = true;
        ++out.class_count;
      }
    }
  }
  out.subgroup_count = out.witnesses.size();
  return out;
}

DivisorData derive_d(const MetacyclicSpec& spec) {
  validate(spec);
  const std::uint64_t N = spec.N;
  DivisorData d;
  d.k0 = std::gcd(std::gcd(modn(spec.k, N), modn(spec.l, N)), N);
  const std::uint64_t r = modn(spec.rprime, N);
  const std::uint64_t xq = std::gcd(N, r);  // |<x> : <y^m>|, with gcd(N, 0) = N
  std::uint64_t d0 = std::gcd(spec.m, xq);
  for (auto [p, e] : factorize(std::max<std::uint64_t>(d.k0, 1))) {
    if (d.k0 <= 1) break;
    while (d0 % p == 0) d0 /= p;
  }
  d.d0 = d0;
  const std::int64_t a = spec.a;
  std::uint64_t dd = 1;
  for (auto [p, e] : factorize(d0)) {
    unsigned keep = 0;
    if (p == 2) {
      if (mod_floor(a, 4) == 1) keep = e;
      else if (e > 0 && mod_floor(a, 4) == 3) keep = 1;
    } else if (mod_floor(a, static_cast<std::int64_t>(p)) == 1) {
      keep = e;
    }
    for (unsigned t = 0; t < keep; ++t) dd *= p;
  }
  d.d = dd;
  return d;
}

CoverPrediction predict_covers(const MetacyclicSpec& spec, std::uint64_t n) {
  CoverPrediction p;
  const DivisorData d = derive_d(spec);
  if (d.d % n != 0) return p;
  p.nonempty = true;
  p.subgroup_count = phi_k(spec.k, n);
  const std::uint64_t g = std::gcd(modn(spec.a - 1, spec.N * n), n);
  p.class_count = phi_k(spec.k, g);
  return p;
}

MetacyclicSpec rank1_metacyclic_spec(const LieParams& lp) {
  validate(lp);
  if (lp.family == LieFamily::PSL3) throw ValidationError("PSL3 is not of rank 1");
  const BigInt N = lp.field_units() / lp.t_G;
  if (N > std::numeric_limits<std::int64_t>::max() / 4) throw ResourceError("torus order too large");
  MetacyclicSpec s;
  s.N = N.convert_to<std::uint64_t>();
  s.m = lp.e_G;
  auto reduce = [&](const BigInt& v) {
    BigInt r = v % N;
    if (r < 0) r += N;
    return r.convert_to<std::int64_t>();
  };
  s.a = reduce(lp.a_G());
  s.rprime = reduce(lp.rprime() / lp.t_G);
  s.k = reduce(lp.k());
  s.l = reduce(lp.k() * lp.r_G / lp.t_G);
  validate(s);
  return s;
}

namespace {

// A = Z_{m_1} x ... x Z_{m_r}, elements encoded in mixed radix.
struct Abelian {
  std::vector<std::uint64_t> mod;
  std::uint64_t size = 1;
  explicit Abelian(std::vector<std::uint64_t> m) : mod(std::move(m)) {
    for (auto v : mod) size *= v;
  }
  std::vector<std::uint64_t> decode(std::uint64_t x) const {
    std::vector<std::uint64_t> v(mod.size());
    for (std::size_t i = 0; i < mod.size(); ++i) {
      v[i] = x % mod[i];
      x /= mod[i];
    }
    return v;
  }
  std::uint64_t encode(const std::vector<std::int64_t>& v) const {
    std::uint64_t x = 0;
    for (std::size_t i = mod.size(); i-- > 0;) x = x * mod[i] + modn(v[i], mod[i]);
    return x;
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    auto u = decode(a), w = decode(b);
    std::vector<std::int64_t> s(mod.size());
    for (std::size_t i = 0; i < mod.size(); ++i) s[i] = static_cast<std::int64_t>(u[i] + w[i]);
    return encode(s);
  }
  // Map given by column images of the standard generators.
  std::vector<std::uint64_t> table(const std::vector<std::vector<std::int64_t>>& cols) const {
    if (cols.size() != mod.size()) throw ValidationError("matrix has wrong size");
    std::vector<std::uint64_t> t(size);
    for (std::uint64_t x = 0; x < size; ++x) {
      auto v = decode(x);
      std::vector<std::int64_t> img(mod.size(), 0);
      for (std::size_t j = 0; j < mod.size(); ++j) {
        if (cols[j].size() != mod.size()) throw ValidationError("matrix has wrong size");
        for (std::size_t i = 0; i < mod.size(); ++i) {
          img[i] = static_cast<std::int64_t>(modn(img[i] + cols[j][i] * static_cast<std::int64_t>(v[j]), mod[i]));
        }
      }
      t[x] = encode(img);
    }
    return t;
  }
  bool is_automorphism(const std::vector<std::uint64_t>& t) const {
    std::vector<bool> hit(size, false);
    for (auto v : t) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    for (std::uint64_t a = 0; a < size; ++a) {
      for (std::uint64_t b = 0; b < size; ++b) {
        if (t[add(a, b)] != add(t[a], t[b])) return false;
      }
    }
    return true;
  }
};

}  // namespace

Index2Check check_index2_cyclic(const AbelianByCyclicSpec& spec, std::uint64_t bound) {
  if (spec.moduli.empty() || spec.h_order == 0) throw ValidationError("empty specification");
  const Abelian A(spec.moduli);
  const std::uint64_t r = spec.h_order;
  const std::uint64_t G = A.size * r;
  if (G > bound) throw ResourceError("group exceeds the brute-force bound");
  const auto phi = A.table(spec.phi);
  const auto sigma = A.table(spec.sigma);
  if (!A.is_automorphism(phi)) throw ValidationError("phi is not an automorphism of A");
  if (!A.is_automorphism(sigma)) throw ValidationError("sigma is not an automorphism of A");
  std::vector<std::vector<std::uint64_t>> phipow(r + 1, std::vector<std::uint64_t>(A.size));
  for (std::uint64_t a = 0; a < A.size; ++a) phipow[0][a] = a;
  for (std::uint64_t j = 0; j < r; ++j) {
    for (std::uint64_t a = 0; a < A.size; ++a) phipow[j + 1][a] = phi[phipow[j][a]];
  }
  if (phipow[r] != phipow[0]) throw ValidationError("phi^h_order must be the identity");
  for (std::uint64_t a = 0; a < A.size; ++a) {
    if (sigma[sigma[a]] != a) throw ValidationError("sigma must be an involution");
    if (sigma[phi[a]] != phi[sigma[a]]) throw ValidationError("sigma must commute with phi");
  }
  const std::uint64_t c = A.encode(spec.c);
  // (c h)^r = (c + phi c + ... + phi^(r-1) c, 0) must be trivial; s(c h) = c h.
  std::uint64_t norm = 0;
  for (std::uint64_t j = 0; j < r; ++j) norm = A.add(norm, phipow[j][c]);
  if (norm != 0) throw ValidationError("s(h) must have order |h|");
  if (A.add(sigma[c], c) != 0) throw ValidationError("s must have order 2 (sigma(c) = -c)");

  // Element (a, j) = a h^j, index j * |A| + a.
  auto mul = [&](std::uint64_t u, std::uint64_t v) {
    const std::uint64_t ua = u % A.size, uj = u / A.size, va = v % A.size, vj = v / A.size;
    return ((uj + vj) % r) * A.size + A.add(ua, phipow[uj][va]);
  };
  // s(a h^j) = sigma(a) (c h)^j
  std::vector<std::uint64_t> ch_pow(r);
  ch_pow[0] = 0;
  const std::uint64_t ch = 1 * A.size + c;
  for (std::uint64_t j = 1; j < r; ++j) ch_pow[j] = mul(ch_pow[j - 1], ch);
  auto s_of = [&](std::uint64_t u) { return mul(sigma[u % A.size], ch_pow[u / A.size]); };
  // s must respect the multiplication.
  for (std::uint64_t u = 0; u < G; u += std::max<std::uint64_t>(1, G / 97)) {
    for (std::uint64_t v = 0; v < G; v += std::max<std::uint64_t>(1, G / 89)) {
      if (s_of(mul(u, v)) != mul(s_of(u), s_of(v))) throw ValidationError("s is not an automorphism");
    }
  }

  Index2Check out;
  out.group_order = G;
  std::uint64_t max_order = 1;
  for (std::uint64_t a = 1; a < A.size; ++a) {
    std::uint64_t o = 1;
    for (std::uint64_t t = a; t != 0; t = A.add(t, a)) ++o;
    max_order = std::max(max_order, o);
  }
  out.a_has_cyclic_index2 = 2 * max_order >= A.size;

  // H ∩ A = 1 forces H to embed in G/A, so H is cyclic.
  std::vector<char> seen_gen(G, 0);
  std::vector<std::uint64_t> h, sh;
  std::vector<char> in_h(G);
  for (std::uint64_t g = 0; g < G; ++g) {
    if (seen_gen[g]) continue;
    h.assign(1, 0);
    bool meets_a = false;
    for (std::uint64_t t = g; t != 0; t = mul(t, g)) {
      if (t < A.size) meets_a = true;
      h.push_back(t);
    }
    // Mark generators of <g> so each cyclic subgroup is visited once.
    for (std::size_t e = 1; e < h.size(); ++e) {
      if (std::gcd<std::uint64_t, std::uint64_t>(e, h.size()) == 1) seen_gen[h[e]] = 1;
    }
    if (meets_a) continue;
    ++out.subgroups_checked;
    std::fill(in_h.begin(), in_h.end(), 0);
    for (auto e : h) in_h[e] = 1;
    std::uint64_t inter = 0;
    for (auto e : h) inter += in_h[s_of(e)];
    if (static_cast<unsigned __int128>(h.size()) * h.size() == static_cast<unsigned __int128>(G) * inter) {
      ++out.covers;
    }
  }
  return out;
}

}  // namespace bbt

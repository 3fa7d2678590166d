#include "bbt/matgrp.hpp"

#include <numeric>

#include "bbt/errors.hpp"

namespace bbt {

using Elt = FiniteField::Elt;

std::string to_string(LinearFamily f) {
  switch (f) {
    case LinearFamily::SL: return "SL";
    case LinearFamily::GL: return "GL";
    case LinearFamily::SigmaL: return "SigmaL";
    case LinearFamily::GammaL: return "GammaL";
    case LinearFamily::ZSL: return "ZSL";
  }
  return "?";
}

SemilinearMap identity_map(std::size_t dim) {
  SemilinearMap m;
  m.dim = dim;
  m.a.assign(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

namespace {

SemilinearMap frob_entries(const FiniteField& f, const SemilinearMap& x, unsigned k) {
  SemilinearMap r = x;
  if (k % f.e() == 0) return r;
  for (auto& v : r.a) v = f.frob(v, k);
  return r;
}

SemilinearMap linear_product(const FiniteField& f, const SemilinearMap& x, const SemilinearMap& y) {
  const std::size_t d = x.dim;
  SemilinearMap r;
  r.dim = d;
  r.a.assign(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Elt xik = x.at(i, k);
      if (!xik) continue;
      for (std::size_t j = 0; j < d; ++j) r.at(i, j) = f.add(r.at(i, j), f.mul(xik, y.at(k, j)));
    }
  }
  return r;
}

bool is_scalar(const SemilinearMap& x) {
  if (x.frob != 0) return false;
  const Elt c = x.at(0, 0);
  if (c == 0) return false;
  for (std::size_t i = 0; i < x.dim; ++i) {
    for (std::size_t j = 0; j < x.dim; ++j) {
      if (x.at(i, j) != (i == j ? c : 0)) return false;
    }
  }
  return true;
}

}  // namespace

SemilinearMap compose(const FiniteField& f, const SemilinearMap& x, const SemilinearMap& y) {
  if (x.dim != y.dim) throw ValidationError("dimension mismatch");
  SemilinearMap r = linear_product(f, x, frob_entries(f, y, x.frob));
  r.frob = (x.frob + y.frob) % f.e();
  return r;
}

SemilinearMap inverse(const FiniteField& f, const SemilinearMap& x) {
  const std::size_t d = x.dim;
  // Gauss-Jordan on [A | I].
  std::vector<Elt> m(x.a);
  SemilinearMap inv = identity_map(d);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv * d + c] == 0) ++piv;
    if (piv == d) throw ValidationError("singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < d; ++j) {
        std::swap(m[piv * d + j], m[c * d + j]);
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    }
    const Elt s = f.inv(m[c * d + c]);
    for (std::size_t j = 0; j < d; ++j) {
      m[c * d + j] = f.mul(m[c * d + j], s);
      inv.at(c, j) = f.mul(inv.at(c, j), s);
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r * d + c] == 0) continue;
      const Elt t = f.neg(m[r * d + c]);
      for (std::size_t j = 0; j < d; ++j) {
        m[r * d + j] = f.add(m[r * d + j], f.mul(t, m[c * d + j]));
        inv.at(r, j) = f.add(inv.at(r, j), f.mul(t, inv.at(c, j)));
      }
    }
  }
  const unsigned back = (f.e() - x.frob % f.e()) % f.e();
  SemilinearMap r = frob_entries(f, inv, back);
  r.frob = back;
  return r;
}

Vec apply(const FiniteField& f, const SemilinearMap& x, const Vec& v) {
  const std::size_t d = x.dim;
  Vec w(d, 0);
  for (std::size_t k = 0; k < d; ++k) {
    const Elt vk = x.frob ? f.frob(v[k], x.frob) : v[k];
    if (!vk) continue;
    for (std::size_t i = 0; i < d; ++i) w[i] = f.add(w[i], f.mul(x.at(i, k), vk));
  }
  return w;
}

Elt determinant(const FiniteField& f, const SemilinearMap& x) {
  const std::size_t d = x.dim;
  std::vector<Elt> m(x.a);
  Elt det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv * d + c] == 0) ++piv;
    if (piv == d) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < d; ++j) std::swap(m[piv * d + j], m[c * d + j]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c * d + c]);
    const Elt s = f.inv(m[c * d + c]);
    for (std::size_t r = c + 1; r < d; ++r) {
      if (m[r * d + c] == 0) continue;
      const Elt t = f.neg(f.mul(m[r * d + c], s));
      for (std::size_t j = c; j < d; ++j) m[r * d + j] = f.add(m[r * d + j], f.mul(t, m[c * d + j]));
    }
  }
  return det;
}

SemilinearMap transvection(std::size_t dim, std::size_t i, std::size_t j, Elt lambda) {
  if (i == j || i >= dim || j >= dim) throw ValidationError("bad transvection indices");
  SemilinearMap m = identity_map(dim);
  m.at(i, j) = lambda;
  return m;
}

SemilinearMap diagonal(const Vec& d) {
  SemilinearMap m = identity_map(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

SemilinearMap frobenius_map(std::size_t dim, unsigned k) {
  SemilinearMap m = identity_map(dim);
  m.frob = k;
  return m;
}

std::uint64_t projective_order(const FiniteField& f, const SemilinearMap& x) {
  const std::uint64_t limit = std::uint64_t{f.q()} * f.q() * f.q() * f.q() * f.e() + 1;
  SemilinearMap cur = x;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (is_scalar(cur)) return k;
    cur = compose(f, cur, x);
  }
  throw ValidationError("projective order not found");
}

ProjectiveSpace::ProjectiveSpace(std::shared_ptr<const FiniteField> field, std::size_t dim,
                                 std::size_t degree_bound)
    : field_(std::move(field)), dim_(dim) {
  if (dim < 2) throw ValidationError("projective space needs dimension >= 2");
  const std::uint64_t q = field_->q();
  std::uint64_t codes = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    codes *= q;
    if (codes > (std::uint64_t{1} << 26)) throw ResourceError("vector space too large to index");
  }
  const std::uint64_t npts = (codes - 1) / (q - 1);
  if (npts > degree_bound) throw ResourceError("projective space exceeds the degree bound");
  code_to_point_.assign(codes, -1);
  points_.reserve(npts * dim);
  Vec v(dim);
  for (std::uint64_t code = 0; code < codes; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = dim; i-- > 0;) {
      v[i] = static_cast<Elt>(c % q);
      c /= q;
    }
    std::size_t lead = 0;
    while (lead < dim && v[lead] == 0) ++lead;
    if (lead == dim || v[lead] != 1) continue;
    code_to_point_[code] = static_cast<std::int32_t>(points_.size() / dim);
    points_.insert(points_.end(), v.begin(), v.end());
  }
}

Vec ProjectiveSpace::point(Point i) const {
  return Vec(points_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
             points_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
}

Point ProjectiveSpace::index_of(const Vec& v) const {
  if (v.size() != dim_) throw ValidationError("vector has wrong dimension");
  std::size_t lead = 0;
  while (lead < dim_ && v[lead] == 0) ++lead;
  if (lead == dim_) throw ValidationError("zero vector spans no line");
  const FiniteField& f = *field_;
  const Elt s = f.inv(v[lead]);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < dim_; ++i) code = code * f.q() + f.mul(v[i], s);
  return static_cast<Point>(code_to_point_[code]);
}

Permutation ProjectiveSpace::permutation(const SemilinearMap& x) const {
  if (x.dim != dim_) throw ValidationError("map has wrong dimension");
  const std::size_t n = size();
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i) img[i] = index_of(apply(*field_, x, point(i)));
  return Permutation(std::move(img));
}

std::size_t ProjectiveAction::transvection_index(std::size_t i, std::size_t j, unsigned k) const {
  const std::size_t d = dim();
  const std::size_t pos = i * (d - 1) + (j < i ? j : j - 1);
  return pos * field().e() + k;
}

std::optional<std::size_t> ProjectiveAction::delta_index() const {
  if (family != LinearFamily::GL && family != LinearFamily::GammaL) return std::nullopt;
  return dim() * (dim() - 1) * field().e();
}

std::optional<std::size_t> ProjectiveAction::frobenius_index() const {
  if (family != LinearFamily::SigmaL && family != LinearFamily::GammaL) return std::nullopt;
  if (field().e() == 1) return std::nullopt;
  return dim() * (dim() - 1) * field().e() + (delta_index() ? 1 : 0);
}

namespace {

BigInt sl_order(std::size_t d, const BigInt& q) {
  BigInt r = 1;
  for (std::size_t i = 0; i < d * (d - 1) / 2; ++i) r *= q;
  BigInt qi = q;
  for (std::size_t i = 2; i <= d; ++i) {
    qi *= q;
    r *= qi - 1;
  }
  return r;
}

}  // namespace

BigInt projective_group_order(LinearFamily family, std::size_t n, std::uint64_t p, unsigned e) {
  const std::size_t d = n + 1;
  BigInt q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  const BigInt sl = sl_order(d, q);
  const BigInt g = std::gcd(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(q - 1));
  switch (family) {
    case LinearFamily::SL:
    case LinearFamily::ZSL: return sl / g;
    case LinearFamily::GL: return sl;
    case LinearFamily::SigmaL: return sl / g * e;
    case LinearFamily::GammaL: return sl * e;
  }
  return sl;
}

ProjectiveAction projective_group(LinearFamily family, std::size_t n,
                                  std::shared_ptr<const FiniteField> field,
                                  std::size_t degree_bound, std::uint64_t seed) {
  if (n < 1) throw ValidationError("projective dimension must be at least 1");
  ProjectiveAction act;
  act.family = family;
  act.n = n;
  const std::size_t d = n + 1;
  act.space = std::make_shared<const ProjectiveSpace>(field, d, degree_bound);
  const FiniteField& f = *field;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      for (unsigned k = 0; k < f.e(); ++k) act.matrices.push_back(transvection(d, i, j, f.exp(k)));
    }
  }
  if (family == LinearFamily::GL || family == LinearFamily::GammaL) {
    Vec dg(d, 1);
    dg[0] = f.mu();
    act.matrices.push_back(diagonal(dg));
  }
  if ((family == LinearFamily::SigmaL || family == LinearFamily::GammaL) && f.e() > 1) {
    act.matrices.push_back(frobenius_map(d, 1));
  }
  std::vector<Permutation> perms;
  perms.reserve(act.matrices.size());
  for (const auto& m : act.matrices) perms.push_back(act.space->permutation(m));
  Vec v(d, 0);
  v[0] = 1;
  act.alpha0 = act.space->index_of(v);
  v[0] = 0;
  v[1] = 1;
  act.alpha1 = act.space->index_of(v);
  GroupOptions opts;
  opts.order_bound = projective_group_order(family, n, f.p(), f.e());
  opts.base_prefix = {act.alpha0, act.alpha1};
  opts.seed = seed;
  opts.degree_bound = degree_bound;
  act.group = PermGroup::from_generators(act.space->size(), std::move(perms), opts);
  return act;
}

namespace {

void push_transvection(const ProjectiveAction& act, std::size_t i, std::size_t j, Elt lambda,
                       std::vector<int>& word) {
  const auto digits = act.field().digits(lambda);
  for (unsigned k = 0; k < digits.size(); ++k) {
    const int g = static_cast<int>(act.transvection_index(i, j, k)) + 1;
    for (std::uint32_t c = 0; c < digits[k]; ++c) word.push_back(g);
  }
}

// Transvection factors (i, j, lambda) whose product is the SL matrix b.
std::vector<std::tuple<std::size_t, std::size_t, Elt>> sl_factors(const FiniteField& f,
                                                                  SemilinearMap b) {
  const std::size_t d = b.dim;
  std::vector<std::tuple<std::size_t, std::size_t, Elt>> ops;  // applied on the left, in order
  auto row_op = [&](std::size_t i, std::size_t j, Elt lambda) {
    for (std::size_t c = 0; c < d; ++c) b.at(i, c) = f.add(b.at(i, c), f.mul(lambda, b.at(j, c)));
    ops.emplace_back(i, j, lambda);
  };
  for (std::size_t c = 0; c < d; ++c) {
    if (b.at(c, c) == 0) {
      std::size_t r = c + 1;
      while (r < d && b.at(r, c) == 0) ++r;
      if (r == d) throw ValidationError("singular matrix");
      row_op(c, r, 1);
    }
    const Elt s = f.inv(b.at(c, c));
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || b.at(r, c) == 0) continue;
      row_op(r, c, f.neg(f.mul(b.at(r, c), s)));
    }
  }
  std::vector<std::tuple<std::size_t, std::size_t, Elt>> out;
  for (const auto& [i, j, l] : ops) out.emplace_back(i, j, f.neg(l));
  // b is now diagonal with determinant one: b = prod_i h_i(c_i), c_i = b_00 ... b_ii.
  Elt c = 1;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    c = f.mul(c, b.at(i, i));
    if (c == 1) continue;
    // h(c) = w(c) w(-1), w(v) = x12(v) x21(-1/v) x12(v)
    for (Elt v : {c, f.neg(1)}) {
      out.emplace_back(i, i + 1, v);
      out.emplace_back(i + 1, i, f.neg(f.inv(v)));
      out.emplace_back(i, i + 1, v);
    }
  }
  if (f.mul(c, b.at(d - 1, d - 1)) != 1) throw ValidationError("matrix is not in SL");
  return out;
}

}  // namespace

std::vector<int> decompose(const ProjectiveAction& act, const SemilinearMap& x) {
  const FiniteField& f = act.field();
  const std::size_t d = act.dim();
  if (x.dim != d) throw ValidationError("map has wrong dimension");
  std::vector<int> word;
  SemilinearMap lin = x;
  lin.frob = 0;
  const Elt det = determinant(f, lin);
  if (det == 0) throw ValidationError("singular matrix");
  // Rescale by a scalar c with c^d det = 1 when possible.
  std::optional<Elt> scale;
  for (Elt c = 1; c < f.q() && !scale; ++c) {
    if (f.mul(f.pow(c, static_cast<std::int64_t>(d)), det) == 1) scale = c;
  }
  if (scale) {
    for (auto& v : lin.a) v = f.mul(v, *scale);
  } else {
    auto di = act.delta_index();
    if (!di) throw ValidationError("determinant is not a d-th power; element not in the group");
    const std::uint32_t k = f.log(det);
    for (std::uint32_t i = 0; i < k; ++i) word.push_back(static_cast<int>(*di) + 1);
    for (std::size_t j = 0; j < d; ++j) lin.at(0, j) = f.mul(lin.at(0, j), f.exp(-static_cast<std::int64_t>(k)));
  }
  for (const auto& [i, j, l] : sl_factors(f, lin)) push_transvection(act, i, j, l, word);
  if (x.frob % f.e() != 0) {
    auto fi = act.frobenius_index();
    if (!fi) throw ValidationError("field automorphism not in the group");
    for (unsigned i = 0; i < x.frob % f.e(); ++i) word.push_back(static_cast<int>(*fi) + 1);
  }
  return word;
}

Permutation evaluate_word(const PermGroup& g, const std::vector<int>& word) {
  const auto& gens = g.generators();
  Permutation r = Permutation::identity(g.degree());
  for (int w : word) {
    const std::size_t idx = static_cast<std::size_t>(w < 0 ? -w : w);
    if (w == 0 || idx > gens.size()) throw ValidationError("word letter out of range");
    r = r * (w > 0 ? gens[idx - 1] : gens[idx - 1].inverse());
  }
  return r;
}

SemilinearMap swap_matrix(const FiniteField& f, std::size_t dim) {
  SemilinearMap m = identity_map(dim);
  m.at(0, 0) = 0;
  m.at(1, 1) = 0;
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  if (dim == 2) m.at(1, 0) = f.neg(1);
  else m.at(2, 2) = f.neg(1);
  return m;
}

SpecialSubgroups special_subgroups(const ProjectiveAction& act) {
  if (act.n < 2) throw UnsupportedError("special subgroups need projective dimension >= 2");
  const FiniteField& f = act.field();
  const std::size_t d = act.dim();
  const std::size_t deg = act.space->size();
  SpecialSubgroups out;
  std::vector<Permutation> wg;
  for (std::size_t j = 1; j < d; ++j) {
    for (unsigned k = 0; k < f.e(); ++k) wg.push_back(act.permutation(transvection(d, 0, j, f.exp(k))));
  }
  BigInt qn = 1;
  for (std::size_t i = 0; i < act.n; ++i) qn *= f.q();
  GroupOptions wopts;
  wopts.order_bound = qn;
  out.W = PermGroup::from_generators(deg, wg, wopts);
  std::vector<Permutation> mg = wg;
  for (std::size_t i = 1; i < d; ++i) {
    for (std::size_t j = 1; j < d; ++j) {
      if (i == j) continue;
      for (unsigned k = 0; k < f.e(); ++k) mg.push_back(act.permutation(transvection(d, i, j, f.exp(k))));
    }
  }
  GroupOptions mopts;
  mopts.order_bound = qn * sl_order(act.n, BigInt(f.q()));
  mopts.base_prefix = {act.alpha0};
  out.M = PermGroup::from_generators(deg, mg, mopts);
  out.Z = PermGroup::trivial(deg);
  out.s_matrix = swap_matrix(f, d);
  out.s = act.permutation(out.s_matrix);
  out.block_stabilizer = act.group.stabilizer(act.alpha0);
  const Point pair[2] = {act.alpha0, act.alpha1};
  out.pair_stabilizer = act.group.pointwise_stabilizer(pair);
  return out;
}

PdetData pdet_order(LinearFamily family, std::size_t n, std::uint64_t q) {
  PdetData d;
  d.q = q;
  d.n = n;
  d.g = std::gcd<std::uint64_t, std::uint64_t>(n + 1, d.q - 1);
  d.c = (family == LinearFamily::GL || family == LinearFamily::GammaL) ? 1 : d.g;
  d.pdet_order = d.g / d.c;
  return d;
}

PdetData pdet_order(LinearFamily family, std::size_t n, const FiniteField& field) {
  return pdet_order(family, n, field.q());
}

Permutation frobenius(const ProjectiveAction& act, unsigned power) {
  if (act.field().e() == 1) throw UnsupportedError("prime field has no nontrivial Frobenius");
  return act.permutation(frobenius_map(act.dim(), power % act.field().e()));
}

SemilinearMap singer_matrix(const FiniteField& f) {
  const std::uint64_t target = std::uint64_t{f.q()} * f.q() - 1;
  const SemilinearMap id = identity_map(2);
  for (Elt b = 1; b < f.q(); ++b) {
    for (Elt a = 0; a < f.q(); ++a) {
      SemilinearMap c = identity_map(2);
      c.at(0, 0) = 0;
      c.at(0, 1) = b;
      c.at(1, 0) = 1;
      c.at(1, 1) = a;
      SemilinearMap cur = c;
      std::uint64_t ord = 1;
      while (!(cur == id) && ord <= target) {
        cur = compose(f, cur, c);
        ++ord;
      }
      if (ord == target) return c;
    }
  }
  throw ValidationError("no Singer cycle found");
}

PermGroup singer_subgroup(const ProjectiveAction& act) {
  if (act.n != 2) throw UnsupportedError("Singer subgroup construction needs n = 2");
  const FiniteField& f = act.field();
  const SemilinearMap s = singer_matrix(f);
  SemilinearMap m = identity_map(3);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) m.at(i + 1, j + 1) = s.at(i, j);
  }
  GroupOptions opts;
  opts.order_bound = BigInt(std::uint64_t{f.q()} * f.q() - 1);
  return PermGroup::from_generators(act.space->size(), {act.permutation(m)}, opts);
}

}  // namespace bbt

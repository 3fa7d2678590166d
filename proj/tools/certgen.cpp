// Regenerates the bundled certificates in data/certs. Maintenance tool; the
// tests only read its output.
//
//   certgen [--out DIR] [--seed N] [--rows Table1:row3,...]

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <unordered_set>

#include "bbt/classify.hpp"
#include "bbt/errors.hpp"
#include "bbt/field.hpp"
#include "bbt/matgrp.hpp"
#include "bbt/rng.hpp"
#include "bbt/verify.hpp"

using namespace bbt;

namespace {

using Elt = FiniteField::Elt;

std::uint64_t key(const FiniteField& f, const SemilinearMap& m) {
  std::uint64_t k = m.frob;
  for (Elt x : m.a) k = k * f.q() + x;
  return k;
}

// Group generated by small semilinear maps, listed by breadth-first search;
// nullopt once it exceeds cap.
std::optional<std::vector<SemilinearMap>> closure(const FiniteField& f, const std::vector<SemilinearMap>& gens,
                                                  std::size_t dim, std::size_t cap) {
  std::vector<SemilinearMap> elts{identity_map(dim)};
  std::unordered_set<std::uint64_t> seen{key(f, elts[0])};
  for (std::size_t i = 0; i < elts.size(); ++i) {
    for (const auto& g : gens) {
      SemilinearMap h = compose(f, g, elts[i]);
      h.frob %= f.e();
      if (seen.insert(key(f, h)).second) {
        elts.push_back(h);
        if (elts.size() > cap) return std::nullopt;
      }
    }
  }
  return elts;
}

SemilinearMap mat2(Elt a, Elt b, Elt c, Elt d, unsigned frob = 0) {
  SemilinearMap m;
  m.dim = 2;
  m.a = {a, b, c, d};
  m.frob = frob;
  return m;
}

// diag(1, B) on F_q^(k+1).
SemilinearMap embed(const SemilinearMap& b) {
  SemilinearMap m = identity_map(b.dim + 1);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j) m.at(i + 1, j + 1) = b.at(i, j);
  m.frob = b.frob;
  return m;
}

bool is_cube(const FiniteField& f, Elt x) { return (f.q() - 1) % 3 != 0 || f.log(x) % 3 == 0; }

// Linear part allowed in the point stabilizer of the family, via diag(1, B).
bool allowed(const FiniteField& f, LinearFamily fam, const SemilinearMap& b) {
  const bool det_ok = is_cube(f, determinant(f, b));
  switch (fam) {
    case LinearFamily::SL:
    case LinearFamily::ZSL: return b.frob == 0 && det_ok;
    case LinearFamily::SigmaL: return det_ok;
    case LinearFamily::GL: return b.frob == 0;
    case LinearFamily::GammaL: return true;
  }
  return false;
}

struct Built {
  std::vector<SemilinearMap> gens;  // generators of A (2x2)
  std::string note;
};

Certificate certificate_for(const Ambient& amb, const std::vector<SemilinearMap>& maps, const TableRow& row) {
  const ProjectiveAction& act = *amb.projective;
  Certificate c;
  c.group_id = row.group;
  c.table_ref = row.ref();
  std::vector<Permutation> perms;
  for (const auto& m : maps) {
    c.seed_words.push_back(decompose(act, m));
    perms.push_back(evaluate_word(amb.group, c.seed_words.back()));
  }
  PermGroup l = PermGroup::from_generators(amb.group.degree(), perms);
  c.claimed_order = l.order();
  c.claimed_index = amb.group.order() / l.order();
  c.claimed_block_size = amb.point_stabilizer.order() / l.order();
  c.claimed_pair_order = pair_intersection_order(amb, l);
  return c;
}

// W generators followed by diag(1, B) for B in gens.
std::vector<SemilinearMap> with_radical(const ProjectiveAction& act, const std::vector<SemilinearMap>& gens) {
  std::vector<SemilinearMap> out;
  const FiniteField& f = act.field();
  for (std::size_t j = 1; j < act.dim(); ++j)
    for (unsigned k = 0; k < f.e(); ++k) out.push_back(transvection(act.dim(), 0, j, f.exp(k)));
  for (const auto& g : gens) out.push_back(embed(g));
  return out;
}

std::vector<SemilinearMap> sl2_generators(const FiniteField& f) {
  std::vector<SemilinearMap> out;
  for (unsigned k = 0; k < f.e(); ++k) {
    out.push_back(mat2(1, f.exp(k), 0, 1));
    out.push_back(mat2(1, 0, f.exp(k), 1));
  }
  return out;
}

// Frobenius l -> l^(p^j) of F_{q^2} in the basis (e1, S e1), as a
// semilinear map on standard coordinates.
SemilinearMap field_automorphism(const FiniteField& f, const SemilinearMap& s, unsigned j) {
  const Vec e1{1, 0};
  const Vec se1 = apply(f, s, e1);
  SemilinearMap p = mat2(e1[0], se1[0], e1[1], se1[1]);
  SemilinearMap pinv = inverse(f, p);
  // Image of theta: S^(p^j) e1.
  std::uint64_t pj = 1;
  for (unsigned i = 0; i < j; ++i) pj *= f.p();
  SemilinearMap sp = identity_map(2);
  for (std::uint64_t i = 0; i < pj; ++i) sp = compose(f, s, sp);
  const Vec img = apply(f, sp, e1);
  SemilinearMap a = mat2(1, img[0], 0, img[1]);
  const unsigned fr = j % f.e();
  SemilinearMap phi_pinv = pinv;
  for (auto& x : phi_pinv.a) x = f.frob(x, fr);
  SemilinearMap out = compose(f, a, phi_pinv);
  out.frob = fr;
  return out;
}

Built build_pd(const FiniteField& f, LinearFamily fam, std::uint64_t b) {
  Built r;
  r.gens = sl2_generators(f);
  // det B in <mu^j>, with j chosen so the index of A is b.
  for (std::uint64_t j = 1; j <= f.q() - 1; ++j) {
    auto d = mat2(1, 0, 0, f.exp(static_cast<std::int64_t>(j)));
    if (!allowed(f, fam, d)) continue;
    const std::uint64_t img = (f.q() - 1) / std::gcd<std::uint64_t>(j, f.q() - 1);
    const std::uint64_t full = (f.q() - 1) / ((f.q() - 1) % 3 == 0 && (fam == LinearFamily::ZSL) ? 3 : 1);
    if (full / img == b) {
      r.gens.push_back(d);
      r.note = "SL2(q) with det in <mu^" + std::to_string(j) + ">";
      return r;
    }
  }
  throw std::runtime_error("no PD subgroup with block size " + std::to_string(b));
}

Built build_pf(const FiniteField& f, LinearFamily fam, unsigned dx, unsigned dy) {
  const SemilinearMap s = singer_matrix(f);
  SemilinearMap x = s;
  unsigned xp = 1;
  while (!allowed(f, fam, x)) x = compose(f, s, x), ++xp;
  // y generates the field automorphisms over F_p allowed in G.
  const bool semilinear = fam == LinearFamily::GammaL || fam == LinearFamily::SigmaL;
  SemilinearMap y = field_automorphism(f, s, semilinear ? 1 : f.e());
  SemilinearMap ydy = identity_map(2);
  for (unsigned i = 0; i < dy; ++i) ydy = compose(f, y, ydy);
  ydy.frob %= f.e();
  SemilinearMap xdx = identity_map(2), xdx1 = identity_map(2);
  for (unsigned i = 0; i < dx; ++i) xdx = compose(f, x, xdx);
  for (unsigned i = 0; i + 1 < dx; ++i) xdx1 = compose(f, x, xdx1);
  SemilinearMap second = compose(f, xdx1, ydy);
  second.frob %= f.e();
  Built r;
  r.gens = {xdx, second};
  r.note = "Singer power " + std::to_string(xp);
  return r;
}

// Subgroup of the allowed linear part with core SL2(3) or SL2(5), chosen
// among the overgroups of the core in its normalizer by the 2-bbt test.
Built build_exceptional(const Ambient& amb, const TableRow& row, std::uint64_t seed) {
  const FiniteField& f = amb.projective->field();
  const LinearFamily fam = amb.projective->family;
  const std::size_t core_order = row.stabilizer.find("SL2(5)") != std::string::npos ? 120 : 24;
  const std::uint64_t q = f.q();

  // Core: two random elements of SL2(q) generating a group of the right order.
  Rng rng(seed);
  auto random_sl2 = [&] {
    for (;;) {
      Elt a = static_cast<Elt>(rng.below(q)), b = static_cast<Elt>(rng.below(q)), c = static_cast<Elt>(rng.below(q));
      if (a == 0) continue;
      // d = (1 + bc) / a
      Elt d = f.div(f.add(1, f.mul(b, c)), a);
      return mat2(a, b, c, d);
    }
  };
  std::vector<SemilinearMap> core_gens;
  std::vector<SemilinearMap> core;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 100000) throw std::runtime_error("no core found");
    std::vector<SemilinearMap> g{random_sl2(), random_sl2()};
    auto c = closure(f, g, 2, core_order);
    if (c && c->size() == core_order) {
      core_gens = g;
      core = *c;
      break;
    }
  }
  std::unordered_set<std::uint64_t> core_keys;
  for (const auto& c : core) core_keys.insert(key(f, c));

  // Normalizer inside the allowed part K, by listing K.
  std::vector<SemilinearMap> normalizer;
  std::uint64_t k_order = 0;
  for (unsigned fr = 0; fr < f.e(); ++fr)
    for (Elt a = 0; a < q; ++a)
      for (Elt b = 0; b < q; ++b)
        for (Elt c = 0; c < q; ++c)
          for (Elt d = 0; d < q; ++d) {
            if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) continue;
            SemilinearMap m = mat2(a, b, c, d, fr);
            if (!allowed(f, fam, m)) continue;
            ++k_order;
            SemilinearMap mi = inverse(f, m);
            bool ok = true;
            for (const auto& g : core_gens) {
              SemilinearMap h = compose(f, compose(f, m, g), mi);
              h.frob %= f.e();
              if (!core_keys.count(key(f, h))) {
                ok = false;
                break;
              }
            }
            if (ok) normalizer.push_back(m);
          }
  if (k_order % row.block_size != 0) throw std::runtime_error("block size does not divide |K|");
  const std::size_t target = k_order / row.block_size;

  // Overgroups <core, x> and <core, x, y> of the target order.
  std::vector<std::vector<SemilinearMap>> candidates;
  std::set<std::set<std::uint64_t>> seen;
  auto consider = [&](std::vector<SemilinearMap> gens) {
    auto c = closure(f, gens, 2, target);
    if (!c || c->size() != target) return;
    std::set<std::uint64_t> ks;
    for (const auto& e : *c) ks.insert(key(f, e));
    if (seen.insert(ks).second) candidates.push_back(std::move(gens));
  };
  if (core_order == target) consider(core_gens);
  for (const auto& x : normalizer) {
    auto g = core_gens;
    g.push_back(x);
    consider(g);
  }
  if (candidates.empty())
    for (std::size_t i = 0; i < normalizer.size() && candidates.empty(); ++i)
      for (std::size_t j = i + 1; j < normalizer.size(); ++j) {
        auto g = core_gens;
        g.push_back(normalizer[i]);
        g.push_back(normalizer[j]);
        consider(g);
      }
  std::size_t passing = 0;
  Built r;
  for (const auto& gens : candidates) {
    std::vector<Permutation> perms;
    for (const auto& m : with_radical(*amb.projective, gens)) perms.push_back(amb.projective->permutation(m));
    PermGroup l = PermGroup::from_generators(amb.group.degree(), perms);
    if (!is_two_bbt_subgroup(amb, l)) continue;
    if (passing++ == 0) r.gens = gens;
  }
  if (passing == 0) throw std::runtime_error("no overgroup of the core passes the double-coset test");
  r.note = "|K| = " + std::to_string(k_order) + ", |N(core)| = " + std::to_string(normalizer.size()) + ", " +
           std::to_string(candidates.size()) + " candidates of order " + std::to_string(target) + ", " +
           std::to_string(passing) + " 2-bbt";
  return r;
}

// Alt(7) inside GL4(2) transitive on the 15 nonzero vectors.
Built build_alt7(const FiniteField& f, std::uint64_t seed) {
  Rng rng(seed);
  auto random_gl4 = [&] {
    for (;;) {
      SemilinearMap m = identity_map(4);
      for (auto& x : m.a) x = static_cast<Elt>(rng.below(2));
      if (determinant(f, m) != 0) return m;
    }
  };
  for (;;) {
    std::vector<SemilinearMap> g{random_gl4(), random_gl4()};
    auto c = closure(f, g, 4, 2520);
    if (!c || c->size() != 2520) continue;
    // Transitive on nonzero vectors.
    std::set<std::vector<Elt>> orbit{{1, 0, 0, 0}};
    std::vector<Vec> queue{{1, 0, 0, 0}};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& m : g) {
        Vec w = apply(f, m, queue[i]);
        if (orbit.insert(w).second) queue.push_back(w);
      }
    if (orbit.size() != 15) continue;
    return {g, "Alt(7) in GL4(2)"};
  }
}

// Alt(6) in the point stabilizer of M11: squares of random elements of M10.
Certificate build_m11(const Ambient& amb, const TableRow& row, std::uint64_t seed) {
  Rng rng(seed);
  const int ngen = static_cast<int>(amb.group.generators().size());
  std::vector<std::vector<int>> words;
  std::vector<Permutation> perms;
  for (;;) {
    std::vector<int> w;
    const std::size_t len = 4 + rng.below(8);
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<int>(rng.below(ngen)) + 1);
    Permutation g = evaluate_word(amb.group, w);
    if (g(amb.alpha0) != amb.alpha0 || g.is_identity()) continue;
    std::vector<int> sq = w;
    sq.insert(sq.end(), w.begin(), w.end());
    words.push_back(sq);
    perms.push_back(g * g);
    PermGroup l = PermGroup::from_generators(amb.group.degree(), perms);
    if (l.order() == 360) {
      Certificate c;
      c.group_id = row.group;
      c.table_ref = row.ref();
      c.seed_words = words;
      c.claimed_order = 360;
      c.claimed_index = amb.group.order() / 360;
      c.claimed_block_size = 2;
      c.claimed_pair_order = pair_intersection_order(amb, l);
      return c;
    }
    if (words.size() >= 3) words.clear(), perms.clear();
  }
}

std::string file_name(const TableRow& row) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "table%d_row%02d.cert", row.table, row.row);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certificate generator"};
  std::string out = default_cert_dir();
  std::uint64_t seed = 1;
  std::vector<std::string> only;
  app.add_option("--out", out, "output directory");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--rows", only, "table refs to regenerate")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  std::filesystem::create_directories(out);

  std::vector<TableRow> rows = table1();
  rows.insert(rows.end(), table2().begin(), table2().end());
  int failures = 0;
  for (const auto& row : rows) {
    if (!only.empty() && std::find(only.begin(), only.end(), row.ref()) == only.end()) continue;
    try {
      auto amb = load_ambient(row.group);
      Certificate c;
      std::string note;
      if (row.group == "M11") {
        c = build_m11(*amb, row, seed);
      } else {
        const FiniteField& f = amb->projective->field();
        const LinearFamily fam = amb->projective->family;
        Built b;
        if (row.group == "PSL5(2)") b = build_alt7(f, seed);
        else if (row.type == "PD") b = build_pd(f, fam, row.block_size);
        else if (row.type.rfind("PF(", 0) == 0) b = build_pf(f, fam, row.type[3] - '0', row.type[5] - '0');
        else b = build_exceptional(*amb, row, seed);
        note = b.note;
        c = certificate_for(*amb, with_radical(*amb->projective, b.gens), row);
      }
      const bool match = c.claimed_block_size == row.block_size && c.claimed_pair_order == row.pair_order;
      std::cout << row.ref() << " " << row.group << " |L|=" << c.claimed_order << " b=" << c.claimed_block_size
                << " pair=" << c.claimed_pair_order << (match ? "" : "  (differs from the table)") << "  " << note
                << std::endl;
      if (c.claimed_block_size != row.block_size) {
        ++failures;
        continue;
      }
      std::ofstream(out + "/" + file_name(row)) << format_certificate(c);
    } catch (const std::exception& e) {
      ++failures;
      std::cout << row.ref() << " " << row.group << " FAILED: " << e.what() << std::endl;
    }
  }
  return failures ? 1 : 0;
}

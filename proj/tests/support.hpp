#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "bbt/matgrp.hpp"
#include "bbt/permgroup.hpp"
#include "bbt/rng.hpp"
#include "bbt/verify.hpp"

namespace bbt::testkit {

inline Permutation random_permutation(Rng& rng, std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = degree; i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
  return Permutation(std::move(img));
}

inline std::vector<Permutation> random_generators(Rng& rng, std::size_t degree, std::size_t count) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < count; ++i) gens.push_back(random_permutation(rng, degree));
  return gens;
}

// Plain breadth-first closure; the independent oracle for small orders.
inline std::set<Permutation> closure(std::size_t degree, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Permutation y = g * x;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline PermGroup certificate_subgroup(const Certificate& cert) {
  auto amb = load_ambient(cert.group_id);
  std::vector<Permutation> gens;
  for (const auto& w : cert.seed_words) gens.push_back(evaluate_word(amb->group, w));
  return PermGroup::from_generators(amb->group.degree(), gens);
}

inline Certificate bundled_certificate(const std::string& ref) {
  auto c = find_certificate(default_cert_dir(), ref);
  if (!c) throw std::runtime_error("no certificate for " + ref);
  return *c;
}

// Overgroups of PSL2(q) on the projective line.
enum class Psl2Extra { None, Frobenius, FrobeniusSquared, DiagonalTimesFrobenius, DiagonalAndFrobenius };

struct Psl2Setting {
  ProjectiveAction action;  // PΓL2(q); supplies points and matrices
  PermGroup group;
  PermGroup point_stabilizer;
  PermGroup pair_stabilizer;
  PermGroup unipotent;  // the transvections fixing alpha0
  Permutation s;
};

inline Psl2Setting psl2_setting(std::uint64_t q, Psl2Extra extra) {
  auto act = projective_group(LinearFamily::GammaL, 1, FiniteField::get_order(q));
  const auto& all = act.group.generators();
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (i != act.delta_index() && i != act.frobenius_index()) gens.push_back(all[i]);
  const Permutation delta = all[*act.delta_index()];
  switch (extra) {
    case Psl2Extra::None: break;
    case Psl2Extra::Frobenius: gens.push_back(frobenius(act, 1)); break;
    case Psl2Extra::FrobeniusSquared: gens.push_back(frobenius(act, 2)); break;
    case Psl2Extra::DiagonalTimesFrobenius: gens.push_back(delta * frobenius(act, 1)); break;
    case Psl2Extra::DiagonalAndFrobenius:
      gens.push_back(delta);
      gens.push_back(frobenius(act, 1));
      break;
  }
  const std::size_t deg = act.group.degree();
  PermGroup g = PermGroup::from_generators(deg, gens);
  PermGroup g0 = g.stabilizer(act.alpha0);
  PermGroup g01 = g0.stabilizer(act.alpha1);
  std::vector<Permutation> u;
  for (unsigned k = 0; k < act.field().e(); ++k) u.push_back(all[act.transvection_index(0, 1, k)]);
  PermGroup upper = PermGroup::from_generators(deg, u);
  if (upper.orbit(act.alpha0).size() != 1) {
    u.clear();
    for (unsigned k = 0; k < act.field().e(); ++k) u.push_back(all[act.transvection_index(1, 0, k)]);
    upper = PermGroup::from_generators(deg, u);
  }
  Permutation s = act.permutation(swap_matrix(act.field(), 2));
  return {std::move(act), std::move(g), std::move(g0), std::move(g01), std::move(upper), std::move(s)};
}

}  // namespace bbt::testkit

#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "bbt/arith.hpp"
#include "bbt/data.hpp"
#include "bbt/errors.hpp"
#include "bbt/matgrp.hpp"
#include "bbt/smallgroup.hpp"

using namespace bbt;

namespace {

// |PSL_d(q)| = q^(d(d-1)/2) prod_{i=2..d} (q^i - 1) / gcd(d, q-1)
BigInt psl_order(unsigned d, std::uint64_t q) {
  BigInt r = 1;
  for (unsigned i = 0; i < d * (d - 1) / 2; ++i) r *= q;
  for (unsigned i = 2; i <= d; ++i) r *= ipow(BigInt(q), i) - 1;
  return r / std::gcd<std::uint64_t, std::uint64_t>(d, q - 1);
}

std::shared_ptr<const FiniteField> gf(std::uint64_t q) { return FiniteField::get_order(q); }

}  // namespace

TEST(FiniteField, MuGeneratesUnits) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 49u, 59u, 64u}) {
    auto f = gf(q);
    std::uint32_t order = 1;
    for (auto x = f->mu(); x != f->one(); x = f->mul(x, f->mu())) ++order;
    EXPECT_EQ(order, q - 1) << q;
  }
}

TEST(FiniteField, AxiomsOnSampledTriples) {
  Rng rng(9);
  for (std::uint64_t q : {4u, 8u, 9u, 25u, 27u, 64u, 81u}) {
    auto f = gf(q);
    for (int i = 0; i < 500; ++i) {
      auto a = static_cast<FiniteField::Elt>(rng.below(q));
      auto b = static_cast<FiniteField::Elt>(rng.below(q));
      auto c = static_cast<FiniteField::Elt>(rng.below(q));
      EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      EXPECT_EQ(f->add(a, f->neg(a)), f->zero());
      if (a) EXPECT_EQ(f->mul(a, f->inv(a)), f->one());
      EXPECT_EQ(f->frob(f->add(a, b), 1), f->add(f->frob(a, 1), f->frob(b, 1)));
      EXPECT_EQ(f->frob(a, f->e()), a);
    }
  }
}

TEST(FiniteField, LogExpRoundTrip) {
  auto f = gf(27);
  for (FiniteField::Elt a = 1; a < 27; ++a) EXPECT_EQ(f->exp(f->log(a)), a);
}

TEST(FiniteField, LoadFromTableFile) {
  auto f = FiniteField::load(5, 2, data_path("irreducible_polynomials.txt"));
  EXPECT_EQ(f.q(), 25u);
  EXPECT_EQ(f.polynomial(), gf(25)->polynomial());
}

TEST(ProjectiveGroup, Psl32) {
  auto act = projective_group(LinearFamily::SL, 2, gf(2));
  EXPECT_EQ(act.group.degree(), 7u);
  EXPECT_EQ(act.group.order(), 168);
  EXPECT_EQ(act.group.order(), psl_order(3, 2));
}

TEST(ProjectiveGroup, Pgl35) {
  auto act = projective_group(LinearFamily::GL, 2, gf(5));
  EXPECT_EQ(act.group.degree(), 31u);
  EXPECT_EQ(act.group.order(), 372000);
}

TEST(ProjectiveGroup, Psl52) {
  auto act = projective_group(LinearFamily::SL, 4, gf(2));
  EXPECT_EQ(act.group.degree(), 31u);
  EXPECT_EQ(act.group.order(), psl_order(5, 2));
}

TEST(ProjectiveGroup, OrdersMatchClosedForm) {
  struct Case {
    std::size_t n;
    std::uint64_t q;
  };
  for (auto c : {Case{1, 7}, Case{1, 8}, Case{1, 9}, Case{2, 3}, Case{2, 4}, Case{2, 7}, Case{3, 2}, Case{3, 3}}) {
    auto act = projective_group(LinearFamily::SL, c.n, gf(c.q));
    EXPECT_EQ(act.group.order(), psl_order(static_cast<unsigned>(c.n + 1), c.q)) << c.n << " " << c.q;
    auto f = gf(c.q);
    EXPECT_EQ(act.group.order(), projective_group_order(LinearFamily::SL, c.n, f->p(), f->e()));
    BigInt points = (ipow(BigInt(c.q), static_cast<unsigned>(c.n + 1)) - 1) / (c.q - 1);
    EXPECT_EQ(BigInt(act.group.degree()), points);
    EXPECT_TRUE(act.group.is_transitive());
    EXPECT_EQ(act.group.stabilizer(act.alpha0).orbits().size(), 2u);  // 2-transitive
  }
}

TEST(ProjectiveGroup, FamilyOrders) {
  auto f = gf(4);
  for (auto fam : {LinearFamily::SL, LinearFamily::GL, LinearFamily::SigmaL, LinearFamily::GammaL, LinearFamily::ZSL}) {
    auto act = projective_group(fam, 2, f);
    EXPECT_EQ(act.group.order(), projective_group_order(fam, 2, 2, 2)) << to_string(fam);
  }
  EXPECT_EQ(projective_group_order(LinearFamily::GammaL, 2, 2, 2), 120960);
}

TEST(ProjectiveGroup, DegreeBound) {
  EXPECT_THROW(projective_group(LinearFamily::SL, 2, gf(5), 30), ResourceError);
}

TEST(ProjectiveGroup, DecomposeRoundTrip) {
  Rng rng(1);
  for (auto [fam, q] : {std::pair{LinearFamily::GammaL, 9u}, {LinearFamily::SL, 7u}, {LinearFamily::GL, 5u},
                        {LinearFamily::SigmaL, 8u}}) {
    auto act = projective_group(fam, 2, gf(q));
    for (int it = 0; it < 20; ++it) {
      SemilinearMap m = identity_map(act.dim());
      for (int s = 0; s < 15; ++s) m = compose(act.field(), m, act.matrices[rng.below(act.matrices.size())]);
      EXPECT_EQ(evaluate_word(act.group, decompose(act, m)), act.permutation(m));
    }
  }
}

TEST(ProjectiveGroup, DecomposeRejectsOutsideFamily) {
  auto act = projective_group(LinearFamily::SL, 2, gf(4));
  // diag(mu,1,1) has determinant mu, not a cube in GF(4)
  auto f = gf(4);
  EXPECT_THROW(decompose(act, diagonal({f->mu(), 1, 1})), ValidationError);
}

TEST(SemilinearMaps, InverseAndCompose) {
  auto f = gf(9);
  auto act = projective_group(LinearFamily::GammaL, 2, f);
  for (const auto& m : act.matrices) {
    EXPECT_EQ(compose(*f, m, inverse(*f, m)), identity_map(3));
    EXPECT_EQ(act.permutation(compose(*f, m, m)), act.permutation(m) * act.permutation(m));
  }
}

TEST(SpecialSubgroups, Psl32W) {
  auto act = projective_group(LinearFamily::SL, 2, gf(2));
  auto sp = special_subgroups(act);
  EXPECT_EQ(sp.W.order(), 4);
  for (const auto& g : sp.W.generators()) EXPECT_EQ(g(act.alpha0), act.alpha0);
}

TEST(SpecialSubgroups, SwapIsAnInvolution) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    auto act = projective_group(LinearFamily::SL, 2, gf(q));
    auto sp = special_subgroups(act);
    EXPECT_TRUE((sp.s * sp.s).is_identity());
    EXPECT_EQ(sp.s(act.alpha0), act.alpha1);
    EXPECT_EQ(sp.s(act.alpha1), act.alpha0);
    EXPECT_TRUE(act.group.is_member(sp.s));
  }
}

TEST(SpecialSubgroups, WIsElementaryAbelianNormal) {
  for (std::uint64_t q : {3u, 4u, 5u}) {
    auto act = projective_group(LinearFamily::GL, 2, gf(q));
    auto sp = special_subgroups(act);
    EXPECT_EQ(sp.W.order(), BigInt(q * q));
    for (const auto& a : sp.W.generators()) {
      EXPECT_EQ(a.order(), BigInt(gf(q)->p()));
      for (const auto& b : sp.W.generators()) EXPECT_EQ(a * b, b * a);
    }
    for (const auto& g : sp.block_stabilizer.generators())
      for (const auto& w : sp.W.generators()) EXPECT_TRUE(sp.W.is_member(conjugate(w, g)));
  }
}

TEST(SpecialSubgroups, Psl35MIntersection) {
  auto act = projective_group(LinearFamily::SL, 2, gf(5));
  auto sp = special_subgroups(act);
  EXPECT_EQ(sp.M.order(), 25 * 120);
  // q^(2(n-1)) gcd(q-1, n+1) for n = 2, q = 5
  EXPECT_EQ(conjugate_intersection_order(sp.M, sp.s), 25);
}

TEST(SpecialSubgroups, NeedsPlane) {
  auto act = projective_group(LinearFamily::SL, 1, gf(5));
  EXPECT_THROW(special_subgroups(act), UnsupportedError);
}

TEST(Pdet, Examples) {
  EXPECT_EQ(pdet_order(LinearFamily::ZSL, 2, *gf(5)).pdet_order, 1u);
  auto a = pdet_order(LinearFamily::GL, 3, *gf(3));
  EXPECT_EQ(a.g, 2u);
  EXPECT_EQ(a.pdet_order, 2u);
  auto b = pdet_order(LinearFamily::GL, 2, *gf(4));
  EXPECT_EQ(b.g, 3u);
  EXPECT_EQ(b.pdet_order, 3u);
}

TEST(Pdet, Invariants) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u})
    for (std::size_t n = 1; n <= 5; ++n)
      for (auto fam : {LinearFamily::SL, LinearFamily::GL, LinearFamily::SigmaL, LinearFamily::GammaL,
                       LinearFamily::ZSL}) {
        auto d = pdet_order(fam, n, q);
        EXPECT_EQ(d.g % d.c, 0u);
        EXPECT_EQ(d.pdet_order * d.c, d.g);
      }
}

// Pdet(g h) = Pdet(g) when det h lies in <mu^(n+1)>: det(g h) = det(g) det(h).
TEST(Pdet, ConstantOnScalarSlCosets) {
  auto f = gf(7);
  auto act = projective_group(LinearFamily::GL, 2, f);
  Rng rng(4);
  const std::uint64_t g = pdet_order(LinearFamily::GL, 2, *f).g;
  for (int i = 0; i < 50; ++i) {
    SemilinearMap x = identity_map(3);
    for (int s = 0; s < 10; ++s) x = compose(*f, x, act.matrices[rng.below(act.matrices.size())]);
    const auto k = rng.below(6);
    SemilinearMap h = diagonal({f->exp(static_cast<std::int64_t>(3 * k)), 1, 1});
    auto before = f->log(determinant(*f, x)) % g;
    auto after = f->log(determinant(*f, compose(*f, x, h))) % g;
    EXPECT_EQ(before, after);
  }
}

TEST(Frobenius, FixedPointsOverGF9) {
  auto act = projective_group(LinearFamily::GammaL, 2, gf(9));
  auto fr = frobenius(act, 1);
  EXPECT_EQ(fr.order(), 2);
  std::size_t fixed = 0;
  for (Point i = 0; i < fr.degree(); ++i) fixed += fr(i) == i;
  EXPECT_EQ(fixed, 13u);
}

TEST(Frobenius, NormalizesPgl34) {
  auto act = projective_group(LinearFamily::GL, 2, gf(4));
  auto fr = frobenius(act, 1);
  EXPECT_EQ(fr.order(), 2);
  for (const auto& g : act.group.generators()) EXPECT_TRUE(act.group.is_member(conjugate(g, fr)));
  EXPECT_FALSE(act.group.is_member(fr));
}

TEST(Frobenius, OrderThreeOnProjectiveLine64) {
  auto act = projective_group(LinearFamily::SL, 1, gf(64));
  EXPECT_EQ(frobenius(act, 2).order(), 3);
}

TEST(Singer, CyclicAndRegular) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    auto f = gf(q);
    auto act = projective_group(LinearFamily::GL, 2, f);
    auto c = singer_subgroup(act);
    const BigInt n = BigInt(q * q - 1);
    // order q^2 - 1 modulo the scalars of GL3 that act trivially; the plane
    // part stays faithful
    EXPECT_EQ(c.order(), n);
    auto s = singer_matrix(*f);
    EXPECT_EQ(s.dim, 2u);
    // S acts regularly on the q^2-1 nonzero vectors of the plane
    std::set<Vec> seen;
    Vec v{1, 0};
    for (std::uint64_t i = 0; i < q * q - 1; ++i) {
      seen.insert(v);
      v = apply(*f, s, v);
    }
    EXPECT_EQ(v, (Vec{1, 0}));
    EXPECT_EQ(seen.size(), q * q - 1);
  }
}

TEST(Singer, GF2WithFrobeniusIsSL22) {
  auto act = projective_group(LinearFamily::SL, 2, gf(2));
  auto c = singer_subgroup(act);
  EXPECT_EQ(c.order(), 3);
  auto sp = special_subgroups(act);
  // W ⋊ ΓL1(4) = W ⋊ SL2(2) is the whole point stabilizer, order 24
  EXPECT_EQ(sp.block_stabilizer.order(), 24);
}

TEST(Singer, GF5BlockIndexTen) {
  auto act = projective_group(LinearFamily::SL, 2, gf(5));
  auto c = singer_subgroup(act);
  EXPECT_EQ(c.order(), 24);
  auto sp = special_subgroups(act);
  // W ⋊ ZΓL1(25): Singer cycle plus the order-2 field map, |G(a0)| / 10
  EXPECT_EQ(sp.block_stabilizer.order() / (sp.W.order() * c.order() * 2), 10);
}

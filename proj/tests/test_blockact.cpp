#include <gtest/gtest.h>

#include "bbt/blockact.hpp"
#include "bbt/errors.hpp"
#include "support.hpp"

using namespace bbt;

namespace {

ImprimitiveAction m11_on_22() {
  auto amb = load_ambient("M11");
  auto l = testkit::certificate_subgroup(testkit::bundled_certificate("Table1:row1"));
  return imprimitive_coset_action(coset_action(amb->group, l), amb->alpha0);
}

ImprimitiveAction certificate_action(const std::string& ref) {
  auto cert = testkit::bundled_certificate(ref);
  auto amb = load_ambient(cert.group_id);
  auto l = testkit::certificate_subgroup(cert);
  return imprimitive_coset_action(coset_action(amb->group, l), amb->alpha0);
}

// AGL1(5): x -> a x + b
PermGroup agl15() {
  std::vector<Point> shift(5), scale(5);
  for (Point x = 0; x < 5; ++x) {
    shift[x] = (x + 1) % 5;
    scale[x] = (2 * x) % 5;
  }
  return PermGroup::from_generators(5, {Permutation(shift), Permutation(scale)});
}

BlockSystem pairs_of(std::size_t degree) {
  std::vector<std::uint32_t> lab(degree);
  for (std::size_t i = 0; i < degree; ++i) lab[i] = static_cast<std::uint32_t>(i / 2);
  return BlockSystem(lab);
}

}  // namespace

TEST(DistantTupleCount, Examples) {
  EXPECT_EQ(distant_tuple_count(pairs_of(22), 2), 440);
  EXPECT_EQ(distant_tuple_count(BlockSystem::singletons(9), 2), 72);
  EXPECT_EQ(distant_tuple_count(pairs_of(4), 3), 0);
  EXPECT_EQ(distant_tuple_count(pairs_of(22), 1), 22);
}

TEST(BlockSystemBasics, Shape) {
  auto b = pairs_of(10);
  EXPECT_EQ(b.block_size(), 2u);
  EXPECT_EQ(b.block_count(), 5u);
  EXPECT_EQ(b.block(3), (std::vector<Point>{6, 7}));
  EXPECT_THROW(BlockSystem(std::vector<std::uint32_t>{0, 0, 1}), ValidationError);
}

TEST(ImprimitiveAction, RejectsNonInvariantBlocks) {
  EXPECT_THROW(ImprimitiveAction(PermGroup::symmetric(4), pairs_of(4)), ValidationError);
}

TEST(KByBlock, M11OnTwentyTwo) {
  auto act = m11_on_22();
  EXPECT_EQ(act.blocks().block_count(), 11u);
  EXPECT_EQ(act.blocks().block_size(), 2u);
  EXPECT_TRUE(act.is_block_faithful());
  EXPECT_TRUE(is_k_by_block_transitive(act, 2));
  EXPECT_FALSE(is_k_by_block_transitive(act, 3));
}

TEST(KByBlock, Sym3Singletons) {
  ImprimitiveAction act(PermGroup::symmetric(3), BlockSystem::singletons(3));
  EXPECT_TRUE(is_k_by_block_transitive(act, 2));
  EXPECT_TRUE(is_k_by_block_transitive(act, 3));
  EXPECT_FALSE(is_k_by_block_transitive(act, 4));
}

TEST(KByBlock, RecursiveTestMatchesBruteForce) {
  // cyclic, dihedral and the wreath-type actions on small degrees
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 * (2 + rng.below(4));
    auto g = PermGroup::from_generators(d, testkit::random_generators(rng, d, 2));
    auto b = BlockSystem::singletons(d);
    ImprimitiveAction act(g, b);
    for (unsigned k = 1; k <= 3; ++k)
      EXPECT_EQ(is_k_by_block_transitive(act, k), distant_tuple_orbits_bruteforce(act, k) == 1 && b.block_count() >= k);
  }
  auto m = m11_on_22();
  EXPECT_EQ(distant_tuple_orbits_bruteforce(m, 2), 1u);
  EXPECT_EQ(distant_tuple_orbits_bruteforce(m, 3), 2u);
}

TEST(KByBlock, DownwardClosed) {
  for (const auto* ref : {"Table2:row1", "Table2:row2", "Table2:row3", "Table1:row1"}) {
    auto act = certificate_action(ref);
    for (unsigned k = 4; k >= 2; --k)
      if (is_k_by_block_transitive(act, k)) EXPECT_TRUE(is_k_by_block_transitive(act, k - 1)) << ref;
  }
  ImprimitiveAction s5(PermGroup::symmetric(5), BlockSystem::singletons(5));
  for (unsigned k = 1; k <= 5; ++k) EXPECT_TRUE(is_k_by_block_transitive(s5, k));
}

TEST(CoarsestBlocks, M11OnTwentyTwo) {
  auto act = m11_on_22();
  auto b = coarsest_invariant_blocks(act.group());
  EXPECT_EQ(b.block_count(), 11u);
  EXPECT_EQ(b.block_size(), 2u);
  EXPECT_EQ(b, act.blocks());
}

TEST(CoarsestBlocks, TwoTransitiveIsPrimitive) {
  EXPECT_EQ(coarsest_invariant_blocks(PermGroup::symmetric(6)), BlockSystem::singletons(6));
  EXPECT_EQ(coarsest_invariant_blocks(load_ambient("PSL3(3)")->group), BlockSystem::singletons(13));
}

TEST(CoarsestBlocks, Psl32OnFourteen) {
  auto act = certificate_action("Table2:row1");
  auto b = coarsest_invariant_blocks(act.group());
  EXPECT_EQ(b.block_count(), 7u);
  EXPECT_EQ(b.block_size(), 2u);
}

TEST(CoarsestBlocks, Errors) {
  auto intrans = PermGroup::from_generators(4, {Permutation::from_cycles(4, {{0, 1}})});
  EXPECT_THROW(coarsest_invariant_blocks(intrans), ValidationError);
  // the regular C2 x C2 has three maximal block systems
  auto v4 = PermGroup::from_generators(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                                           Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  EXPECT_THROW(coarsest_invariant_blocks(v4), AmbiguityError);
}

// For 2-by-block-transitive actions the given blocks are the coarsest.
TEST(CoarsestBlocks, RecoversCertifiedBlocks) {
  for (const auto* ref : {"Table2:row2", "Table2:row3", "Table2:row4", "Table2:row5", "Table1:row3"}) {
    auto act = certificate_action(ref);
    ASSERT_TRUE(is_k_by_block_transitive(act, 2));
    EXPECT_EQ(coarsest_invariant_blocks(act.group()), act.blocks()) << ref;
  }
}

TEST(Sharp, Psl35BlockTwenty) {
  auto act = certificate_action("Table1:row5");
  EXPECT_EQ(act.blocks().block_size(), 20u);
  EXPECT_EQ(act.blocks().block_count(), 31u);
  EXPECT_TRUE(is_sharply_2bbt(act));
}

TEST(Sharp, M11IsNotSharp) {
  auto act = m11_on_22();
  EXPECT_FALSE(is_sharply_2bbt(act));
  EXPECT_EQ(distant_pair_stabilizer(act).order(), 18);
}

TEST(Sharp, Agl15) {
  ImprimitiveAction act(agl15(), BlockSystem::singletons(5));
  EXPECT_TRUE(is_sharply_2bbt(act));
}

TEST(TripleOrbits, M11) {
  auto rep = distant_triple_orbits(m11_on_22());
  EXPECT_EQ(rep.orbit_count, 2u);
  EXPECT_EQ(rep.orbit_sizes, (std::vector<BigInt>{3960, 3960}));
  EXPECT_EQ(rep.n, 2u);
}

TEST(TripleOrbits, ThreeTransitiveSingletons) {
  ImprimitiveAction act(PermGroup::symmetric(6), BlockSystem::singletons(6));
  auto rep = distant_triple_orbits(act);
  EXPECT_EQ(rep.orbit_count, 1u);
  EXPECT_EQ(rep.orbit_sizes.front(), 6 * 5 * 4);
}

TEST(TripleOrbits, SizesSumToDistantTriples) {
  for (const auto* ref : {"Table2:row1", "Table2:row2", "Table2:row3", "Table2:row4"}) {
    auto act = certificate_action(ref);
    auto rep = distant_triple_orbits(act);
    BigInt sum = 0;
    for (const auto& s : rep.orbit_sizes) sum += s;
    EXPECT_EQ(sum, distant_tuple_count(act.blocks(), 3)) << ref;
    if (act.blocks().degree() <= 60) EXPECT_EQ(rep.orbit_count, distant_tuple_orbits_bruteforce(act, 3)) << ref;
  }
}

TEST(TripleOrbits, NeedsThreeBlocks) {
  ImprimitiveAction act(PermGroup::symmetric(2), BlockSystem::singletons(2));
  EXPECT_THROW(distant_triple_orbits(act), ValidationError);
}

TEST(PairStabilizerOrder, Examples) {
  EXPECT_EQ(pair_stabilizer_order(7920, 360, 720), Rational(18));
  EXPECT_EQ(pair_stabilizer_order(9999360, 40320, 322560), Rational(168));
  EXPECT_EQ(pair_stabilizer_order(372000, 2400, 12000), Rational(16));
  EXPECT_EQ(pair_stabilizer_order(168, 12, 24), Rational(1));
}

// The measured distant-pair stabilizer has the double-coset order.
TEST(PairStabilizerOrder, MatchesMeasuredForCertificates) {
  for (const auto* ref : {"Table1:row1", "Table1:row3", "Table1:row4", "Table2:row1", "Table2:row2", "Table2:row3",
                          "Table2:row6", "Table2:row9"}) {
    auto cert = testkit::bundled_certificate(ref);
    auto amb = load_ambient(cert.group_id);
    auto act = certificate_action(ref);
    auto measured = distant_pair_stabilizer(act).order();
    EXPECT_EQ(Rational(measured),
              pair_stabilizer_order(amb->group.order(), cert.claimed_order, amb->point_stabilizer.order()))
        << ref;
  }
}

TEST(AdmissibleOrders, TinyCase) {
  EXPECT_EQ(admissible_subgroup_orders(6, 2), std::vector<BigInt>{2});
}

TEST(AdmissibleOrders, Psl211OnEleven) {
  auto v = admissible_subgroup_orders(660, 60);
  EXPECT_EQ(v, std::vector<BigInt>{60});
  for (const auto& d : v) EXPECT_EQ(d % 30, 0);
}

// The arithmetic scan alone leaves proper divisors for M23; the elimination
// needs the subgroup structure of M22 (see the nonexistence tests).
TEST(AdmissibleOrders, M23ScanLeavesLargeDivisors) {
  auto v = admissible_subgroup_orders(10200960, 443520);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front(), 18480);
  EXPECT_EQ(v.back(), 443520);
  for (const auto& d : v) {
    EXPECT_EQ(443520 % d, 0);
    EXPECT_EQ((d * d) % (10200960 - 443520), 0);
  }
}

TEST(AdmissibleOrders, AgreesWithDirectScan) {
  for (auto [g, b] : std::vector<std::pair<int, int>>{{7920, 720}, {95040, 7920}, {5040, 720}, {372000, 12000}}) {
    std::vector<BigInt> expect;
    for (int d = 1; d <= b; ++d)
      if (b % d == 0 && (BigInt(d) * d) % (g - b) == 0) expect.push_back(d);
    EXPECT_EQ(admissible_subgroup_orders(g, b), expect);
  }
}

TEST(BlockAction, Faithfulness) {
  auto act = certificate_action("Table2:row2");
  EXPECT_TRUE(act.is_block_faithful());
  EXPECT_EQ(act.block_action().degree(), 13u);
  EXPECT_EQ(act.block_action().order(), act.group().order());
  // Sym(2) wr Sym(2) on 4 points has a block kernel of order 4
  auto w = PermGroup::from_generators(4, {Permutation::from_cycles(4, {{0, 1}}), Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  ImprimitiveAction wa(w, pairs_of(4));
  EXPECT_EQ(wa.block_kernel_order(), 4);
  EXPECT_FALSE(wa.is_block_faithful());
}

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "bbt/classify.hpp"
#include "bbt/data.hpp"
#include "bbt/errors.hpp"
#include "bbt/verify.hpp"
#include "support.hpp"

using namespace bbt;
using bbt::testkit::bundled_certificate;

namespace {

std::vector<std::uint64_t> block_sizes(const std::vector<Extension>& ext) {
  std::vector<std::uint64_t> out;
  for (const auto& e : ext) out.push_back(e.block_size.convert_to<std::uint64_t>());
  return out;
}

}  // namespace

TEST(Ambient, CatalogOrders) {
  EXPECT_EQ(load_ambient("M11")->group.order(), 7920);
  EXPECT_EQ(load_ambient("M12")->group.order(), 95040);
  EXPECT_EQ(load_ambient("PSL2(11)-on-11")->group.order(), 660);
  EXPECT_EQ(load_ambient("Alt(7)-on-15")->group.order(), 2520);
  EXPECT_EQ(load_ambient("PGammaL2(8)-on-28")->group.order(), 1512);
  EXPECT_EQ(load_ambient("Sym(6)")->group.order(), 720);
  EXPECT_EQ(load_ambient("PSL5(2)")->group.order(), 9999360);
}

TEST(Ambient, Shape) {
  for (const auto* id : {"M11", "M12", "PSL3(5)", "PΓL3(9)", "Alt(7)-on-15", "PSL2(11)-on-11", "Sym(5)"}) {
    auto a = load_ambient(id);
    EXPECT_TRUE(a->group.is_transitive()) << id;
    EXPECT_EQ(a->s(a->alpha0), a->alpha1) << id;
    EXPECT_TRUE(a->group.is_member(a->s)) << id;
    EXPECT_EQ(a->point_stabilizer.order() * a->group.degree(), a->group.order()) << id;
    // 2-transitive: the point stabilizer has two orbits
    EXPECT_EQ(a->point_stabilizer.orbits().size(), 2u) << id;
  }
  EXPECT_EQ(load_ambient("M11").get(), load_ambient("M11").get());
  EXPECT_THROW(load_ambient("Nope(3)"), ValidationError);
}

TEST(Ambient, M12GeneratorFile) {
  auto gens = read_generator_file(data_path("generators/M12.gens"));
  ASSERT_EQ(gens.size(), 3u);
  auto g = PermGroup::from_generators(12, gens);
  EXPECT_EQ(g.order(), 95040);
  EXPECT_EQ(g.stabilizer(11).order(), 7920);
}

TEST(CertificateFormat, RoundTrip) {
  for (const auto& c : load_certificates(default_cert_dir())) {
    EXPECT_EQ(parse_certificate(format_certificate(c)), c) << c.table_ref;
  }
  Certificate c;
  c.group_id = "PSL3(2)";
  c.seed_words = {{1, -2, 3}, {4}};
  c.claimed_order = 12;
  c.claimed_index = 14;
  c.claimed_block_size = 2;
  c.claimed_pair_order = 1;
  c.table_ref = "Table2:row1";
  EXPECT_EQ(parse_certificate(format_certificate(c)), c);
  // blank lines carry no word
  EXPECT_EQ(parse_certificate(format_certificate(c) + "\n\n").seed_words.size(), 2u);
}

TEST(CertificateFormat, HeaderLayout) {
  auto c = bundled_certificate("Table1:row3");
  auto text = format_certificate(c);
  EXPECT_EQ(text.substr(0, text.find('\n')), "group=PSL3(5) index=155 order=2400 block=5 pair=16 ref=Table1:row3");
}

TEST(CertificateFormat, Malformed) {
  EXPECT_THROW(parse_certificate(""), ValidationError);
  EXPECT_THROW(parse_certificate("group=M11 index=22 order=360 block=2 ref=Table1:row1\n1 2\n"), ValidationError);
  EXPECT_THROW(parse_certificate("group=M11 index=x order=360 block=2 pair=18 ref=Table1:row1\n1 2\n"), ValidationError);
  EXPECT_THROW(parse_certificate("group=M11 index=22 order=360 block=2 pair=18 ref=Table1:row1\n1 a 2\n"), ValidationError);
  EXPECT_THROW(parse_certificate("group=M11 index=22 order=360 block=2 pair=18 ref=Table1:row1\n1 0 2\n"), ValidationError);
}

TEST(CertificateFormat, BadWordIndexIsValidationError) {
  auto c = bundled_certificate("Table1:row1");
  c.seed_words.push_back({99});
  EXPECT_THROW(verify_certificate(c), ValidationError);
}

TEST(Certificates, AllRowsShip) {
  auto certs = load_certificates(default_cert_dir());
  EXPECT_EQ(certs.size(), table1().size() + table2().size());
  for (const auto* t : {&table1(), &table2()})
    for (const auto& r : *t) EXPECT_TRUE(find_certificate(default_cert_dir(), r.ref())) << r.ref();
}

TEST(VerifyCertificate, M11) {
  auto r = verify_certificate(bundled_certificate("Table1:row1"));
  EXPECT_EQ(r.status, VerifyStatus::BruteForce) << r.failure;
  EXPECT_EQ(r.pair_order, 18);
  EXPECT_EQ(r.block_size, 2);
  EXPECT_EQ(r.socle_fixes_block, true);
}

TEST(VerifyCertificate, Psl52) {
  auto r = verify_certificate(bundled_certificate("Table1:row2"));
  EXPECT_EQ(r.status, VerifyStatus::BruteForce) << r.failure;
  EXPECT_EQ(r.pair_order, 168);
  EXPECT_EQ(r.block_size, 8);
}

TEST(VerifyCertificate, Psl359DefaultsToOrderOnly) {
  auto c = bundled_certificate("Table1:row17");
  EXPECT_EQ(c.claimed_index, BigInt(3541) * 3422);
  auto r = verify_certificate(c);
  EXPECT_EQ(r.status, VerifyStatus::OrderOnly) << r.failure;
  EXPECT_EQ(r.pair_order, 1);
}

TEST(VerifyCertificate, DetectsWrongClaims) {
  auto c = bundled_certificate("Table2:row3");
  c.claimed_pair_order = 5;
  auto r = verify_certificate(c);
  EXPECT_EQ(r.status, VerifyStatus::Failed);
  EXPECT_FALSE(r.failure.empty());

  auto d = bundled_certificate("Table2:row3");
  d.seed_words.pop_back();  // drops to a smaller subgroup
  EXPECT_EQ(verify_certificate(d).status, VerifyStatus::Failed);
}

// PD with n = 2 and L = M: |L ∩ sLs| = q^2 gcd(q-1, 3).
TEST(VerifyCertificate, PdPairOrderFormula) {
  for (const auto* ref : {"Table2:row2", "Table2:row10"}) {
    auto c = bundled_certificate(ref);
    auto amb = load_ambient(c.group_id);
    auto r = verify_certificate(c);
    ASSERT_EQ(r.status, VerifyStatus::BruteForce) << r.failure;
    const auto q = amb->projective->field().q();
    const BigInt expected = BigInt(q) * q * std::gcd(q - 1, decltype(q){3});
    EXPECT_EQ(r.pair_order, expected) << ref;
  }
}

TEST(VerifyAll, ThreadedMatchesSequential) {
  std::vector<Certificate> certs;
  for (const auto* ref : {"Table2:row1", "Table2:row2", "Table2:row3", "Table2:row6", "Table1:row1"})
    certs.push_back(bundled_certificate(ref));
  auto pooled = verify_all(certs, {}, 3);
  ASSERT_EQ(pooled.size(), certs.size());
  for (std::size_t i = 0; i < certs.size(); ++i) {
    auto one = verify_certificate(certs[i]);
    EXPECT_EQ(pooled[i].subject, certs[i].table_ref);
    EXPECT_EQ(pooled[i].status, one.status);
    EXPECT_EQ(pooled[i].pair_order, one.pair_order);
  }
}

TEST(VerifyRowOrders, SmallRowsAgree) {
  for (const auto& r : table2()) EXPECT_TRUE(verify_row_orders(r).ok()) << r.ref();
}

TEST(Exhaustive, Psl32) {
  auto ext = exhaustive_verify_small("PSL3(2)");
  EXPECT_EQ(block_sizes(ext), std::vector<std::uint64_t>{2});
  EXPECT_EQ(ext[0].order, 12);
}

TEST(Exhaustive, Psl33) {
  auto ext = exhaustive_verify_small("PSL3(3)");
  EXPECT_EQ(block_sizes(ext), (std::vector<std::uint64_t>{2, 3, 6, 6}));
}

TEST(Exhaustive, M11) {
  auto ext = exhaustive_verify_small("M11");
  ASSERT_EQ(ext.size(), 1u);
  EXPECT_EQ(ext[0].block_size, 2);
  EXPECT_EQ(ext[0].pair_order, 18);
  EXPECT_EQ(ext[0].subgroup.order(), 360);
}

TEST(Exhaustive, BoundIsEnforced) {
  EXPECT_THROW(exhaustive_verify_small("PSL3(5)"), ResourceError);
}

// The completeness property: the exhaustive list equals the classification
// (table rows plus PD/PF) for every group inside the bound.
TEST(Exhaustive, EqualsClassification) {
  for (const auto* id : {"PSL3(2)", "PSL3(3)", "PSL3(4)", "M11", "PSL2(11)-on-11"}) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> got, want;
    for (const auto& e : exhaustive_verify_small(id))
      got.emplace_back(e.block_size.convert_to<std::uint64_t>(), e.pair_order.convert_to<std::uint64_t>());
    for (const auto& a : full_classify(id).actions)
      want.emplace_back(a.block_size.convert_to<std::uint64_t>(), a.pair_order.convert_to<std::uint64_t>());
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << id;
  }
}

TEST(Exhaustive, SocleLiesInEveryExtension) {
  for (const auto* id : {"PSL3(2)", "PSL3(3)", "M11"}) {
    auto amb = load_ambient(id);
    for (const auto& e : exhaustive_verify_small(id)) EXPECT_TRUE(socle_inside(*amb, e.subgroup)) << id;
  }
}

TEST(TwoBbtCriterion, AgreesWithCosetAction) {
  auto amb = load_ambient("PSL3(3)");
  Rng rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    auto l = PermGroup::from_generators(amb->group.degree(), {amb->point_stabilizer.random_element(rng),
                                                              amb->point_stabilizer.random_element(rng)});
    if (l.order() == amb->point_stabilizer.order()) continue;
    auto act = imprimitive_coset_action(coset_action(amb->group, l), amb->alpha0);
    EXPECT_EQ(is_two_bbt_subgroup(*amb, l), is_k_by_block_transitive(act, 2));
    EXPECT_EQ(pair_intersection_order(*amb, l), conjugate_intersection_order(l, amb->s));
  }
}

TEST(Nonexistence, Catalog) {
  auto ids = nonexistence_catalog();
  for (const auto* id : {"Alt(5)", "Sym(7)", "PSL2(11)-on-11", "Alt(7)-on-15", "PGammaL2(8)-on-28", "M12", "M22",
                         "M22:2", "M23", "M24"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
}

TEST(Nonexistence, M12TargetedTest) {
  auto r = verify_nonexistence("M12");
  EXPECT_TRUE(r.ok()) << r.failure;
  EXPECT_EQ(r.status, VerifyStatus::BruteForce);
}

TEST(Nonexistence, Alt7OnFifteen) {
  auto r = verify_nonexistence("Alt(7)-on-15");
  EXPECT_TRUE(r.ok()) << r.failure;
}

TEST(Nonexistence, SmallAlternatingAndSymmetric) {
  for (std::size_t d = 4; d <= 7; ++d) {
    auto a = verify_nonexistence("Alt(" + std::to_string(d) + ")");
    EXPECT_EQ(a.status, VerifyStatus::BruteForce) << d << " " << a.failure;
  }
  for (std::size_t d = 3; d <= 7; ++d) {
    auto s = verify_nonexistence("Sym(" + std::to_string(d) + ")");
    EXPECT_EQ(s.status, VerifyStatus::BruteForce) << d << " " << s.failure;
  }
}

TEST(Nonexistence, LargeMathieuGroups) {
  for (const auto* id : {"M22", "M22:2", "M23", "M24"}) {
    auto r = verify_nonexistence(id);
    EXPECT_EQ(r.status, VerifyStatus::OrderOnly) << id << " " << r.failure;
  }
}

TEST(Nonexistence, UnknownIdFails) {
  EXPECT_FALSE(verify_nonexistence("PSL3(5)").ok());
}

TEST(Search, Psl35IndexFive) {
  auto amb = load_ambient("PSL3(5)");
  auto c = search_subgroup(*amb, 5, transitive_off_alpha0);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->claimed_order, 2400);
  EXPECT_EQ(verify_certificate(*c).status, VerifyStatus::BruteForce);
}

TEST(Search, IndexOneIsThePointStabilizer) {
  auto amb = load_ambient("PSL3(3)");
  auto c = search_subgroup(*amb, 1, transitive_off_alpha0);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->claimed_order, amb->point_stabilizer.order());
  EXPECT_TRUE(testkit::certificate_subgroup(*c).same_group(amb->point_stabilizer));
}

TEST(Search, Psl32IndexTwo) {
  auto amb = load_ambient("PSL3(2)");
  auto c = search_subgroup(*amb, 2, transitive_off_alpha0);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->claimed_order, 12);
}

TEST(Search, ReproducibleUnderSeed) {
  auto amb = load_ambient("PSL3(5)");
  for (std::uint64_t seed : {0u, 1u, 42u}) {
    SearchOptions o;
    o.seed = seed;
    auto a = search_subgroup(*amb, 10, transitive_off_alpha0, o);
    auto b = search_subgroup(*amb, 10, transitive_off_alpha0, o);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) EXPECT_EQ(format_certificate(*a), format_certificate(*b));
  }
}

TEST(Search, BudgetExhaustionIsNotFound) {
  auto amb = load_ambient("PSL3(2)");
  SearchOptions o;
  o.budget = 3;
  // index 7 does not occur as a transitive subgroup
  EXPECT_FALSE(search_subgroup(*amb, 7, transitive_off_alpha0, o));
}

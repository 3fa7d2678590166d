#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "bbt/classify.hpp"
#include "bbt/errors.hpp"
#include "bbt/report_json.hpp"
#include "support.hpp"

using namespace bbt;

namespace {

const std::vector<std::string>& catalog() {
  static const std::vector<std::string> names = {
      "PSL3(2)",     "PSL3(3)",       "PSL3(4)",        "PGL3(4)",       "PSigmaL3(4)",  "PΓL3(4)",
      "PSL3(5)",     "PGL3(5)",       "PSL5(2)",        "PSL3(7)",       "PGL3(7)",      "PSL3(9)",
      "PΓL3(9)",     "PSL3(11)",      "PΓL3(19)",       "PGL3(19)",      "PSL3(23)",     "PSL3(29)",
      "PSL3(59)",    "PSL4(3)",       "PGL4(3)",        "PSL4(2)",       "M11",          "M11-on-12",
      "M12",         "M22",           "M22:2",          "M23",           "M24",          "HS",
      "Co3",         "Alt(7)",        "Alt(7)-on-15",   "Sym(9)",        "Sp8(2)",       "Sp8(2)-on-136",
      "PSL2(11)-on-11", "PΓL2(8)-on-28", "PΓL2(8)",     "PSigmaL2(9)",   "M10",          "PΓL2(9)",
      "PΓL2(27)",    "PSL2(64):3",    "PSU3(5)",        "Sz(8)",         "Ree(27)"};
  return names;
}

LieParams psl3(std::uint64_t p, unsigned e, unsigned t_G, unsigned e_G, unsigned r_G) {
  LieParams lp;
  lp.family = LieFamily::PSL3;
  lp.p = p;
  lp.e = e;
  lp.t = expected_t(lp.family, p, e);
  lp.t_G = t_G;
  lp.e_G = e_G;
  lp.r_G = r_G;
  return lp;
}

using RowKey = std::tuple<std::string, std::uint64_t, std::uint64_t>;

std::string kind_of(const ReportedAction& a) {
  if (a.type == "exceptional") return "exceptional";
  return a.label;
}

}  // namespace

TEST(K3, VerdictIsSingletons) {
  for (unsigned k : {3u, 4u, 7u}) EXPECT_EQ(k3_classify(k), "blocks are singletons");
}

TEST(K3, M11OnTwentyTwoIsNotThreeByBlock) {
  auto amb = load_ambient("M11");
  auto l = testkit::certificate_subgroup(testkit::bundled_certificate("Table1:row1"));
  auto act = imprimitive_coset_action(coset_action(amb->group, l), amb->alpha0);
  EXPECT_FALSE(k3_check(act, 3));
}

TEST(K3, ThreeTransitiveSingletons) {
  ImprimitiveAction act(PermGroup::symmetric(5), BlockSystem::singletons(5));
  EXPECT_TRUE(k3_check(act, 3));
}

TEST(PdBlockSizes, Examples) {
  EXPECT_EQ(pd_block_sizes(2, LinearFamily::ZSL, 5), (std::vector<std::uint64_t>{2, 4}));
  EXPECT_TRUE(pd_block_sizes(2, LinearFamily::GL, 4).empty());
  EXPECT_TRUE(pd_block_sizes(3, LinearFamily::GL, 3).empty());
}

TEST(PdBlockSizes, CoprimeToPdet) {
  for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 19u})
    for (std::size_t n = 2; n <= 4; ++n)
      for (auto fam : {LinearFamily::SL, LinearFamily::GL, LinearFamily::GammaL}) {
        const auto pd = pdet_order(fam, n, q);
        for (auto b : pd_block_sizes(n, fam, q)) {
          EXPECT_GT(b, 1u);
          EXPECT_EQ((q - 1) % b, 0u);
          EXPECT_EQ(std::gcd(b, pd.pdet_order), 1u);
        }
      }
}

TEST(PfCandidates, Q3) {
  auto c = pf_candidates(psl3(3, 1, 1, 1, 0));
  ASSERT_EQ(c.size(), 3u);
  std::vector<std::tuple<unsigned, unsigned, std::uint64_t>> got;
  for (const auto& x : c) got.emplace_back(x.d_x, x.d_y, x.block_size.convert_to<std::uint64_t>());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::tuple<unsigned, unsigned, std::uint64_t>>{{1, 1, 3}, {1, 2, 6}, {2, 1, 6}}));
}

TEST(PfCandidates, Psl34IsEmpty) {
  EXPECT_TRUE(pf_candidates(psl3(2, 2, 3, 1, 0)).empty());
}

TEST(PfCandidates, Q5DoubledAreSharp) {
  for (const auto& c : pf_candidates(psl3(5, 1, 1, 1, 0))) {
    if (c.d_x * c.d_y == 2) {
      EXPECT_EQ(c.block_size, 20);
      EXPECT_TRUE(c.sharp);
      EXPECT_EQ(c.pair_order, 1);
    } else {
      EXPECT_EQ(c.block_size, 10);
      EXPECT_FALSE(c.sharp);
    }
  }
}

TEST(PfCandidates, Filters) {
  // e_G even leaves only (1,1); p = 2 forces d_x = 1
  for (const auto& c : pf_candidates(psl3(3, 2, 1, 2, 0))) {
    EXPECT_EQ(c.d_x, 1u);
    EXPECT_EQ(c.d_y, 1u);
  }
  for (const auto& c : pf_candidates(psl3(2, 3, 1, 1, 0))) EXPECT_EQ(c.d_x, 1u);
  LieParams bad;
  bad.family = LieFamily::PSL2;
  bad.p = 5;
  bad.e = 1;
  bad.t = 2;
  EXPECT_THROW(pf_candidates(bad), ValidationError);
}

TEST(Rank1Report, Examples) {
  EXPECT_EQ(rank1_report(*parse_group("PΓL2(8)").lie).d_G, 1);
  auto m10 = rank1_report(*parse_group("M10").lie);
  EXPECT_EQ(m10.d_G, 2);
  EXPECT_EQ(m10.h.at(2), 2);
  auto big = rank1_report(*parse_group("PSL2(64):3").lie);
  EXPECT_EQ(big.d_G, 3);
  EXPECT_EQ(big.h.at(3), 2);
  EXPECT_FALSE(big.sharp);
}

TEST(ExceptionalLookup, Examples) {
  auto m11 = exceptional_lookup("M11");
  ASSERT_EQ(m11.size(), 1u);
  EXPECT_EQ(m11[0].stabilizer, "Alt(6)");
  EXPECT_EQ(m11[0].omega0, 11u);
  EXPECT_EQ(m11[0].block_size, 2u);
  EXPECT_EQ(m11[0].pair_order, 18u);
  auto p29 = exceptional_lookup("PSL3(29)");
  ASSERT_EQ(p29.size(), 2u);
  EXPECT_EQ(p29[0].block_size, 406u);
  EXPECT_EQ(p29[1].block_size, 812u);
  EXPECT_TRUE(exceptional_lookup("PSL4(3)").empty());
  EXPECT_TRUE(exceptional_lookup("no such group").empty());
}

TEST(ExceptionalLookup, TableShapes) {
  EXPECT_EQ(table1().size(), 17u);
  EXPECT_EQ(table2().size(), 16u);
  for (const auto& r : table1()) EXPECT_EQ(r.ref(), "Table1:row" + std::to_string(r.row));
}

TEST(FullClassify, Sym9) {
  auto r = full_classify("Sym(9)");
  EXPECT_EQ(r.case_tag, "none");
  EXPECT_TRUE(r.actions.empty());
  EXPECT_EQ(r.citations, std::vector<std::string>{"symmetric-alternating"});
}

TEST(FullClassify, Sp82BothActions) {
  for (const auto* name : {"Sp8(2)", "Sp8(2)-on-136"}) {
    auto r = full_classify(name);
    EXPECT_EQ(r.case_tag, "none");
    EXPECT_EQ(r.citations, std::vector<std::string>{"symplectic-splitting"});
  }
}

TEST(FullClassify, PGammaL39) {
  auto r = full_classify("PΓL3(9)");
  auto it = std::find_if(r.actions.begin(), r.actions.end(), [](const ReportedAction& a) { return a.type == "exceptional"; });
  ASSERT_NE(it, r.actions.end());
  EXPECT_EQ(it->block_size, 12);
  EXPECT_EQ(it->source, "Table1:row8");
}

TEST(FullClassify, Pgl35) {
  auto r = full_classify("PGL3(5)");
  std::map<std::string, std::vector<BigInt>> blocks;
  for (const auto& a : r.actions) blocks[a.type].push_back(a.block_size);
  EXPECT_EQ(blocks["PD"], (std::vector<BigInt>{2, 4}));
  EXPECT_EQ(blocks["PF"], (std::vector<BigInt>{10, 20, 20}));
  EXPECT_EQ(blocks["exceptional"], (std::vector<BigInt>{5, 10, 20}));
}

TEST(FullClassify, AffineRejected) {
  try {
    parse_group("AGL1(8)");
    FAIL() << "affine group accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("abelian-normal-subgroup"), std::string::npos);
  }
  EXPECT_THROW(full_classify("Foo(3)"), ValidationError);
}

TEST(FullClassify, NoExtensionCases) {
  for (const auto* name : {"PSL2(11)-on-11", "Alt(7)-on-15", "PΓL2(8)-on-28", "M12", "M22", "M23", "M24", "HS", "Co3",
                           "Alt(7)", "PΓL2(8)"}) {
    auto r = full_classify(name);
    EXPECT_EQ(r.case_tag, "none") << name;
    EXPECT_FALSE(r.citations.empty()) << name;
  }
}

// Table 2 row for row: every group with socle PSL3(q), 2 <= q <= 5.
TEST(FullClassify, MatchesSmallSocleTableRowForRow) {
  std::map<std::string, std::vector<RowKey>> expected;
  for (const auto& r : table2()) expected[parse_group(r.group).canonical_key()].emplace_back(r.type, r.block_size, r.pair_order);
  for (const auto* name : {"PSL3(2)", "PSL3(3)", "PSL3(4)", "PGL3(4)", "PSigmaL3(4)", "PΓL3(4)", "PSL3(5)"}) {
    const auto spec = parse_group(name);
    auto rep = full_classify(spec);
    std::vector<RowKey> got;
    for (const auto& a : rep.actions)
      got.emplace_back(kind_of(a), a.block_size.convert_to<std::uint64_t>(), a.pair_order.convert_to<std::uint64_t>());
    auto want = expected[spec.canonical_key()];
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << name;
  }
}

TEST(FullClassify, EveryActionPassesIntegrality) {
  for (const auto& name : catalog()) {
    const auto spec = parse_group(name);
    auto rep = full_classify(spec);
    EXPECT_FALSE(rep.case_tag.empty());
    EXPECT_EQ(rep.k3_verdict, "blocks are singletons");
    for (const auto& a : rep.actions) {
      auto pair = double_coset_pair_order(spec.order, spec.point_stabilizer_order(), a.block_size);
      ASSERT_TRUE(pair) << name << " " << a.label;
      EXPECT_EQ(*pair, a.pair_order) << name << " " << a.label;
      auto r = pair_stabilizer_order(spec.order, spec.point_stabilizer_order() / a.block_size,
                                     spec.point_stabilizer_order());
      EXPECT_EQ(r, Rational(a.pair_order));
    }
  }
}

// Sharp actions: PF with d = 2 inside a group of order |PGL3(q)|, or a Table 1
// row with trivial pair stabilizer.
TEST(FullClassify, SharpTrichotomy) {
  std::set<std::string> sharp_rows;
  for (const auto& name : catalog()) {
    const auto spec = parse_group(name);
    for (const auto& a : full_classify(spec).actions) {
      if (a.type == "PD" || a.type == "rank1") EXPECT_FALSE(a.sharp) << name;
      if (!a.sharp) continue;
      EXPECT_EQ(a.pair_order, 1);
      if (a.type == "PF") {
        EXPECT_TRUE(a.label == "PF(1,2)" || a.label == "PF(2,1)") << name;
        EXPECT_EQ(spec.order, projective_group_order(LinearFamily::GL, 2, spec.p, spec.e)) << name;
      } else {
        ASSERT_EQ(a.type, "exceptional") << name;
        const auto q = spec.q();
        EXPECT_TRUE(q == 5 || q == 11 || q == 23 || q == 29 || q == 59) << name;
        sharp_rows.insert(a.label);
      }
    }
  }
  // rows 5, 10, 12, 14, 16, 17 (PSL3(11) lists two)
  EXPECT_EQ(sharp_rows, (std::set<std::string>{"Table1:row5", "Table1:row10", "Table1:row12", "Table1:row14",
                                               "Table1:row16", "Table1:row17"}));
}

TEST(ReportJson, RoundTrip) {
  for (const auto& name : catalog()) {
    auto rep = full_classify(name);
    auto j = to_json(rep);
    EXPECT_EQ(report_from_json(nlohmann::json::parse(j.dump())), rep) << name;
    EXPECT_TRUE(j.contains("case"));
    for (const auto& a : j["actions"]) {
      EXPECT_TRUE(a["classes"].is_null() || a["classes"].is_number_integer());
      EXPECT_TRUE(a["sharp"].is_boolean());
      const auto src = a["source"].get<std::string>();
      EXPECT_TRUE(src == "formula" || src.rfind("Table1:row", 0) == 0) << src;
    }
  }
}

TEST(ReportJson, LargeIntegersAsStrings) {
  BigInt big = ipow(BigInt(2), 80) + 7;
  auto j = bigint_to_json(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(bigint_from_json(j), big);
  EXPECT_TRUE(bigint_to_json(BigInt(12)).is_number_unsigned());
  EXPECT_EQ(bigint_from_json(nlohmann::json(12)), 12);
}

TEST(ParseGroup, NamesAndOrders) {
  EXPECT_EQ(parse_group("PSL3(5)").canonical_key(), parse_group("PGL3(5)").canonical_key());
  EXPECT_EQ(parse_group("PΓL3(9)").canonical_key(), parse_group("PGammaL3(9)").canonical_key());
  EXPECT_EQ(parse_group("M11").order, 7920);
  EXPECT_EQ(parse_group("M12").order, 95040);
  EXPECT_EQ(parse_group("M24").degree, 24);
  EXPECT_EQ(parse_group("PSL2(11)-on-11").degree, 11);
  EXPECT_EQ(parse_group("Alt(7)-on-15").degree, 15);
  EXPECT_EQ(parse_group("PΓL2(8)-on-28").degree, 28);
  EXPECT_EQ(parse_group("PSL5(2)").order, BigInt(9999360));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "bbt/arith.hpp"
#include "bbt/errors.hpp"
#include "bbt/rng.hpp"

using namespace bbt;

namespace {

LieParams psl2(std::uint64_t p, unsigned e, unsigned t_G, unsigned e_G, unsigned r_G) {
  LieParams lp;
  lp.family = LieFamily::PSL2;
  lp.p = p;
  lp.e = e;
  lp.t = expected_t(lp.family, p, e);
  lp.t_G = t_G;
  lp.e_G = e_G;
  lp.r_G = r_G;
  return lp;
}

// x -> a x + 1 mod n from 0 returns to 0 after exactly n steps.
bool lcg_full_period(std::uint64_t a, std::uint64_t n) {
  std::uint64_t x = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    x = (a % n * x + 1) % n;
    if (x == 0) return i == n;
  }
  return false;
}

std::vector<std::uint64_t> totient_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::uint64_t p = 2; p <= limit; ++p)
    if (phi[p] == p)
      for (std::uint64_t m = p; m <= limit; m += p) phi[m] -= phi[m] / p;
  return phi;
}

}  // namespace

TEST(PhiK, Examples) {
  EXPECT_EQ(phi_k(1, 1), 1u);
  EXPECT_EQ(phi_k(2, 12), 8u);
  EXPECT_EQ(phi_k(1, 7), 6u);
  EXPECT_EQ(phi_k(-2, 3), 2u);
}

TEST(PhiK, ZeroIsRejected) {
  EXPECT_THROW(phi_k(1, 0), ValidationError);
}

TEST(PhiK, ReducesToTotientForKOne) {
  constexpr std::uint64_t kLimit = 10000;
  auto phi = totient_sieve(kLimit);
  for (std::uint64_t t = 1; t <= kLimit; ++t) ASSERT_EQ(phi_k(1, t), phi[t]) << t;
}

TEST(PhiK, PrimesOfKAreKept) {
  // phi_k(k, t) = t when every prime of t divides k
  for (std::uint64_t t : {1u, 2u, 4u, 6u, 12u, 36u, 72u}) EXPECT_EQ(phi_k(6, t), t);
  EXPECT_EQ(phi_k(0, 10), 10u);  // every prime divides 0
}

TEST(FullPeriod, Examples) {
  EXPECT_TRUE(is_full_period(4, 9));
  EXPECT_FALSE(is_full_period(3, 8));
  for (std::int64_t a : {-5, 0, 1, 2, 17}) EXPECT_TRUE(is_full_period(a, 1));
}

TEST(FullPeriod, AgreesWithIteration) {
  for (std::uint64_t n = 1; n <= 200; ++n)
    for (std::uint64_t a = 1; a <= 200; ++a)
      ASSERT_EQ(is_full_period(static_cast<std::int64_t>(a), n), lcg_full_period(a, n)) << a << " " << n;
}

TEST(Alpha, PartialSums) {
  EXPECT_EQ(alpha(2, 3, 100), 7u);
  EXPECT_EQ(alpha(4, 0, 9), 0u);
  // full period means t -> alpha(t) hits every residue
  std::vector<bool> hit(9, false);
  for (std::uint64_t t = 0; t < 9; ++t) hit[alpha(4, t, 9)] = true;
  EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST(Factorization, Basics) {
  EXPECT_EQ(factorize(std::uint64_t{360}), (Factorization{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_EQ(factorize(std::uint64_t{1}), Factorization{});
  EXPECT_EQ(divisors(std::uint64_t{12}), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_TRUE(is_prime(7919));
  EXPECT_FALSE(is_prime(7917));
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t n = 1 + rng.below(1'000'000);
    std::uint64_t back = 1;
    std::uint64_t last = 1;
    for (auto [p, e] : factorize(n)) {
      EXPECT_GT(p, last);
      last = p;
      for (unsigned k = 0; k < e; ++k) back *= p;
    }
    EXPECT_EQ(back, n);
  }
}

TEST(RankOne, M10Configuration) {
  auto rep = rank1_classify(psl2(3, 2, 2, 2, 1));
  EXPECT_EQ(rep.d_G, 2);
  EXPECT_EQ(rep.h.at(2), 2);
  EXPECT_EQ(rep.h.at(1), 1);
  EXPECT_FALSE(rep.sharp);
}

TEST(RankOne, UnitaryExampleWithSevenFold) {
  auto lp = ldc_example_lie_params(2, 7);
  EXPECT_EQ(lp.family, LieFamily::PSU3);
  EXPECT_EQ(lp.q(), ipow(BigInt(2), 21));
  auto rep = rank1_classify(lp);
  EXPECT_EQ(rep.d_G, 7);
  EXPECT_EQ(rep.h.at(7), 6);
}

TEST(RankOne, PGammaL28DoesNotExtend) {
  auto rep = rank1_classify(psl2(2, 3, 1, 3, 0));
  EXPECT_EQ(rep.d_G, 1);
  EXPECT_EQ(rep.h.size(), 1u);
}

TEST(RankOne, Psl264WithFieldOfOrderThree) {
  auto rep = rank1_classify(psl2(2, 6, 1, 3, 0));
  EXPECT_EQ(rep.d_G, 3);
  EXPECT_EQ(rep.h.at(3), 2);
}

TEST(RankOne, UnitaryRuleForThree) {
  // PSU3(2^9), t_G = 3, e_G = 9, r_G = 1: 3 divides gcd(e_G, o_G) and
  // a = 4 = 1 mod 3, but 9 | q + 1 removes the prime 3.
  LieParams lp;
  lp.family = LieFamily::PSU3;
  lp.p = 2;
  lp.e = 9;
  lp.t = expected_t(lp.family, 2, 9);
  lp.t_G = 3;
  lp.e_G = 9;
  lp.r_G = 1;
  auto rep = rank1_classify(lp);
  ASSERT_EQ(lp.t, 3u);
  EXPECT_EQ(lp.a_G(), 4);
  EXPECT_EQ(boost::multiprecision::gcd(BigInt(9), rep.o_G), 3);
  EXPECT_EQ((lp.q() + 1) % 9, 0);
  EXPECT_EQ(rep.d_G, 1);
}

TEST(RankOne, InconsistentParamsRejected) {
  EXPECT_THROW(rank1_classify(psl2(2, 3, 1, 2, 0)), ValidationError);  // e_G does not divide e
  EXPECT_THROW(rank1_classify(psl2(3, 1, 1, 1, 0)), ValidationError);  // q < 4
  LieParams sz;
  sz.family = LieFamily::Sz;
  sz.p = 2;
  sz.e = 4;
  EXPECT_THROW(rank1_classify(sz), ValidationError);
}

// h_n even for n > 1; d_G divides e_G and the field's unit group order.
TEST(RankOne, SweepProperties) {
  std::size_t checked = 0;
  for (auto fam : {LieFamily::PSL2, LieFamily::PSU3, LieFamily::Sz, LieFamily::Ree}) {
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
      for (unsigned e = 1; e <= 12; ++e) {
        unsigned t = 0;
        try {
          t = expected_t(fam, p, e);
        } catch (const std::exception&) {
          continue;
        }
        LieParams lp;
        lp.family = fam;
        lp.p = p;
        lp.e = e;
        lp.t = t;
        const unsigned fd = lp.field_degree();
        for (unsigned t_G : {1u, t}) {
          for (unsigned e_G = 1; e_G <= fd; ++e_G) {
            if (fd % e_G) continue;
            for (unsigned r_G = 0; r_G < t_G; ++r_G) {
              lp.t_G = t_G;
              lp.e_G = e_G;
              lp.r_G = r_G;
              try {
                validate(lp);
              } catch (const ValidationError&) {
                continue;
              }
              auto rep = rank1_classify(lp);
              ++checked;
              EXPECT_EQ(BigInt(e_G) % rep.d_G, 0);
              EXPECT_EQ(lp.field_units() % rep.d_G, 0);
              EXPECT_EQ(rep.h.at(1), 1);
              for (auto& [n, h] : rep.h) {
                EXPECT_EQ(rep.d_G % n, 0);
                if (n > 1) EXPECT_EQ(h % 2, 0) << to_string(fam) << " p=" << p << " e=" << e;
              }
            }
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 200u);
}

TEST(LdcExample, Parameters) {
  auto a = ldc_example_params(2, 7);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->m, 3u);
  EXPECT_EQ(a->q, ipow(BigInt(2), 21));
  EXPECT_EQ(ldc_example_params(2, 161)->m, 33u);
  EXPECT_EQ(ldc_example_params(3, 143)->m, 15u);
  EXPECT_FALSE(ldc_example_params(2, 5));  // ord_5(2) = 4
}

TEST(LdcExample, PreconditionsRejected) {
  EXPECT_THROW(ldc_example_params(2, 8), ValidationError);
  EXPECT_THROW(ldc_example_params(3, 9), ValidationError);
  EXPECT_THROW(ldc_example_params(4, 7), ValidationError);
}

TEST(LdcExample, CountsMatchTotient) {
  for (std::uint64_t n : {7u, 23u, 31u}) {
    auto ex = ldc_example_params(2, n);
    if (!ex) continue;
    auto rep = rank1_classify(ldc_example_lie_params(2, n));
    EXPECT_EQ(rep.d_G % n, 0);
    EXPECT_EQ(rep.h.at(n), BigInt(n - 1));
  }
}

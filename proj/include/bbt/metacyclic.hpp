#pragma once

#include <cstdint>
#include <vector>

#include "bbt/arith.hpp"
#include "bbt/permgroup.hpp"

namespace bbt {

// G = <x, y | x^N, y^m = x^rprime, y x y^-1 = x^a> with an involution s:
// s x s = x^(k+1), s y s = x^l y.
struct MetacyclicSpec {
  std::uint64_t N = 1;
  std::uint64_t m = 1;
  std::int64_t a = 1;
  std::int64_t rprime = 0;
  std::int64_t k = 0;
  std::int64_t l = 0;
};

// Throws ValidationError naming the first failed relation.
void validate(const MetacyclicSpec& spec);

// Element x^i y^j with 0 <= i < N, 0 <= j < m.
struct MetaElt {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  bool operator==(const MetaElt&) const = default;
};

class MetacyclicGroup {
 public:
  explicit MetacyclicGroup(const MetacyclicSpec& spec);

  const MetacyclicSpec& spec() const { return spec_; }
  std::uint64_t order() const { return spec_.N * spec_.m; }
  std::uint64_t index(MetaElt e) const { return e.i * spec_.m + e.j; }
  MetaElt element(std::uint64_t idx) const { return {idx / spec_.m, idx % spec_.m}; }

  MetaElt mul(MetaElt u, MetaElt v) const;
  MetaElt inv(MetaElt u) const;
  MetaElt pow(MetaElt u, std::uint64_t e) const;
  MetaElt conj(MetaElt u, MetaElt by) const { return mul(mul(by, u), inv(by)); }
  MetaElt s_conj(MetaElt u) const;  // s u s
  MetaElt x() const { return {1 % spec_.N, 0}; }
  // y itself; equals x^rprime when m = 1
  MetaElt y() const;

  // Element indices of the subgroup generated by gens.
  std::vector<std::uint64_t> closure(const std::vector<MetaElt>& gens) const;

 private:
  MetacyclicSpec spec_;
  std::vector<std::uint64_t> apow_;   // a^j mod N
  std::vector<std::uint64_t> alpha_;  // sum_{t<j} a^t mod N, j <= m
};

struct Realization {
  PermGroup group;  // <x, y, s> acting regularly on 2Nm points
  PermGroup xy;     // <x, y>
  Permutation x, y, s;
};

Realization realize(const MetacyclicSpec& spec);

struct CoverWitness {
  // H = <x^c, x^i y^u>
  std::uint64_t c = 0, u = 0, i = 0;
  std::uint64_t intersection_order = 0;  // |H ∩ sHs|
  bool intersection_is_xn_yn = false;    // H ∩ sHs = <x^n, y^n>
};

struct CoverEnumeration {
  std::uint64_t n = 0;
  std::uint64_t subgroup_count = 0;
  std::uint64_t class_count = 0;
  std::uint64_t candidates = 0;  // subgroups of index n examined
  std::vector<CoverWitness> witnesses;
};

inline constexpr std::uint64_t kMetacyclicBound = 10'000;

// Every subgroup H of index n in <x, y> is examined and kept when G = sHsH.
CoverEnumeration enumerate_covers(const MetacyclicSpec& spec, std::uint64_t n,
                                  std::uint64_t bound = kMetacyclicBound);

struct DivisorData {
  std::uint64_t k0 = 0;  // gcd(k, l, N)
  std::uint64_t d0 = 1;
  std::uint64_t d = 1;
};

// d_0: largest divisor of gcd(m, |<x> : <y^m>|) coprime to k_0; d keeps the
// primes allowed by the full-period condition on a.
DivisorData derive_d(const MetacyclicSpec& spec);

struct CoverPrediction {
  bool nonempty = false;
  std::uint64_t subgroup_count = 0;
  std::uint64_t class_count = 0;
};

CoverPrediction predict_covers(const MetacyclicSpec& spec, std::uint64_t n);

// Spec of the distant pair stabilizer <x, y> for a rank-one parameter set.
MetacyclicSpec rank1_metacyclic_spec(const LieParams& params);

// G = A ⋊ <h> with A = Z_{m_1} x ... x Z_{m_r}; phi is the action of h on A
// and s acts by s(a) = sigma(a), s(h) = c h. Matrices are column images of
// the standard generators.
struct AbelianByCyclicSpec {
  std::vector<std::uint64_t> moduli;
  std::vector<std::vector<std::int64_t>> phi;
  std::uint64_t h_order = 1;
  std::vector<std::vector<std::int64_t>> sigma;
  std::vector<std::int64_t> c;
};

struct Index2Check {
  std::uint64_t group_order = 0;
  std::uint64_t subgroups_checked = 0;  // cyclic H with H ∩ A = 1
  std::uint64_t covers = 0;             // those with G = sHsH
  bool a_has_cyclic_index2 = false;
  bool vacuous() const { return covers == 0; }
  bool holds() const { return covers == 0 || a_has_cyclic_index2; }
};

inline constexpr std::uint64_t kIndex2Bound = 20'000;

// Throws ValidationError when phi, sigma or c do not define the extension.
Index2Check check_index2_cyclic(const AbelianByCyclicSpec& spec,
                                std::uint64_t bound = kIndex2Bound);

}  // namespace bbt

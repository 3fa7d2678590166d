#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbt/arith.hpp"
#include "bbt/bigint.hpp"
#include "bbt/blockact.hpp"
#include "bbt/field.hpp"
#include "bbt/matgrp.hpp"

namespace bbt {

// Almost simple 2-transitive groups by socle type.
enum class SocleKind { Linear, RankOne, Alternating, Symmetric, Symplectic, Mathieu, Sporadic };

// A 2-transitive almost simple group together with its action degree.
//
// Name grammar:
//   PSL<d>(q) PGL<d>(q) PSigmaL<d>(q) PGammaL<d>(q)   (also PΣL, PΓL)
//   PSU3(q) PGU3(q) PSigmaU3(q) PGammaU3(q) Sz(q) Ree(q)
//   any of the above followed by ":f" adjoins field automorphisms of order f
//   M10 M11 M12 M22 M22:2 M23 M24 HS Co3 Alt(d) Sym(d) Sp<2m>(2)
//   "-on-N" or " on N" selects a non-standard degree, e.g. PSL2(11)-on-11.
struct GroupSpec {
  std::string name;
  SocleKind kind = SocleKind::Linear;
  BigInt degree;
  BigInt order;
  // Linear socle PSL_{n+1}(q).
  std::size_t n = 0;
  std::uint64_t p = 0;
  unsigned e = 0;
  LinearFamily family = LinearFamily::ZSL;
  unsigned e_G = 1;
  unsigned t_G = 1;
  // Rank-one socle (and PSL3, for the plane-field analysis).
  std::optional<LieParams> lie;
  bool standard_action = true;

  BigInt q() const { return ipow(BigInt(p), e); }
  BigInt point_stabilizer_order() const { return order / degree; }
  // Equal for isomorphic permutation groups within the catalog.
  std::string canonical_key() const;
};

// Throws ValidationError on unknown or non-2-transitive specifications;
// affine groups are rejected citing abelian-normal-subgroup.
GroupSpec parse_group(const std::string& name);
GroupSpec group_from_lie(const LieParams& params);

struct TableRow {
  int table = 1;  // 1 = exceptional actions, 2 = socle PSL3(q), q <= 5
  int row = 0;    // 1-based within the table
  std::string group;
  std::string stabilizer;       // G(w)
  std::string pair_stabilizer;  // G(w, w'), Table 1 only
  std::uint64_t omega0 = 0;
  std::uint64_t block_size = 0;
  std::uint64_t pair_order = 0;
  std::string type;  // exceptional, PD, PF(dx,dy)
  bool brute_forced = true;

  std::string ref() const;  // "Table1:row3"
};

const std::vector<TableRow>& table1();
const std::vector<TableRow>& table2();

// Rows of both tables whose group matches; unknown names give an empty list.
std::vector<TableRow> exceptional_lookup(const std::string& group_name);

inline constexpr const char* kK3Verdict = "blocks are singletons";

// Any finite block-faithful k-by-block-transitive group with k >= 3 has
// singleton blocks.
std::string k3_classify(unsigned k);
// Constructive side: true when the action is k-by-block-transitive, which for
// k >= 3 must only happen with singleton blocks.
bool k3_check(const ImprimitiveAction& act, unsigned k);

// Proper block sizes of PD actions: divisors b > 1 of (q-1)/c coprime to
// g/c, with g = gcd(n+1, q-1) and c the scalar part of the family.
std::vector<std::uint64_t> pd_block_sizes(std::size_t n, LinearFamily family, const FiniteField& field);
std::vector<std::uint64_t> pd_block_sizes(std::size_t n, LinearFamily family, std::uint64_t q);

struct PfCandidate {
  unsigned d_x = 1, d_y = 1;
  BigInt block_size;
  BigInt pair_order;
  bool sharp = false;
};

std::vector<PfCandidate> pf_candidates(const LieParams& params);

RankOneReport rank1_report(const LieParams& params);

struct ReportedAction {
  std::string type;   // PD, PF, rank1, exceptional
  std::string label;  // PF(1,2), Table1:row4, ...
  BigInt block_size;
  std::optional<BigInt> classes;  // unknown for PD and PF
  bool sharp = false;
  BigInt pair_order;
  std::string source;    // Table1:rowK or formula
  std::string citation;  // descriptive rule name
};

struct ClassificationReport {
  std::string group;
  std::string case_tag;  // none, or '+'-joined PD, PF, rank1, exceptional
  std::vector<ReportedAction> actions;
  std::vector<std::string> citations;  // eliminating rules when case is none
  std::string k3_verdict = kK3Verdict;
};

ClassificationReport full_classify(const GroupSpec& spec);
ClassificationReport full_classify(const std::string& group_name);

// Exact |L|^2 / (|G| - |G(w)|) for |L| = |G(w)| / block_size; nullopt when
// not an integer.
std::optional<BigInt> double_coset_pair_order(const BigInt& order_g, const BigInt& order_point,
                                              const BigInt& block_size);

}  // namespace bbt

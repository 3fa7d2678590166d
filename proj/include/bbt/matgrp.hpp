#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbt/bigint.hpp"
#include "bbt/field.hpp"
#include "bbt/permgroup.hpp"

namespace bbt {

enum class LinearFamily { SL, GL, SigmaL, GammaL, ZSL };

std::string to_string(LinearFamily f);

using Vec = std::vector<FiniteField::Elt>;

// v -> A * phi^frob(v), with A square and row-major, phi(l) = l^p.
struct SemilinearMap {
  std::size_t dim = 0;
  std::vector<FiniteField::Elt> a;
  unsigned frob = 0;

  FiniteField::Elt at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
  FiniteField::Elt& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  bool operator==(const SemilinearMap&) const = default;
};

SemilinearMap identity_map(std::size_t dim);
SemilinearMap compose(const FiniteField& f, const SemilinearMap& x, const SemilinearMap& y);  // x after y
SemilinearMap inverse(const FiniteField& f, const SemilinearMap& x);
Vec apply(const FiniteField& f, const SemilinearMap& x, const Vec& v);
FiniteField::Elt determinant(const FiniteField& f, const SemilinearMap& x);  // of the linear part
// I + lambda E_ij
SemilinearMap transvection(std::size_t dim, std::size_t i, std::size_t j, FiniteField::Elt lambda);
SemilinearMap diagonal(const Vec& d);
SemilinearMap frobenius_map(std::size_t dim, unsigned k);
// Multiplicative order of the linear map modulo scalars.
std::uint64_t projective_order(const FiniteField& f, const SemilinearMap& x);

// Lines of F_q^dim, enumerated lexicographically by normalized coordinates
// (first nonzero coordinate equal to one).
class ProjectiveSpace {
 public:
  ProjectiveSpace(std::shared_ptr<const FiniteField> field, std::size_t dim,
                  std::size_t degree_bound = kDefaultDegreeBound);

  const FiniteField& field() const { return *field_; }
  std::shared_ptr<const FiniteField> field_ptr() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size() / dim_; }
  Vec point(Point i) const;
  // Index of the line spanned by a nonzero vector.
  Point index_of(const Vec& v) const;
  Permutation permutation(const SemilinearMap& x) const;

 private:
  std::shared_ptr<const FiniteField> field_;
  std::size_t dim_;
  std::vector<FiniteField::Elt> points_;
  std::vector<std::int32_t> code_to_point_;
};

// G/Z acting on P_n(q). Generators in order: t_ij(mu^k) for i != j in
// lexicographic order and k < e; then diag(mu, 1, ...) for GL and GammaL;
// then the Frobenius map for SigmaL and GammaL when e > 1.
struct ProjectiveAction {
  LinearFamily family = LinearFamily::SL;
  std::size_t n = 0;  // projective dimension
  std::shared_ptr<const ProjectiveSpace> space;
  std::vector<SemilinearMap> matrices;
  PermGroup group;
  Point alpha0 = 0;  // <v_0>
  Point alpha1 = 0;  // <v_1>

  const FiniteField& field() const { return space->field(); }
  std::size_t dim() const { return n + 1; }
  Permutation permutation(const SemilinearMap& x) const { return space->permutation(x); }
  // 0-based index of the generator t_ij(mu^k).
  std::size_t transvection_index(std::size_t i, std::size_t j, unsigned k) const;
  std::optional<std::size_t> delta_index() const;
  std::optional<std::size_t> frobenius_index() const;
};

BigInt projective_group_order(LinearFamily family, std::size_t n, std::uint64_t p, unsigned e);

ProjectiveAction projective_group(LinearFamily family, std::size_t n,
                                  std::shared_ptr<const FiniteField> field,
                                  std::size_t degree_bound = kDefaultDegreeBound,
                                  std::uint64_t seed = 0);

// Word (1-based signed generator indices) for an element of the group; the
// map may differ from the target by a scalar. Throws ValidationError when the
// map does not lie in the family.
std::vector<int> decompose(const ProjectiveAction& act, const SemilinearMap& x);
Permutation evaluate_word(const PermGroup& g, const std::vector<int>& word);

struct SpecialSubgroups {
  PermGroup W;
  PermGroup M;
  PermGroup Z;  // scalars; trivial after projectivization
  Permutation s;
  SemilinearMap s_matrix;
  PermGroup block_stabilizer;
  PermGroup pair_stabilizer;
};

SpecialSubgroups special_subgroups(const ProjectiveAction& act);

// The swap of v0 and v1 with v2 -> -v2; the plain swap in characteristic 2,
// and [[0,1],[-1,0]] when dim = 2.
SemilinearMap swap_matrix(const FiniteField& f, std::size_t dim);

struct PdetData {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::uint64_t g = 1;  // gcd(n+1, q-1)
  std::uint64_t c = 1;  // det(G_GL) = <mu^c>
  std::uint64_t pdet_order = 1;
};

PdetData pdet_order(LinearFamily family, std::size_t n, const FiniteField& field);
PdetData pdet_order(LinearFamily family, std::size_t n, std::uint64_t q);

// Permutation induced by l -> l^(p^power) on coordinates.
Permutation frobenius(const ProjectiveAction& act, unsigned power);

// 2x2 companion matrix of order q^2-1 (first in a fixed search order).
SemilinearMap singer_matrix(const FiniteField& f);
// Image of diag(1, S) for a Singer cycle S on <v1, v2>; requires n = 2.
PermGroup singer_subgroup(const ProjectiveAction& act);

}  // namespace bbt

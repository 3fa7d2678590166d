#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbt/bigint.hpp"
#include "bbt/classify.hpp"
#include "bbt/matgrp.hpp"
#include "bbt/permgroup.hpp"
#include "bbt/smallgroup.hpp"

namespace bbt {

// A 2-transitive group from the catalog with numbered generators.
//
// Catalog ids: linear names accepted by parse_group with projective dimension
// >= 2 (PSL3(5), PGammaL3(9), PSL5(2), ...), M11, M12, Alt(d), Sym(d),
// PSL2(11)-on-11, Alt(7)-on-15, PGammaL2(8)-on-28.
struct Ambient {
  std::string id;
  PermGroup group;
  Point alpha0 = 0;
  Point alpha1 = 1;
  Permutation s;  // s(alpha0) = alpha1
  PermGroup point_stabilizer;
  // Normal subgroup of G(alpha0) containing its own centralizer (W for the
  // linear groups); used for the socle check when G(alpha0) is large.
  std::optional<PermGroup> radical;
  std::shared_ptr<const ProjectiveAction> projective;  // linear ids only
};

// Cached; safe to call from several threads.
std::shared_ptr<const Ambient> load_ambient(const std::string& id);

// Generator file: "group=<id> degree=<d>" then one line of 0-based images
// per generator.
std::vector<Permutation> read_generator_file(const std::string& path);

struct Certificate {
  std::string group_id;
  std::vector<std::vector<int>> seed_words;
  BigInt claimed_order;
  BigInt claimed_index;
  BigInt claimed_block_size;
  BigInt claimed_pair_order;
  std::string table_ref;

  bool operator==(const Certificate&) const = default;
};

// Throws ValidationError on a malformed header or word line.
Certificate parse_certificate(const std::string& text);
std::string format_certificate(const Certificate& cert);
Certificate load_certificate(const std::string& path);
// BBT_CERT_DIR, else the bundled data/certs.
std::string default_cert_dir();
// Certificates in a directory, sorted by file name.
std::vector<Certificate> load_certificates(const std::string& dir);
std::optional<Certificate> find_certificate(const std::string& dir, const std::string& table_ref);

enum class VerifyStatus { BruteForce, OrderOnly, Failed };
std::string to_string(VerifyStatus s);

struct VerificationResult {
  std::string subject;  // table ref or group id
  VerifyStatus status = VerifyStatus::Failed;
  std::string method;
  std::string failure;  // first violated assertion
  BigInt order;
  BigInt index;
  BigInt block_size;
  BigInt pair_order;
  std::optional<bool> two_bbt;
  std::optional<bool> socle_fixes_block;
  std::vector<std::string> notes;
  double seconds = 0;

  bool ok() const { return status != VerifyStatus::Failed; }
};

inline constexpr std::size_t kBruteForceIndexBound = 100'000;
inline constexpr std::size_t kExhaustiveBound = 1000;

struct VerifyOptions {
  std::size_t max_index = kBruteForceIndexBound;
  // Above max_index, count L ∩ sLs^-1 exactly instead of stopping at the
  // order formula.
  bool deep = false;
  std::uint64_t seed = 0;
};

// Throws ValidationError when a word cannot be evaluated.
VerificationResult verify_certificate(const Certificate& cert, const VerifyOptions& opts = {});

// Runs the certificates on a pool of worker threads; results keep input order.
std::vector<VerificationResult> verify_all(const std::vector<Certificate>& certs, const VerifyOptions& opts = {},
                                           unsigned threads = 0);

// Order-level check of a table row: integrality of |L|^2/(|G|-|G(w)|) and
// agreement with the tabulated pair order.
VerificationResult verify_row_orders(const TableRow& row);

// |L ∩ sLs^-1| for L inside G(alpha0), listing only L(alpha1).
BigInt pair_intersection_order(const Ambient& amb, const PermGroup& l);
bool is_two_bbt_subgroup(const Ambient& amb, const PermGroup& l);

// Every minimal normal subgroup of G(alpha0) lies in L.
bool socle_inside(const Ambient& amb, const PermGroup& l);

struct Extension {
  BigInt order;
  BigInt block_size;
  BigInt pair_order;
  Fingerprint fingerprint;
  std::size_t class_size = 0;  // conjugates inside G(alpha0)
  PermGroup subgroup;
};

// All conjugacy classes of proper subgroups L < G(alpha0) with 2-bbt coset
// action, sorted by block size. Throws ResourceError above the bound.
std::vector<Extension> exhaustive_verify_small(const std::string& group_id, std::size_t bound = kExhaustiveBound);

// Ids with a stored elimination route.
std::vector<std::string> nonexistence_catalog();
VerificationResult verify_nonexistence(const std::string& group_id, std::uint64_t seed = 0);

// Predicate on a candidate subgroup of G(alpha0).
using SubgroupPredicate = std::function<bool(const Ambient&, const PermGroup&)>;
bool transitive_off_alpha0(const Ambient& amb, const PermGroup& l);

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 4000;  // candidate subgroups tried
  unsigned generators = 2;
};

// Random subgroup of G(alpha0) with the given index satisfying the
// predicate, as a certificate (block size = index). Index 1 returns
// G(alpha0). nullopt when the budget runs out.
std::optional<Certificate> search_subgroup(const Ambient& amb, const BigInt& target_index,
                                           const SubgroupPredicate& pred, const SearchOptions& opts = {});

}  // namespace bbt

// Acceptance checks, one line per criterion. Usage: acceptance [N ...]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bbt/arith.hpp"
#include "bbt/blockact.hpp"
#include "bbt/classify.hpp"
#include "bbt/metacyclic.hpp"
#include "bbt/smallgroup.hpp"
#include "bbt/verify.hpp"
#include "support.hpp"

using namespace bbt;
using bbt::testkit::Psl2Extra;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    else detail += "; " + why;
    pass = false;
  }
};

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

const TableRow& row_of(const std::vector<TableRow>& t, int r) { return t.at(r - 1); }

// 1: exhaustive lists for PSL3(2), PSL3(3) equal the Table 2 rows.
Outcome table2_completeness() {
  Outcome o;
  for (const auto* id : {"PSL3(2)", "PSL3(3)"}) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> got, want;
    for (const auto& e : exhaustive_verify_small(id))
      got.emplace_back(e.block_size.convert_to<std::uint64_t>(), e.pair_order.convert_to<std::uint64_t>());
    for (const auto& r : table2())
      if (r.group == id) want.emplace_back(r.block_size, r.pair_order);
    std::sort(want.begin(), want.end());
    if (got != want) o.fail(std::string(id) + " exhaustive list differs from its table rows");
  }
  std::vector<std::uint64_t> b3;
  for (const auto& e : exhaustive_verify_small("PSL3(3)")) b3.push_back(e.block_size.convert_to<std::uint64_t>());
  if (exhaustive_verify_small("PSL3(2)").size() != 1) o.fail("PSL3(2) count != 1");
  if (b3 != std::vector<std::uint64_t>{2, 3, 6, 6}) o.fail("PSL3(3) block sizes != 2,3,6,6");
  return o;
}

Outcome verify_rows(const std::vector<TableRow>& table, int first, int last,
                    const std::vector<std::uint64_t>& pairs) {
  Outcome o;
  std::vector<Certificate> certs;
  for (int r = first; r <= last; ++r) certs.push_back(testkit::bundled_certificate(row_of(table, r).ref()));
  auto results = verify_all(certs);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    const auto& row = row_of(table, first + static_cast<int>(i));
    if (res.status != VerifyStatus::BruteForce)
      o.fail(row.ref() + " " + to_string(res.status) + (res.failure.empty() ? "" : ": " + res.failure));
    if (res.block_size != row.block_size) o.fail(row.ref() + " block " + res.block_size.str());
    if (res.two_bbt != true) o.fail(row.ref() + " not 2-bbt");
    if (res.pair_order != pairs[i]) o.fail(row.ref() + " pair " + res.pair_order.str() + " != " + str(pairs[i]));
  }
  return o;
}

// 2: Table 2 rows 6-16 (q = 4, 5).
Outcome table2_existence() {
  std::vector<std::uint64_t> pairs;
  for (int r = 6; r <= 16; ++r) pairs.push_back(row_of(table2(), r).pair_order);
  return verify_rows(table2(), 6, 16, pairs);
}

// 3: Table 1 rows 1-12 by brute force.
Outcome table1_bruteforce() {
  return verify_rows(table1(), 1, 12, {18, 168, 16, 4, 1, 3, 36, 72, 25, 1, 4, 1});
}

// 4: order-level checks for Table 1 rows 13-17.
Outcome table1_orders() {
  Outcome o;
  const std::vector<std::uint64_t> expected{3, 1, 4, 1, 1};
  for (int r = 13; r <= 17; ++r) {
    const auto& row = row_of(table1(), r);
    auto res = verify_row_orders(row);
    if (!res.ok()) o.fail(row.ref() + ": " + res.failure);
    else if (res.pair_order != expected[r - 13])
      o.fail(row.ref() + " pair " + res.pair_order.str() + " != " + str(expected[r - 13]));
  }
  return o;
}

// 5: M11 on 22 points has two distant-triple orbits of 3960.
Outcome m11_triples() {
  Outcome o;
  auto amb = load_ambient("M11");
  auto l = testkit::certificate_subgroup(testkit::bundled_certificate("Table1:row1"));
  auto act = imprimitive_coset_action(coset_action(amb->group, l), amb->alpha0);
  auto rep = distant_triple_orbits(act);
  if (rep.orbit_count != 2) o.fail("orbit count " + str(rep.orbit_count));
  for (const auto& s : rep.orbit_sizes)
    if (s != 3960) o.fail("orbit size " + s.str());
  return o;
}

// 6: cover enumeration against the counting formulas, full sweep.
Outcome metacyclic_sweep() {
  Outcome o;
  std::uint64_t specs = 0, checks = 0, nonempty = 0;
  for (std::uint64_t N = 1; N <= 120; ++N)
    for (std::uint64_t m = 1; m <= 8; ++m) {
      if (2 * N * m > 5000) continue;
      for (std::uint64_t a = 1; a <= N; ++a) {
        if (a == N && N > 1) break;
        if (std::gcd(a, N) != 1) continue;
        std::uint64_t am = 1 % N;
        for (std::uint64_t i = 0; i < m; ++i) am = am * a % N;
        if (am != 1 % N) continue;
        for (std::uint64_t rp = 0; rp < N; ++rp) {
          if ((a - 1) * rp % N) continue;
          for (std::uint64_t k = 0; k < N; ++k) {
            if ((k + 1) * (k + 1) % N != 1 % N) continue;
            for (std::uint64_t l = 0; l < N; ++l) {
              if (l * (k + 2) % N) continue;
              MetacyclicSpec sp{N, m, std::int64_t(a), std::int64_t(rp), std::int64_t(k), std::int64_t(l)};
              try {
                validate(sp);
              } catch (const std::exception&) {
                continue;
              }
              ++specs;
              const std::uint64_t d = derive_d(sp).d;
              for (std::uint64_t n = 1; n <= 20; ++n) {
                ++checks;
                auto en = enumerate_covers(sp, n);
                const bool ne = en.subgroup_count > 0;
                nonempty += ne;
                const std::string tag = "N=" + str(N) + " m=" + str(m) + " a=" + str(a) + " r'=" + str(rp) +
                                        " k=" + str(k) + " l=" + str(l) + " n=" + str(n);
                if (ne != (d % n == 0)) o.fail(tag + " nonemptiness");
                if (ne) {
                  const std::uint64_t g = std::gcd(a - 1, n);  // gcd(0, n) = n
                  if (en.subgroup_count != phi_k(std::int64_t(k), n)) o.fail(tag + " subgroup count");
                  if (en.class_count != phi_k(std::int64_t(k), g)) o.fail(tag + " class count");
                }
                if (!o.pass && o.detail.size() > 400) return o;
              }
            }
          }
        }
      }
    }
  if (specs == 0 || nonempty == 0) o.fail("empty sweep");
  o.detail = str(specs) + " specs, " + str(checks) + " (spec, n) pairs" + (o.pass ? "" : ": " + o.detail);
  return o;
}

// 7: Hull-Dobell against iterating x -> a x + 1.
Outcome hull_dobell() {
  Outcome o;
  for (std::uint64_t n = 1; n <= 200; ++n)
    for (std::uint64_t a = 1; a <= 200; ++a) {
      std::uint64_t x = 0, len = 0;
      do {
        x = (a * x + 1) % n;
        ++len;
      } while (x != 0 && len <= n);
      if (is_full_period(std::int64_t(a), n) != (len == n)) o.fail("a=" + str(a) + " n=" + str(n));
    }
  return o;
}

struct RankOneConfig {
  const char* name;
  std::uint64_t q;
  Psl2Extra extra;
};

const std::vector<RankOneConfig>& rank_one_configs() {
  static const std::vector<RankOneConfig> c{
      {"PΓL2(8)", 8, Psl2Extra::Frobenius},
      {"PSigmaL2(9)", 9, Psl2Extra::Frobenius},
      {"M10", 9, Psl2Extra::DiagonalTimesFrobenius},
      {"PΓL2(9)", 9, Psl2Extra::DiagonalAndFrobenius},
      {"PΓL2(27)", 27, Psl2Extra::DiagonalAndFrobenius},
      {"PSL2(64):3", 64, Psl2Extra::FrobeniusSquared},
  };
  return c;
}

// index n -> number of subgroups H of the pair stabilizer P with P = sHs H
std::map<std::uint64_t, std::uint64_t> brute_cover_counts(const testkit::Psl2Setting& st,
                                                          std::vector<PermGroup>* witnesses = nullptr) {
  std::map<std::uint64_t, std::uint64_t> count;
  const auto& p = st.pair_stabilizer;
  auto sg = SmallGroup::from_perm_group(p);
  for (const auto& cls : sg.subgroup_classes())
    for (const auto& h : cls) {
      auto hp = sg.to_perm_group(h);
      if (!product_covers(p, st.s, hp)) continue;
      ++count[(p.order() / hp.order()).convert_to<std::uint64_t>()];
      if (witnesses) witnesses->push_back(hp);
    }
  return count;
}

// 8: d_G and h_n against the subgroups of the realized pair stabilizer.
Outcome rank_one_bruteforce() {
  Outcome o;
  for (const auto& c : rank_one_configs()) {
    auto st = testkit::psl2_setting(c.q, c.extra);
    auto spec = parse_group(c.name);
    if (st.group.order() != spec.order) {
      o.fail(std::string(c.name) + " realized order " + st.group.order().str());
      continue;
    }
    auto rep = rank1_report(*spec.lie);
    auto brute = brute_cover_counts(st);
    std::uint64_t d = 1;
    for (auto [n, h] : brute) d = std::lcm(d, n);
    if (rep.d_G != d) o.fail(std::string(c.name) + " d_G " + rep.d_G.str() + " vs " + str(d));
    std::map<std::uint64_t, std::uint64_t> formula;
    for (const auto& [n, h] : rep.h) formula[n.convert_to<std::uint64_t>()] = h.convert_to<std::uint64_t>();
    if (formula != brute) o.fail(std::string(c.name) + " h_n differs");
  }
  return o;
}

// Block-size-n extension of a rank-one group: L = <U, H> for a cover H of index n.
ImprimitiveAction rank_one_extension(const testkit::Psl2Setting& st, std::uint64_t n) {
  std::vector<PermGroup> hs;
  brute_cover_counts(st, &hs);
  for (const auto& h : hs) {
    if (st.pair_stabilizer.order() != h.order() * n) continue;
    auto gens = st.unipotent.generators();
    for (const auto& g : h.generators()) gens.push_back(g);
    auto l = PermGroup::from_generators(st.group.degree(), gens);
    return imprimitive_coset_action(coset_action(st.group, l), st.action.alpha0);
  }
  throw std::runtime_error("no cover of index " + str(n));
}

// 9: PSL2(64):3 with blocks of size 3 has 9 equal triple orbits.
Outcome psl264_triples() {
  Outcome o;
  auto st = testkit::psl2_setting(64, Psl2Extra::FrobeniusSquared);
  auto act = rank_one_extension(st, 3);
  if (act.group().degree() != 195) o.fail("degree " + str(act.group().degree()));
  auto rep = distant_triple_orbits(act);
  if (rep.orbit_count != 9) o.fail("orbit count " + str(rep.orbit_count));
  if (rep.c != 1 || rep.n != 3) o.fail("c=" + str(rep.c) + " n=" + str(rep.n));
  if (!rep.orbit_sizes.empty() &&
      std::any_of(rep.orbit_sizes.begin(), rep.orbit_sizes.end(), [&](const BigInt& s) { return s != rep.orbit_sizes[0]; }))
    o.fail("unequal orbits");
  return o;
}

ImprimitiveAction certificate_action(const std::string& ref) {
  auto cert = testkit::bundled_certificate(ref);
  auto amb = load_ambient(cert.group_id);
  return imprimitive_coset_action(coset_action(amb->group, testkit::certificate_subgroup(cert)), amb->alpha0);
}

// 10: sharpness at the order level and on small coset actions.
Outcome sharpness() {
  Outcome o;
  // PSL3(5) PF with d = 2: Table 2 rows 12, 13
  for (int r : {12, 13}) {
    const auto& row = row_of(table2(), r);
    const BigInt deg = BigInt(row.omega0) * row.block_size;
    const BigInt order = parse_group(row.group).order;
    if (deg * (deg - row.block_size) != order) o.fail(row.ref() + " |distant pairs| != |G|");
    if (deg != 620 || order != 372000) o.fail(row.ref() + " not 620*600 = 372000");
    if (!is_sharply_2bbt(certificate_action(row.ref()))) o.fail(row.ref() + " not sharp");
  }
  for (const auto& row : table1()) {
    if (row.pair_order != 1) continue;
    const BigInt deg = BigInt(row.omega0) * row.block_size;
    if (deg * (deg - row.block_size) != parse_group(row.group).order) o.fail(row.ref() + " |distant pairs| != |G|");
  }
  // PD and rank-one actions are never sharp
  for (const auto* ref : {"Table2:row2", "Table2:row9", "Table2:row10"})
    if (is_sharply_2bbt(certificate_action(ref))) o.fail(std::string(ref) + " PD is sharp");
  for (auto [q, extra, n] : {std::tuple{9ull, Psl2Extra::DiagonalTimesFrobenius, 2ull},
                             std::tuple{64ull, Psl2Extra::FrobeniusSquared, 3ull}}) {
    auto act = rank_one_extension(testkit::psl2_setting(q, extra), n);
    if (!is_k_by_block_transitive(act, 2)) o.fail("rank-one q=" + str(q) + " not 2-bbt");
    if (is_sharply_2bbt(act)) o.fail("rank-one q=" + str(q) + " is sharp");
  }
  for (const auto* g : {"PSL3(3)", "PSL3(4)", "PSL3(5)", "PGL3(5)", "PSL3(7)", "PGL3(7)", "PSL3(8)", "PSL3(9)",
                        "PSL3(11)", "PSL3(13)", "PSL3(16)", "PSL4(3)", "PGL2(9)", "M10", "PSL2(64):3"}) {
    for (const auto& a : full_classify(g).actions) {
      if (a.type != "PD" && a.type != "rank1") continue;
      if (a.sharp || a.pair_order == 1) o.fail(std::string(g) + " " + a.label + " flagged sharp");
    }
  }
  for (const auto& c : rank_one_configs()) {
    auto rep = rank1_report(*parse_group(c.name).lie);
    if (rep.d_G > 1 && rep.sharp) o.fail(std::string(c.name) + " rank-one report sharp");
  }
  return o;
}

// 11: every catalogued nonexistence claim.
Outcome nonexistence() {
  Outcome o;
  auto ids = nonexistence_catalog();
  for (const auto* need : {"Alt(4)", "Alt(7)", "Sym(3)", "Sym(7)", "PSL2(11)-on-11", "Alt(7)-on-15",
                           "PGammaL2(8)-on-28", "M12", "M22", "M22:2", "M23", "M24"})
    if (std::find(ids.begin(), ids.end(), need) == ids.end()) o.fail(std::string(need) + " missing from catalog");
  std::size_t brute = 0;
  for (const auto& id : ids) {
    auto r = verify_nonexistence(id);
    if (!r.ok()) o.fail(id + ": " + r.failure);
    brute += r.status == VerifyStatus::BruteForce;
  }
  if (o.pass) o.detail = str(ids.size()) + " groups, " + str(brute) + " by brute force";
  return o;
}

// 12: the socle of G(w) fixes the base block pointwise.
Outcome socle_invariant() {
  Outcome o;
  std::size_t checked = 0;
  auto results = verify_all(load_certificates(default_cert_dir()));
  for (const auto& r : results) {
    if (r.status != VerifyStatus::BruteForce || r.block_size <= 1) continue;
    ++checked;
    if (r.socle_fixes_block != true) o.fail(r.subject + " socle moves the base block");
  }
  for (const auto* id : {"PSL3(2)", "PSL3(3)", "PSL3(4)", "M11"}) {
    auto amb = load_ambient(id);
    for (const auto& e : exhaustive_verify_small(id)) {
      ++checked;
      if (!socle_inside(*amb, e.subgroup)) o.fail(std::string(id) + " extension b=" + e.block_size.str());
    }
  }
  if (o.pass) o.detail = str(checked) + " actions";
  return o;
}

struct Criterion {
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {"Table 2 completeness for q <= 3", 60, table2_completeness},
      {"Table 2 existence for q in {4,5}", 300, table2_existence},
      {"Table 1 brute force, rows 1-12", 900, table1_bruteforce},
      {"Table 1 order checks, rows 13-17", 1, table1_orders},
      {"M11 distant-triple orbits", 10, m11_triples},
      {"metacyclic enumeration vs counting formulas", 600, metacyclic_sweep},
      {"Hull-Dobell vs LCG iteration", 1, hull_dobell},
      {"rank-one d_G, h_n vs brute force", 300, rank_one_bruteforce},
      {"PSL2(64):3 triple orbits = c n^2", 120, psl264_triples},
      {"sharpness", 600, sharpness},
      {"nonexistence suite", 600, nonexistence},
      {"socle fixes the base block", 1800, socle_invariant},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= int(criteria().size()); ++i) which.push_back(i);

  int failures = 0;
  for (int k : which) {
    if (k < 1 || k > int(criteria().size())) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 2;
    }
    const auto& c = criteria()[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) o.fail("took " + str(secs) + " s, limit " + str(c.limit_seconds) + " s");
    std::printf("criterion %d: %s %s (%.2f s)%s%s\n", k, o.pass ? "PASS" : "FAIL", c.title, secs,
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}

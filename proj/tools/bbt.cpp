// Command-line front end.
//
//   bbt classify --group 'PGL3(5)'
//   bbt classify --family psl2 --q 9 --tg 2 --eg 2 --rg 1
//   bbt verify --table exceptional --rows 1-6
//   bbt verify --nonexistence M12
//   bbt formula phi_k --k 2 --t 12
//   bbt metacyclic --N 63 --m 3 --a 4 --k -2 --l 0 --n 3
//   bbt search --group 'PSL3(5)' --index 5
//
// Exit status: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "bbt/arith.hpp"
#include "bbt/classify.hpp"
#include "bbt/errors.hpp"
#include "bbt/metacyclic.hpp"
#include "bbt/report_json.hpp"
#include "bbt/verify.hpp"

using namespace bbt;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::size_t max_index = kBruteForceIndexBound;
  bool deep = false;
  std::string format = "human";
  std::string certs;
  unsigned threads = 0;

  bool as_json() const { return format == "json"; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "1-6,9" -> {1,...,6,9}
std::vector<int> parse_rows(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    try {
      auto dash = part.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        int a = std::stoi(part.substr(0, dash)), b = std::stoi(part.substr(dash + 1));
        if (b < a) throw UsageError("bad row range " + part);
        for (int i = a; i <= b; ++i) out.push_back(i);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad row list '" + s + "'");
    }
  }
  return out;
}

json result_json(const VerificationResult& r) {
  json j;
  j["subject"] = r.subject;
  j["status"] = to_string(r.status);
  j["method"] = r.method;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["order"] = bigint_to_json(r.order);
  j["index"] = bigint_to_json(r.index);
  j["block_size"] = bigint_to_json(r.block_size);
  j["pair_order"] = bigint_to_json(r.pair_order);
  j["two_bbt"] = r.two_bbt ? json(*r.two_bbt) : json(nullptr);
  j["socle_fixes_block"] = r.socle_fixes_block ? json(*r.socle_fixes_block) : json(nullptr);
  j["notes"] = r.notes;
  j["seconds"] = r.seconds;
  return j;
}

void print_result(const VerificationResult& r) {
  std::cout << r.subject << ": " << to_string(r.status);
  if (!r.method.empty()) std::cout << " [" << r.method << "]";
  if (r.order != 0)
    std::cout << " |L|=" << r.order << " index=" << r.index << " |B|=" << r.block_size << " pair=" << r.pair_order;
  if (r.socle_fixes_block) std::cout << " socle-fixes-block=" << (*r.socle_fixes_block ? "yes" : "no");
  std::printf(" (%.2fs)", r.seconds);
  std::cout << '\n';
  if (!r.failure.empty()) std::cout << "  failure: " << r.failure << '\n';
  for (const auto& n : r.notes) std::cout << "  " << n << '\n';
}

void print_report(const ClassificationReport& r) {
  std::cout << r.group << "\n  case: " << r.case_tag << '\n';
  for (const auto& a : r.actions) {
    std::cout << "  " << a.label << ": |B|=" << a.block_size << " pair=" << a.pair_order
              << " classes=" << (a.classes ? a.classes->str() : "?") << " sharp=" << (a.sharp ? "yes" : "no")
              << " source=" << a.source << " (" << a.citation << ")\n";
  }
  if (!r.citations.empty()) {
    std::cout << "  eliminated by:";
    for (const auto& c : r.citations) std::cout << ' ' << c;
    std::cout << '\n';
  }
  std::cout << "  k>=3: " << r.k3_verdict << '\n';
}

int emit(const Common& c, const json& j, const std::function<void()>& human) {
  if (c.as_json()) std::cout << j.dump(2) << '\n';
  else human();
  return 0;
}

int run_classify(const Common& c, const std::string& group, const std::string& family, std::uint64_t q,
                 unsigned tg, unsigned eg, unsigned rg) {
  ClassificationReport r;
  if (!group.empty()) {
    if (!family.empty()) throw UsageError("give either --group or --family, not both");
    r = full_classify(group);
  } else {
    if (family.empty() || q == 0) throw UsageError("classify needs --group or --family with --q");
    auto fam = parse_family(family);
    if (!fam) throw UsageError("unknown family " + family);
    auto fac = factorize(q);
    if (fac.size() != 1) throw UsageError("q must be a prime power");
    LieParams lp;
    lp.family = *fam;
    lp.p = fac[0].first;
    lp.e = fac[0].second;
    lp.t = expected_t(lp.family, lp.p, lp.e);
    lp.t_G = tg;
    lp.e_G = eg;
    lp.r_G = rg;
    validate(lp);
    r = full_classify(group_from_lie(lp));
  }
  return emit(c, to_json(r), [&] { print_report(r); });
}

int run_verify(const Common& c, const std::string& table, const std::string& rows, const std::string& cert_file,
               const std::string& nonexistence, const std::string& exhaustive) {
  const int modes = !table.empty() + !cert_file.empty() + !nonexistence.empty() + !exhaustive.empty();
  if (modes != 1) throw UsageError("verify needs exactly one of --table, --cert, --nonexistence, --exhaustive");
  VerifyOptions opts;
  opts.max_index = c.max_index;
  opts.deep = c.deep;
  opts.seed = c.seed;
  std::vector<VerificationResult> results;

  if (!exhaustive.empty()) {
    auto ext = exhaustive_verify_small(exhaustive);
    json j = json::array();
    for (const auto& e : ext)
      j.push_back({{"block_size", bigint_to_json(e.block_size)},
                   {"order", bigint_to_json(e.order)},
                   {"pair_order", bigint_to_json(e.pair_order)},
                   {"conjugates", e.class_size},
                   {"fingerprint", e.fingerprint.str()}});
    return emit(c, json{{"group", exhaustive}, {"extensions", j}}, [&] {
      std::cout << exhaustive << ": " << ext.size() << " proper 2-by-block-transitive extension(s)\n";
      for (const auto& e : ext)
        std::cout << "  |B|=" << e.block_size << " |L|=" << e.order << " pair=" << e.pair_order << " "
                  << e.fingerprint.str() << '\n';
    });
  }

  if (!nonexistence.empty()) {
    std::vector<std::string> ids = nonexistence == "all" ? nonexistence_catalog() : std::vector{nonexistence};
    for (const auto& id : ids) results.push_back(verify_nonexistence(id, c.seed));
  } else if (!cert_file.empty()) {
    results.push_back(verify_certificate(load_certificate(cert_file), opts));
  } else {
    int tnum = table == "exceptional" || table == "1" ? 1 : table == "small" || table == "2" ? 2 : 0;
    if (!tnum) throw UsageError("--table must be exceptional or small");
    const auto& rows_all = tnum == 1 ? table1() : table2();
    std::vector<int> wanted = rows.empty() ? std::vector<int>{} : parse_rows(rows);
    if (wanted.empty())
      for (const auto& r : rows_all) wanted.push_back(r.row);
    const std::string dir = c.certs.empty() ? default_cert_dir() : c.certs;
    std::vector<Certificate> certs;
    std::vector<std::size_t> slot;
    results.resize(wanted.size());
    for (std::size_t i = 0; i < wanted.size(); ++i) {
      if (wanted[i] < 1 || wanted[i] > static_cast<int>(rows_all.size()))
        throw UsageError("row " + std::to_string(wanted[i]) + " is not in the table");
      const TableRow& row = rows_all[wanted[i] - 1];
      if (auto cert = find_certificate(dir, row.ref())) {
        certs.push_back(*cert);
        slot.push_back(i);
      } else {
        results[i] = verify_row_orders(row);
        results[i].notes.push_back("no certificate; order arithmetic only");
      }
    }
    auto done = verify_all(certs, opts, c.threads);
    for (std::size_t i = 0; i < done.size(); ++i) {
      const TableRow& row = rows_all[wanted[slot[i]] - 1];
      if (done[i].ok() && done[i].pair_order != row.pair_order) {
        done[i].status = VerifyStatus::Failed;
        done[i].failure = "pair order " + done[i].pair_order.str() + " != tabulated " + std::to_string(row.pair_order);
      }
      results[slot[i]] = std::move(done[i]);
    }
  }

  bool all_ok = true;
  json j = json::array();
  for (const auto& r : results) {
    all_ok = all_ok && r.ok();
    j.push_back(result_json(r));
  }
  emit(c, json{{"results", j}, {"ok", all_ok}}, [&] {
    for (const auto& r : results) print_result(r);
  });
  return all_ok ? 0 : 1;
}

int run_formula(const Common& c, const std::string& name, std::int64_t k, std::uint64_t t, std::int64_t a,
                std::uint64_t n, std::uint64_t q, std::string family) {
  json j{{"formula", name}};
  std::string text;
  if (name == "phi_k") {
    if (t == 0) throw UsageError("phi_k needs --t >= 1");
    j["value"] = phi_k(k, t);
    text = std::to_string(phi_k(k, t));
  } else if (name == "full_period") {
    if (n == 0) throw UsageError("full_period needs --n >= 1");
    j["value"] = is_full_period(a, n);
    text = is_full_period(a, n) ? "true" : "false";
  } else if (name == "alpha") {
    if (n == 0) throw UsageError("alpha needs --n >= 1");
    j["value"] = alpha(a, t, n);
    text = std::to_string(alpha(a, t, n));
  } else if (name == "pd_blocks") {
    if (q < 2 || n < 2) throw UsageError("pd_blocks needs --q and --n >= 2");
    static const std::map<std::string, LinearFamily> fams = {{"sl", LinearFamily::ZSL},
                                                             {"psl", LinearFamily::ZSL},
                                                             {"gl", LinearFamily::GL},
                                                             {"pgl", LinearFamily::GL},
                                                             {"sigmal", LinearFamily::SigmaL},
                                                             {"gammal", LinearFamily::GammaL}};
    for (auto& ch : family) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto it = fams.find(family.empty() ? "sl" : family);
    if (it == fams.end()) throw UsageError("unknown linear family " + family);
    auto bs = pd_block_sizes(n, it->second, q);
    j["value"] = bs;
    for (auto b : bs) text += (text.empty() ? "" : " ") + std::to_string(b);
  } else {
    throw UsageError("unknown formula " + name + " (phi_k, full_period, alpha, pd_blocks)");
  }
  return emit(c, j, [&] { std::cout << text << '\n'; });
}

int run_metacyclic(const Common& c, const MetacyclicSpec& spec, std::uint64_t n) {
  validate(spec);
  if (n == 0) throw UsageError("--n must be positive");
  const CoverPrediction pred = predict_covers(spec, n);
  const CoverEnumeration en = enumerate_covers(spec, n);
  const DivisorData dd = derive_d(spec);
  const bool agree = pred.nonempty == (en.subgroup_count > 0) &&
                     (!pred.nonempty || (pred.subgroup_count == en.subgroup_count && pred.class_count == en.class_count));
  json j{{"d", dd.d},
         {"d0", dd.d0},
         {"k0", dd.k0},
         {"predicted", {{"nonempty", pred.nonempty}, {"subgroups", pred.subgroup_count}, {"classes", pred.class_count}}},
         {"enumerated", {{"subgroups", en.subgroup_count}, {"classes", en.class_count}, {"candidates", en.candidates}}},
         {"agree", agree}};
  emit(c, j, [&] {
    std::cout << "d=" << dd.d << " (d0=" << dd.d0 << ", k0=" << dd.k0 << ")\n"
              << "predicted: " << (pred.nonempty ? "nonempty" : "empty") << ", " << pred.subgroup_count
              << " subgroups, " << pred.class_count << " classes\n"
              << "enumerated: " << en.subgroup_count << " subgroups, " << en.class_count << " classes of "
              << en.candidates << " index-" << n << " subgroups\n"
              << (agree ? "agree" : "DISAGREE") << '\n';
  });
  return agree ? 0 : 1;
}

int run_search(const Common& c, const std::string& group, std::uint64_t index, std::size_t budget, bool any) {
  if (group.empty() || index == 0) throw UsageError("search needs --group and --index");
  auto amb = load_ambient(group);
  SearchOptions so;
  so.seed = c.seed;
  so.budget = budget;
  SubgroupPredicate pred = any ? SubgroupPredicate([](const Ambient&, const PermGroup&) { return true; })
                               : SubgroupPredicate(transitive_off_alpha0);
  auto cert = search_subgroup(*amb, index, pred, so);
  if (cert) cert->table_ref = "search:seed" + std::to_string(c.seed);
  if (!cert) {
    emit(c, json{{"group", group}, {"index", index}, {"found", false}},
         [&] { std::cout << "not found within the search budget\n"; });
    return 1;
  }
  return emit(c,
              json{{"group", group},
                   {"index", index},
                   {"found", true},
                   {"order", bigint_to_json(cert->claimed_order)},
                   {"pair_order", bigint_to_json(cert->claimed_pair_order)},
                   {"certificate", format_certificate(*cert)}},
              [&] { std::cout << format_certificate(*cert); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block-faithful k-by-block-transitive actions"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Common c;
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--max-index", c.max_index, "largest coset index verified by brute force")->capture_default_str();
  app.add_flag("--deep", c.deep, "count L ∩ sLs^-1 exactly above the index bound");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "json"}))->capture_default_str();
  app.add_option("--certs", c.certs, "certificate directory (default: BBT_CERT_DIR or bundled)");
  app.add_option("--threads", c.threads, "worker threads for table verification (0 = all cores)");

  std::string group, family;
  std::uint64_t q = 0;
  unsigned tg = 1, eg = 1, rg = 0;
  auto* cls = app.add_subcommand("classify", "classify the proper 2-by-block-transitive actions of a group");
  cls->add_option("--group", group, "group name, e.g. PSigmaL3(4), M11, Sz(8)");
  cls->add_option("--family", family, "raw form: psl2, psu3, sz, ree or psl3");
  cls->add_option("--q", q, "field order");
  cls->add_option("--tg", tg, "t_G")->capture_default_str();
  cls->add_option("--eg", eg, "e_G")->capture_default_str();
  cls->add_option("--rg", rg, "r_G")->capture_default_str();

  std::string table, rows, cert_file, nonexistence, exhaustive;
  auto* ver = app.add_subcommand("verify", "verify table rows, certificates or nonexistence claims");
  ver->add_option("--table", table, "exceptional (Table 1) or small (Table 2)");
  ver->add_option("--rows", rows, "row list, e.g. 1-6,9");
  ver->add_option("--cert", cert_file, "single certificate file");
  ver->add_option("--nonexistence", nonexistence, "group id from the nonexistence catalog, or all");
  ver->add_option("--exhaustive", exhaustive, "list every extension of a small group");

  std::string fname;
  std::int64_t fk = 0, fa = 1;
  std::uint64_t ft = 0, fn = 0, fq = 0;
  std::string ffam;
  auto* fml = app.add_subcommand("formula", "evaluate a counting formula");
  fml->add_option("name", fname, "phi_k, full_period, alpha or pd_blocks")->required();
  fml->add_option("--k", fk, "k");
  fml->add_option("--t", ft, "t");
  fml->add_option("--a", fa, "a");
  fml->add_option("--n", fn, "n");
  fml->add_option("--q", fq, "q");
  fml->add_option("--family", ffam, "linear family for pd_blocks (sl, gl, sigmal, gammal)");

  MetacyclicSpec ms;
  std::uint64_t mn = 0;
  auto* met = app.add_subcommand("metacyclic", "compare cover enumeration with the counting formulas");
  met->add_option("--N", ms.N, "order of x")->required();
  met->add_option("--m", ms.m, "index of <x>")->required();
  met->add_option("--a", ms.a, "y x y^-1 = x^a")->required();
  met->add_option("--rprime", ms.rprime, "y^m = x^rprime");
  met->add_option("--k", ms.k, "s x s = x^(k+1)");
  met->add_option("--l", ms.l, "s y s = x^l y");
  met->add_option("--n", mn, "subgroup index")->required();

  std::string sgroup;
  std::uint64_t sindex = 0;
  std::size_t budget = 4000;
  bool any = false;
  auto* sea = app.add_subcommand("search", "random search for a subgroup of the point stabilizer");
  sea->add_option("--group", sgroup, "ambient group id")->required();
  sea->add_option("--index", sindex, "index in the point stabilizer")->required();
  sea->add_option("--budget", budget, "candidate subgroups tried")->capture_default_str();
  sea->add_flag("--any", any, "drop the transitivity requirement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cls) return run_classify(c, group, family, q, tg, eg, rg);
    if (*ver) return run_verify(c, table, rows, cert_file, nonexistence, exhaustive);
    if (*fml) return run_formula(c, fname, fk, ft, fa, fn, fq, ffam);
    if (*met) return run_metacyclic(c, ms, mn);
    if (*sea) return run_search(c, sgroup, sindex, budget, any);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

#include "bbt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "bbt/blockact.hpp"
#include "bbt/data.hpp"
#include "bbt/errors.hpp"
#include "bbt/field.hpp"
#include "bbt/rng.hpp"

namespace bbt {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<Permutation> images_of(const CosetSpace& cs, const std::vector<Permutation>& gens) {
  std::vector<Permutation> out;
  for (const auto& g : gens) out.push_back(cs.act(g));
  return out;
}

// First subgroup <a, b> of the requested order, a and b drawn at random.
PermGroup random_subgroup_of_order(const PermGroup& g, const BigInt& order, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    Permutation a = g.random_element(rng);
    Permutation b = g.random_element(rng);
    PermGroup h = PermGroup::from_generators(g.degree(), {a, b});
    if (h.order() == order) return h;
  }
  throw ResourceError("no subgroup of order " + order.str() + " found");
}

// Element mapping a to b, built from a breadth-first Schreier tree.
Permutation element_mapping(const PermGroup& g, Point a, Point b) {
  const std::size_t n = g.degree();
  std::vector<std::optional<Permutation>> rep(n);
  rep[a] = Permutation::identity(n);
  std::vector<Point> queue{a};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Point x = queue[i];
    for (const auto& gen : g.generators()) {
      const Point y = gen(x);
      if (rep[y]) continue;
      rep[y] = gen * *rep[x];
      queue.push_back(y);
    }
  }
  if (!rep[b]) throw ValidationError("points lie in different orbits");
  return *rep[b];
}

Ambient finish(Ambient amb) {
  if (!amb.group.is_transitive()) throw ValidationError(amb.id + " is not transitive");
  if (amb.s.degree() == 0) amb.s = element_mapping(amb.group, amb.alpha0, amb.alpha1);
  amb.point_stabilizer = amb.group.stabilizer(amb.alpha0);
  return amb;
}

std::vector<Permutation> alt_sym_generators(std::size_t d, bool alt) {
  std::vector<Point> cyc(d), t(d);
  for (std::size_t i = 0; i < d; ++i) cyc[i] = static_cast<Point>((i + 1) % d);
  if (!alt) {
    for (std::size_t i = 0; i < d; ++i) t[i] = static_cast<Point>(i);
    std::swap(t[0], t[1]);
    return {Permutation(cyc), Permutation(t)};
  }
  std::vector<Point> three(d);
  for (std::size_t i = 0; i < d; ++i) three[i] = static_cast<Point>(i);
  three[0] = 1, three[1] = 2, three[2] = 0;
  if (d % 2 == 0) {
    // (1 2 ... d-1)
    cyc[0] = 0;
    for (std::size_t i = 1; i < d; ++i) cyc[i] = static_cast<Point>(i + 1 < d ? i + 1 : 1);
  }
  return {Permutation(cyc), Permutation(three)};
}

Ambient build_ambient(const std::string& id) {
  Ambient amb;
  amb.id = id;
  static const std::regex altsym(R"(^(Alt|Sym)\((\d+)\)$)");
  std::smatch m;
  if (id == "M11" || id == "M12") {
    auto gens = read_generator_file(data_path("generators/" + id + ".gens"));
    amb.group = PermGroup::from_generators(gens.front().degree(), gens);
    return finish(std::move(amb));
  }
  if (std::regex_match(id, m, altsym)) {
    const std::size_t d = std::stoul(m[2]);
    const bool alt = m[1] == "Alt";
    if (d < (alt ? 4u : 3u) || d > 12) throw ValidationError("natural action of " + id + " is outside the catalog");
    amb.group = PermGroup::from_generators(d, alt_sym_generators(d, alt));
    return finish(std::move(amb));
  }
  if (id == "PSL2(11)-on-11") {
    auto act = projective_group(LinearFamily::ZSL, 1, FiniteField::get(11, 1));
    PermGroup a5 = random_subgroup_of_order(act.group, 60, 11);
    CosetSpace cs = coset_action(act.group, a5);
    amb.group = PermGroup::from_generators(cs.size(), images_of(cs, act.group.generators()));
    return finish(std::move(amb));
  }
  if (id == "Alt(7)-on-15") {
    PermGroup a7 = PermGroup::from_generators(7, alt_sym_generators(7, true));
    PermGroup l = random_subgroup_of_order(a7, 168, 7);
    CosetSpace cs = coset_action(a7, l);
    amb.group = PermGroup::from_generators(cs.size(), images_of(cs, a7.generators()));
    return finish(std::move(amb));
  }
  if (id == "PGammaL2(8)-on-28" || id == "PΓL2(8)-on-28") {
    auto act = projective_group(LinearFamily::GammaL, 1, FiniteField::get(2, 3));
    // Normalizer of a Singer cycle, a single 9-cycle on the projective line.
    Rng rng(28);
    PermGroup socle = derived_subgroup(act.group);
    Permutation x;
    do x = socle.random_element(rng);
    while (x.order() != 9 || power(x, 3)(0) == 0);
    PermGroup cx = PermGroup::from_generators(act.group.degree(), {x});
    std::vector<Permutation> norm;
    for (const auto& g : act.group.elements())
      if (cx.is_member(conjugate(x, g))) norm.push_back(g);
    PermGroup n = PermGroup::from_generators(act.group.degree(), norm);
    if (n.order() != 54) throw std::logic_error("normalizer of C9 in PGammaL2(8) has wrong order");
    CosetSpace cs = coset_action(act.group, n);
    amb.group = PermGroup::from_generators(cs.size(), images_of(cs, act.group.generators()));
    return finish(std::move(amb));
  }
  const GroupSpec spec = parse_group(id);
  if (spec.kind != SocleKind::Linear || spec.n < 2) throw ValidationError(id + " has no ambient construction");
  auto act = std::make_shared<ProjectiveAction>(projective_group(spec.family, spec.n, FiniteField::get(spec.p, spec.e)));
  if (act->group.order() != spec.order) throw std::logic_error("ambient order mismatch for " + id);
  SpecialSubgroups sp = special_subgroups(*act);
  amb.group = act->group;
  amb.alpha0 = act->alpha0;
  amb.alpha1 = act->alpha1;
  amb.s = sp.s;
  amb.radical = sp.W;
  amb.projective = act;
  return finish(std::move(amb));
}

BigInt parse_big(const std::string& s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ValidationError("malformed certificate: bad " + what + " '" + s + "'");
  return BigInt(s);
}

}  // namespace

std::shared_ptr<const Ambient> load_ambient(const std::string& id) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Ambient>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
  }
  auto amb = std::make_shared<const Ambient>(build_ambient(id));
  std::lock_guard lock(mu);
  return cache.emplace(id, amb).first->second;
}

std::vector<Permutation> read_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open generator file " + path);
  std::string line;
  std::getline(in, line);
  static const std::regex header(R"(^group=(\S+) degree=(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(line, m, header)) throw ValidationError("bad generator file header in " + path);
  const std::size_t degree = std::stoul(m[2]);
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Point> img;
    long long v;
    while (ls >> v) {
      if (v < 0 || static_cast<std::size_t>(v) >= degree) throw ValidationError("image out of range in " + path);
      img.push_back(static_cast<Point>(v));
    }
    if (img.empty()) continue;
    if (img.size() != degree) throw ValidationError("generator of wrong degree in " + path);
    gens.emplace_back(std::move(img));
  }
  if (gens.empty()) throw ValidationError("no generators in " + path);
  return gens;
}

Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("malformed certificate: empty");
  Certificate c;
  std::map<std::string, std::string> kv;
  std::istringstream hs(line);
  std::string tok;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ValidationError("malformed certificate: header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"group", "index", "order", "block", "pair", "ref"})
    if (!kv.count(key)) throw ValidationError(std::string("malformed certificate: missing ") + key);
  c.group_id = kv["group"];
  c.claimed_index = parse_big(kv["index"], "index");
  c.claimed_order = parse_big(kv["order"], "order");
  c.claimed_block_size = parse_big(kv["block"], "block");
  c.claimed_pair_order = parse_big(kv["pair"], "pair");
  c.table_ref = kv["ref"];
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> word;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
        word.push_back(v);
      } catch (const std::logic_error&) {
        throw ValidationError("malformed certificate: bad letter '" + tok + "'");
      }
    }
    if (!word.empty()) c.seed_words.push_back(std::move(word));
  }
  return c;
}

std::string format_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "group=" << c.group_id << " index=" << c.claimed_index.str() << " order=" << c.claimed_order.str()
      << " block=" << c.claimed_block_size.str() << " pair=" << c.claimed_pair_order.str() << " ref=" << c.table_ref
      << '\n';
  for (const auto& w : c.seed_words) {
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? " " : "") << w[i];
    out << '\n';
  }
  return out.str();
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open certificate " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_certificate(ss.str());
}

std::string default_cert_dir() {
  if (const char* env = std::getenv("BBT_CERT_DIR"); env && *env) return env;
  return data_path("certs");
}

std::vector<Certificate> load_certificates(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".cert") paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<Certificate> out;
  for (const auto& p : paths) out.push_back(load_certificate(p));
  return out;
}

std::optional<Certificate> find_certificate(const std::string& dir, const std::string& table_ref) {
  if (!std::filesystem::is_directory(dir)) return std::nullopt;
  for (auto& c : load_certificates(dir))
    if (c.table_ref == table_ref) return c;
  return std::nullopt;
}

std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::BruteForce: return "verified-brute-force";
    case VerifyStatus::OrderOnly: return "verified-order-only";
    case VerifyStatus::Failed: return "failed";
  }
  return "?";
}

BigInt pair_intersection_order(const Ambient& amb, const PermGroup& l) {
  const Permutation sinv = amb.s.inverse();
  BigInt count = 0;
  for (const auto& x : l.stabilizer(amb.alpha1).elements(50'000'000))
    if (l.is_member(sinv * x * amb.s)) ++count;
  return count;
}

bool is_two_bbt_subgroup(const Ambient& amb, const PermGroup& l) {
  const BigInt target = amb.group.order() - amb.point_stabilizer.order();
  const BigInt sq = l.order() * l.order();
  if (sq % target != 0) return false;
  return sq / pair_intersection_order(amb, l) == target;
}

namespace {

// Minimal normal subgroups of a group held as a table: the minimal members
// among normal closures of single conjugacy classes.
std::vector<SmallGroup::Subgroup> minimal_normal_subgroups(const SmallGroup& g) {
  const std::size_t n = g.order();
  std::vector<bool> seen(n, false);
  std::vector<SmallGroup::Subgroup> closures;
  seen[0] = true;
  for (std::size_t x = 1; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<SmallGroup::Elt> cls;
    for (std::size_t y = 0; y < n; ++y) {
      auto c = g.conj(static_cast<SmallGroup::Elt>(x), static_cast<SmallGroup::Elt>(y));
      if (!seen[c]) seen[c] = true, cls.push_back(c);
    }
    auto h = g.closure(cls);
    bool dup = false;
    for (const auto& k : closures) dup = dup || k.elements == h.elements;
    if (!dup) closures.push_back(std::move(h));
  }
  std::vector<SmallGroup::Subgroup> out;
  for (const auto& h : closures) {
    bool minimal = true;
    for (const auto& k : closures)
      if (k.order() < h.order() && k.elements.subset_of(h.elements)) minimal = false;
    if (minimal) out.push_back(h);
  }
  return out;
}

// R normal and abelian in G(alpha0) with C(R) = R, so every minimal normal
// subgroup of G(alpha0) lies in R.
bool radical_is_self_centralizing(const Ambient& amb, const PermGroup& r) {
  const PermGroup& b = amb.point_stabilizer;
  for (const auto& x : r.generators())
    for (const auto& y : r.generators())
      if (x * y != y * x) return false;
  for (const auto& g : b.generators())
    for (const auto& x : r.generators())
      if (!r.is_member(conjugate(x, g))) return false;
  auto elts = r.elements(200'000);
  std::unordered_map<Permutation, Point, PermutationHash> index;
  for (std::size_t i = 0; i < elts.size(); ++i) index.emplace(elts[i], static_cast<Point>(i));
  std::vector<Permutation> action;
  for (const auto& g : b.generators()) {
    std::vector<Point> img(elts.size());
    for (std::size_t i = 0; i < elts.size(); ++i) img[i] = index.at(conjugate(elts[i], g));
    action.emplace_back(std::move(img));
  }
  PermGroup image = PermGroup::from_generators(elts.size(), action);
  return b.order() / image.order() == r.order();
}

}  // namespace

bool socle_inside(const Ambient& amb, const PermGroup& l) {
  const PermGroup& b = amb.point_stabilizer;
  if (b.order() <= SmallGroup::kMaxOrder) {
    SmallGroup sg = SmallGroup::from_perm_group(b);
    for (const auto& h : minimal_normal_subgroups(sg))
      for (auto e : h.elements.members())
        if (!l.is_member(sg.element(static_cast<SmallGroup::Elt>(e)))) return false;
    return true;
  }
  if (amb.radical && radical_is_self_centralizing(amb, *amb.radical)) return amb.radical->is_subgroup_of(l);
  throw UnsupportedError("socle of the point stabilizer of " + amb.id + " is out of reach");
}

VerificationResult verify_certificate(const Certificate& cert, const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  VerificationResult r;
  r.subject = cert.table_ref.empty() ? cert.group_id : cert.table_ref;
  auto fail = [&](const std::string& why) {
    r.status = VerifyStatus::Failed;
    r.failure = why;
    r.seconds = since(t0);
    return r;
  };
  std::shared_ptr<const Ambient> amb;
  try {
    amb = load_ambient(cert.group_id);
  } catch (const ValidationError& e) {
    return fail(std::string("ambient group: ") + e.what());
  }
  std::vector<Permutation> gens;
  for (const auto& w : cert.seed_words) {
    try {
      gens.push_back(evaluate_word(amb->group, w));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("malformed certificate: ") + e.what());
    }
  }
  for (const auto& g : gens)
    if (g(amb->alpha0) != amb->alpha0) return fail("seed word outside the point stabilizer");
  GroupOptions gopts;
  gopts.seed = opts.seed;
  gopts.base_prefix = {amb->alpha0, amb->alpha1};
  PermGroup l = PermGroup::from_generators(amb->group.degree(), gens, gopts);
  r.order = l.order();
  if (r.order != cert.claimed_order) return fail("order " + r.order.str() + " != claimed " + cert.claimed_order.str());
  const BigInt& og = amb->group.order();
  const BigInt& ob = amb->point_stabilizer.order();
  r.index = og / r.order;
  r.block_size = ob / r.order;
  if (r.index != cert.claimed_index) return fail("index " + r.index.str() + " != claimed " + cert.claimed_index.str());
  if (r.block_size != cert.claimed_block_size)
    return fail("block size " + r.block_size.str() + " != claimed " + cert.claimed_block_size.str());

  if (r.index <= opts.max_index) {
    CosetSpace cs = coset_action(amb->group, l, opts.max_index, opts.seed);
    ImprimitiveAction act = imprimitive_coset_action(cs, amb->alpha0);
    r.method = "coset-action";
    if (!act.group().is_transitive()) return fail("coset action not transitive");
    if (act.blocks().block_size() != r.block_size) return fail("block system has the wrong block size");
    if (!act.is_block_faithful()) return fail("action is not block-faithful");
    r.two_bbt = is_k_by_block_transitive(act, 2);
    if (!*r.two_bbt) return fail("not 2-by-block-transitive");
    r.pair_order = distant_pair_stabilizer(act).order();
  } else if (opts.deep) {
    r.method = "double-coset";
    r.pair_order = pair_intersection_order(*amb, l);
    r.two_bbt = r.order * r.order == r.pair_order * (og - ob);
    if (!*r.two_bbt) return fail("L ∩ sLs^-1 has order " + r.pair_order.str() + ", not 2-by-block-transitive");
  } else {
    r.method = "order-formula";
    const BigInt sq = r.order * r.order;
    if (sq % (og - ob) != 0) return fail("|L|^2 not divisible by |G| - |G(w)|");
    r.pair_order = sq / (og - ob);
  }
  if (r.pair_order != cert.claimed_pair_order)
    return fail("pair order " + r.pair_order.str() + " != claimed " + cert.claimed_pair_order.str());
  if (r.method != "order-formula" && r.block_size > 1) {
    try {
      r.socle_fixes_block = socle_inside(*amb, l);
    } catch (const UnsupportedError& e) {
      r.notes.push_back(e.what());
    }
    if (r.socle_fixes_block == false) return fail("socle of the block stabilizer moves the base block");
  }
  r.status = r.method == "order-formula" ? VerifyStatus::OrderOnly : VerifyStatus::BruteForce;
  r.seconds = since(t0);
  return r;
}

std::vector<VerificationResult> verify_all(const std::vector<Certificate>& certs, const VerifyOptions& opts,
                                           unsigned threads) {
  std::vector<VerificationResult> out(certs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, certs.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < certs.size();) {
      try {
        out[i] = verify_certificate(certs[i], opts);
      } catch (const std::exception& e) {
        out[i].subject = certs[i].table_ref;
        out[i].failure = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

VerificationResult verify_row_orders(const TableRow& row) {
  const auto t0 = Clock::now();
  VerificationResult r;
  r.subject = row.ref();
  r.method = "order-formula";
  const GroupSpec g = parse_group(row.group);
  const BigInt ob = g.point_stabilizer_order();
  r.block_size = row.block_size;
  r.index = g.degree * row.block_size;
  if (ob % row.block_size != 0) {
    r.failure = "block size does not divide |G(w)|";
  } else {
    r.order = ob / row.block_size;
    auto pair = double_coset_pair_order(g.order, ob, row.block_size);
    if (!pair) {
      r.failure = "|L|^2 not divisible by |G| - |G(w)|";
    } else {
      r.pair_order = *pair;
      if (*pair != row.pair_order)
        r.failure = "pair order " + pair->str() + " != tabulated " + std::to_string(row.pair_order);
      else
        r.status = VerifyStatus::OrderOnly;
    }
  }
  r.seconds = since(t0);
  return r;
}

std::vector<Extension> exhaustive_verify_small(const std::string& group_id, std::size_t bound) {
  auto amb = load_ambient(group_id);
  const BigInt& ob = amb->point_stabilizer.order();
  if (ob > bound)
    throw ResourceError("|G(w)| = " + ob.str() + " exceeds the exhaustive bound " + std::to_string(bound) +
                        "; verify this group with certificates");
  const BigInt target = amb->group.order() - ob;
  SmallGroup sg = SmallGroup::from_perm_group(amb->point_stabilizer, std::max(bound, SmallGroup::kMaxOrder));
  std::vector<Extension> out;
  for (const auto& cls : sg.subgroup_classes()) {
    const auto& h = cls.front();
    const BigInt order = h.order();
    if (order == ob || (order * order) % target != 0) continue;
    PermGroup l = sg.to_perm_group(h);
    const BigInt pair = pair_intersection_order(*amb, l);
    if (order * order != pair * target) continue;
    out.push_back({order, ob / order, pair, sg.fingerprint(h), cls.size(), l});
  }
  std::sort(out.begin(), out.end(), [](const Extension& a, const Extension& b) {
    if (a.block_size != b.block_size) return a.block_size < b.block_size;
    return a.fingerprint.str() < b.fingerprint.str();
  });
  return out;
}

bool transitive_off_alpha0(const Ambient& amb, const PermGroup& l) {
  return l.orbit(amb.alpha1).size() + 1 == amb.group.degree();
}

std::optional<Certificate> search_subgroup(const Ambient& amb, const BigInt& target_index,
                                           const SubgroupPredicate& pred, const SearchOptions& opts) {
  const BigInt& ob = amb.point_stabilizer.order();
  if (target_index < 1 || ob % target_index != 0) return std::nullopt;
  const BigInt target = ob / target_index;
  const std::size_t n = amb.group.degree();
  const auto& gens = amb.group.generators();
  const int ngen = static_cast<int>(gens.size());

  // Schreier tree for alpha0: word[x] maps alpha0 to x.
  std::vector<std::optional<std::vector<int>>> tree(n);
  tree[amb.alpha0] = std::vector<int>{};
  std::vector<Point> queue{amb.alpha0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Point x = queue[i];
    for (int k = 0; k < ngen; ++k) {
      const Point y = gens[k](x);
      if (tree[y]) continue;
      auto w = *tree[x];
      w.insert(w.begin(), k + 1);
      tree[y] = std::move(w);
      queue.push_back(y);
    }
  }

  Rng rng(opts.seed);
  // Random element of G(alpha0) with its word.
  auto draw = [&]() {
    std::vector<int> w;
    const std::size_t len = 8 + rng.below(24);
    for (std::size_t i = 0; i < len; ++i) {
      const int k = static_cast<int>(rng.below(ngen)) + 1;
      w.push_back(rng.below(2) ? k : -k);
    }
    const Point beta = evaluate_word(amb.group, w)(amb.alpha0);
    std::vector<int> full;
    const auto& t = *tree[beta];
    for (auto it = t.rbegin(); it != t.rend(); ++it) full.push_back(-*it);
    full.insert(full.end(), w.begin(), w.end());
    return full;
  };

  GroupOptions gopts;
  gopts.seed = opts.seed;
  gopts.base_prefix = {amb.alpha0, amb.alpha1};
  for (std::size_t attempt = 0; attempt < opts.budget; ++attempt) {
    std::vector<std::vector<int>> words;
    std::vector<Permutation> elts;
    for (unsigned i = 0; i < opts.generators; ++i) {
      words.push_back(draw());
      elts.push_back(evaluate_word(amb.group, words.back()));
    }
    // Grow until the order reaches the target; extra elements only help at
    // index 1.
    PermGroup l = PermGroup::from_generators(n, elts, gopts);
    while (target_index == 1 && l.order() < target) {
      words.push_back(draw());
      elts.push_back(evaluate_word(amb.group, words.back()));
      l = PermGroup::from_generators(n, elts, gopts);
    }
    if (l.order() != target || !pred(amb, l)) continue;
    Certificate c;
    c.group_id = amb.id;
    c.seed_words = std::move(words);
    c.claimed_order = target;
    c.claimed_index = amb.group.order() / target;
    c.claimed_block_size = target_index;
    c.claimed_pair_order = pair_intersection_order(amb, l);
    return c;
  }
  return std::nullopt;
}

namespace {

struct MaximalSubgroup {
  const char* name;
  std::uint64_t order;
  // How a surviving maximal subgroup is disposed of.
  enum Route { None, NormalInG, Targeted } route = None;
};

struct Elimination {
  const char* id;
  std::uint64_t order;
  std::uint64_t degree;
  std::vector<MaximalSubgroup> maximals;  // of the point stabilizer
};

const std::vector<Elimination>& eliminations() {
  using M = MaximalSubgroup;
  static const std::vector<Elimination> data = {
      {"M12", 95040, 12,
       {{"M10", 720}, {"PSL2(11)", 660, M::Targeted}, {"M9:2", 144}, {"Sym(5)", 120}, {"M8:Sym(3)", 48}}},
      {"M22", 443520, 22,
       {{"2^4:Alt(5)", 960}, {"2^4:Alt(5)'", 960}, {"Alt(6)", 360}, {"PSL2(7)", 168}, {"3^2:Q8", 72}}},
      {"M22:2", 887040, 22,
       {{"PSL3(4)", 20160, M::NormalInG},
        {"2^4:Sym(5)", 1920},
        {"2^4:Sym(5)'", 1920},
        {"Sym(6)", 720},
        {"PGL2(7)", 336},
        {"3^2:Q8.2", 144}}},
      {"M23", 10200960, 23,
       {{"PSL3(4)", 20160},
        {"2^4:Alt(6)", 5760},
        {"Alt(7)", 2520},
        {"Alt(7)'", 2520},
        {"2^4:Sym(5)", 1920},
        {"2^3:PSL3(2)", 1344},
        {"M10", 720},
        {"PSL2(11)", 660}}},
      {"M24", 244823040, 24,
       {{"M22", 443520},
        {"PSL3(4):2", 40320},
        {"2^4:Alt(7)", 40320},
        {"Alt(8)", 20160},
        {"M11", 7920},
        {"2^4:(3xAlt(5)):2", 5760},
        {"23:11", 253}}},
  };
  return data;
}

const char* const kExhaustiveIds[] = {"PSL2(11)-on-11", "Alt(7)-on-15", "PGammaL2(8)-on-28"};

}  // namespace

std::vector<std::string> nonexistence_catalog() {
  std::vector<std::string> out;
  for (std::size_t d = 4; d <= 7; ++d) out.push_back("Alt(" + std::to_string(d) + ")");
  for (std::size_t d = 3; d <= 7; ++d) out.push_back("Sym(" + std::to_string(d) + ")");
  for (auto id : kExhaustiveIds) out.push_back(id);
  for (const auto& e : eliminations()) out.push_back(e.id);
  return out;
}

VerificationResult verify_nonexistence(const std::string& group_id, std::uint64_t seed) {
  const auto t0 = Clock::now();
  VerificationResult r;
  r.subject = group_id;
  auto done = [&](VerifyStatus st) {
    r.status = st;
    r.seconds = since(t0);
    return r;
  };

  const Elimination* elim = nullptr;
  for (const auto& e : eliminations())
    if (group_id == e.id) elim = &e;

  if (!elim) {
    const auto cat = nonexistence_catalog();
    if (std::find(cat.begin(), cat.end(), group_id) == cat.end()) {
      r.failure = group_id + " is not in the nonexistence catalog";
      return done(VerifyStatus::Failed);
    }
    auto amb = load_ambient(group_id);
    const BigInt& og = amb->group.order();
    const BigInt& ob = amb->point_stabilizer.order();
    auto orders = admissible_subgroup_orders(og, ob);
    std::string list;
    for (const auto& d : orders)
      if (d != ob) list += (list.empty() ? "" : ",") + d.str();
    r.notes.push_back("divisibility leaves proper orders {" + list + "}");
    r.method = "exhaustive";
    auto ext = exhaustive_verify_small(group_id, SmallGroup::kMaxOrder);
    if (!ext.empty()) {
      r.failure = "found a 2-by-block-transitive extension with block size " + ext.front().block_size.str();
      return done(VerifyStatus::Failed);
    }
    r.notes.push_back("no proper subgroup of G(w) passes the double-coset test");
    return done(VerifyStatus::BruteForce);
  }

  const BigInt og = elim->order;
  const BigInt ob = og / elim->degree;
  const BigInt target = og - ob;
  r.method = "divisibility";
  {
    // Smallest r with |G| - |G(w)| dividing r^2.
    std::uint64_t rmin = 1;
    for (auto [p, k] : factorize(target.convert_to<std::uint64_t>()))
      for (unsigned i = 0; i < (k + 1) / 2; ++i) rmin *= p;
    r.notes.push_back("|L| must be a multiple of " + std::to_string(rmin));
  }
  bool searched = false;
  for (const auto& m : elim->maximals) {
    std::vector<BigInt> orders;
    for (const auto& d : divisors(BigInt(m.order)))
      if ((d * d) % target == 0) orders.push_back(d);
    if (orders.empty()) continue;
    std::string list;
    for (const auto& d : orders) list += (list.empty() ? "" : ",") + d.str();
    switch (m.route) {
      case MaximalSubgroup::None:
        r.failure = std::string("maximal subgroup ") + m.name + " admits orders {" + list + "} with no elimination";
        return done(VerifyStatus::Failed);
      case MaximalSubgroup::NormalInG:
        r.notes.push_back(std::string(m.name) + " lies in a proper normal subgroup of G, so sLs^-1 L cannot cover G");
        break;
      case MaximalSubgroup::Targeted: {
        if (orders != std::vector<BigInt>{BigInt(m.order)}) {
          r.failure = std::string("targeted test expects only the full subgroup ") + m.name;
          return done(VerifyStatus::Failed);
        }
        auto amb = load_ambient(group_id);
        PermGroup l = random_subgroup_of_order(amb->point_stabilizer, m.order, seed);
        const BigInt pair = pair_intersection_order(*amb, l);
        r.notes.push_back(std::string(m.name) + ": |L ∩ sLs^-1| = " + pair.str() + ", |L|^2/that = " +
                          BigInt(l.order() * l.order() / pair).str() + " vs |G|-|G(w)| = " + target.str());
        if (l.order() * l.order() == pair * target) {
          r.failure = std::string(m.name) + " passes the double-coset test";
          return done(VerifyStatus::Failed);
        }
        searched = true;
        r.method = "divisibility+targeted";
        break;
      }
    }
  }
  return done(searched ? VerifyStatus::BruteForce : VerifyStatus::OrderOnly);
}

}  // namespace bbt

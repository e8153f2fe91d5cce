// Acceptance run: one PASS/FAIL line per criterion, with wall time against its limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "kaleido/kaleido.hpp"
#include "oracles.hpp"

using namespace kaleido;
using fixtures::block;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::set<std::set<std::uint32_t>> as_sets(const std::vector<Block>& bs) { return fixtures::as_sets(bs); }

Outcome table_outcome(std::initializer_list<const char*> ids) {
  std::size_t pass = 0, total = 0;
  std::string failed;
  for (const char* id : ids) {
    auto r = tables::reproduce(id);
    for (const auto& e : r.entries) {
      ++total;
      if (e.pass) ++pass;
      else failed += std::string(failed.empty() ? "" : ", ") + id + ":" + e.label + "->" + e.value;
    }
  }
  Outcome o{pass == total, std::to_string(pass) + "/" + std::to_string(total)};
  if (!failed.empty()) o.detail += "; failing " + failed;
  return o;
}

// Unordered pair counts of the uncolored development, by brute force.
bool develops_to_design(const Kdf& f) {
  auto K = develop(f);
  std::vector<std::vector<std::uint32_t>> blocks;
  for (const auto& pl : K.planes) blocks.push_back(pl.points);
  const auto lambda = f.schema->lambda_underlying();
  std::vector<unsigned> c(std::size_t(K.v) * K.v, 0);
  for (const auto& b : blocks)
    for (auto x : b)
      for (auto y : b)
        if (x < y) ++c[std::size_t(x) * K.v + y];
  for (std::uint32_t x = 0; x < K.v; ++x)
    for (std::uint32_t y = x + 1; y < K.v; ++y)
      if (c[std::size_t(x) * K.v + y] != lambda) return false;
  return true;
}

std::multiset<std::uint32_t> delta_set(const Group& g, const Block& s) {
  auto d = delta(g, s);
  std::multiset<std::uint32_t> out;
  for (auto e : d) out.insert(e.index);
  return out;
}

GroupPtr property_field(std::uint32_t q) {
  if (q == 25) return make_group(GroupDescriptor::extension_field(5, {-3, 0, 1}));
  return make_group(GroupDescriptor::prime_field(q));
}

Outcome c1() {
  auto f = fixtures::fkdf19();
  if (!verify_kdf(f).valid) return {false, "verify_kdf rejects the family"};
  auto want = fixtures::fkdf19_classes();
  for (std::size_t j = 0; j < 7; ++j) {
    auto cls = color_class(f, j);
    if (!verify_df(*f.group, cls, 3, 1).valid) return {false, "F_" + std::to_string(j) + " is not a (19,3,1)-DF"};
    if (as_sets(cls) != want[j]) return {false, "F_" + std::to_string(j) + " differs from the displayed set"};
  }
  return {true, "3 blocks, 7 color classes match"};
}

Outcome c2() {
  auto r = verify_kdf(fixtures::hkdf19());
  return {r.valid, r.valid ? "12 color classes are (19,3,1)-DFs" : "verify_kdf rejects {B,7B,11B}"};
}

Outcome c6() {
  auto f2 = make_group(GroupDescriptor::extension_field(13, {-2, 0, 1}));
  auto t2 = cubic_table(f2);
  auto b2 = parametric_block(*f2, ParametricForm::fano_affine, f2->parse("6+2t"));
  auto f3 = make_group(GroupDescriptor::extension_field(13, {-2, 0, 0, 1}));
  auto t3 = cubic_table(f3);
  auto b3 = parametric_block(*f3, ParametricForm::fano_powers, f3->parse("10+7t+11t^2"));
  if (!b2 || !b3) return {false, "B(x) has repeated entries"};
  bool ok2 = verify_listed_block(t2, fano_schema(), *b2);
  bool ok3 = verify_listed_block(t3, fano_schema(), *b3);
  if (ok2) ok2 = verify_kdf(generate_kdf_from_initial_block(t2, builtin_schema("fano"), *b2, TransversalMode::canonical)).valid;
  if (ok3) ok3 = verify_kdf(generate_kdf_from_initial_block(t3, builtin_schema("fano"), *b3, TransversalMode::canonical)).valid;
  return {ok2 && ok3, std::string("13^2 ") + (ok2 ? "ok" : "FAIL") + ", 13^3 " + (ok3 ? "ok" : "FAIL")};
}

Outcome c8() {
  auto primes = proposition_primes(1000);
  if (primes != std::vector<std::uint32_t>{7, 541, 571, 877, 937}) return {false, "prime list differs"};
  for (auto p : primes) {
    auto t = cubic_table(make_group(GroupDescriptor::prime_field(p)));
    if (!verify_listed_block(t, fano_schema(), block({0, 1, 2, 3, 4, 5, 6})))
      return {false, "A fails at " + std::to_string(p)};
  }
  auto o = table_outcome({"proposition-primes"});
  return {o.pass, "{7,541,571,877,937}; A passes at each"};
}

Outcome c9() {
  ExhaustiveOptions opt;
  opt.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto c = exhaustive_nonexistence(13, builtin_schema("fano"), opt);
  std::ostringstream os;
  os << "solutions=" << c.solutions << " nodes_visited=" << c.nodes_visited << " subtrees=" << c.subtrees
     << " jobs=" << opt.jobs;
  return {c.exhausted && c.solutions == 0, os.str()};
}

Outcome c10() {
  // rows: the lines of B; column j: the color of that line in B_j
  const std::vector<std::set<std::uint32_t>> rows{{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                                                  {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
  auto schema = builtin_schema("fano");
  auto K = replicate(BlockDesign{7, {{0, 1, 2, 3, 4, 5, 6}}}, schema);
  if (K.planes.size() != 7) return {false, "expected 7 planes"};
  for (std::uint32_t j = 0; j < 7; ++j)
    for (std::uint32_t i = 0; i < 7; ++i) {
      const auto& pl = K.planes[j];
      std::set<std::uint32_t> got;
      for (auto pos : schema->lines[pl.line_for_color((i + j) % 7)]) got.insert(pl.points[pos]);
      if (got != rows[i]) return {false, "plane " + std::to_string(j) + " color " + std::to_string((i + j) % 7)};
    }
  auto r = verify_kaleidoscope(K);
  return {r.valid, r.valid ? "7 planes, colors c_{i+j}" : "verify_kaleidoscope rejects the replication"};
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome c11() {
  auto t0 = std::chrono::steady_clock::now();
  auto f19 = make_group(GroupDescriptor::prime_field(19));
  auto t19 = cubic_table(f19);
  auto fk19 = generate_kdf_from_initial_block(t19, builtin_schema("fano"), block({0, 1, 2, 4, 5, 11, 8}),
                                              TransversalMode::sixth_powers);
  auto fano = compose_kdf(fixtures::fkdf7(), fk19, field_dm(f19, 7));
  if (fano.group->order() != 133 || !verify_kdf(fano).valid) return {false, "order-133 product fails verify_kdf"};
  auto K = develop(fano);
  auto r = verify_kaleidoscope(K);
  if (!r.valid || K.v != 133 || r.zero_cells || r.excess_cells) return {false, "FK(133) development fails"};
  double fano_s = since(t0);
  auto t1 = std::chrono::steady_clock::now();

  auto hesse = compose_kdf(fixtures::hkdf19(), fixtures::hkdf19(), field_dm(f19, 9));
  if (hesse.group->order() != 361 || !verify_kdf(hesse).valid) return {false, "order-361 product fails verify_kdf"};
  auto H = develop(hesse);
  auto rh = verify_kaleidoscope(H);
  if (!rh.valid || H.v != 361) return {false, "HK(361) development fails"};
  double hesse_s = since(t1);
  char d[160];
  std::snprintf(d, sizeof d, "FK(133): %zu planes in %.3fs (limit 30s); HK(361): %zu planes in %.3fs (limit 120s)",
                K.planes.size(), fano_s, H.planes.size(), hesse_s);
  return {fano_s <= 30 && hesse_s <= 120, d};
}

Outcome c12() {
  std::size_t checks = 0;
  for (std::uint32_t q : {7u, 13u, 19u, 25u, 31u, 37u}) {
    auto f = property_field(q);
    auto t = cubic_table(f);
    oracle::Field of = f->degree() == 1 ? oracle::prime(q) : oracle::Field{5, {2, 0, 1}};
    auto poly = [&](Element e) {
      auto c = f->coefficients(e);
      return oracle::Poly(c.begin(), c.end());
    };
    // shortcut filters against the full predicate and the cubic-character oracle
    for (auto form : {ParametricForm::fano_affine, ParametricForm::fano_powers, ParametricForm::hesse_powers}) {
      const auto& s = *form_schema(form);
      for (std::uint32_t x = 0; x < q; ++x) {
        auto b = parametric_block(*f, form, Element{x});
        if (!b) continue;
        bool full = verify_listed_block(t, s, *b);
        bool orc = true;
        for (const auto& l : s.lines) orc = orc && of.evenly(poly((*b)[l[0]]), poly((*b)[l[1]]), poly((*b)[l[2]]));
        if (shortcut_passes(t, form, Element{x}) != full || full != orc)
          return {false, "shortcut disagreement at q=" + std::to_string(q) + " x=" + std::to_string(x)};
        ++checks;
      }
    }
    // translation and scaling of Delta over every triple
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = a + 1; b < q; ++b)
        for (std::uint32_t c = b + 1; c < q; ++c) {
          Block s{Element{a}, Element{b}, Element{c}};
          auto d = delta_set(*f, s);
          for (std::uint32_t g = 0; g < q; ++g) {
            Block sg{f->add(s[0], Element{g}), f->add(s[1], Element{g}), f->add(s[2], Element{g})};
            if (delta_set(*f, sg) != d) return {false, "translation changes Delta at q=" + std::to_string(q)};
            if (g == 0) continue;
            Block su{f->mul(s[0], Element{g}), f->mul(s[1], Element{g}), f->mul(s[2], Element{g})};
            std::multiset<std::uint32_t> du;
            for (auto e : d) du.insert(f->mul(Element{e}, Element{g}).index);
            if (delta_set(*f, su) != du) return {false, "scaling does not act on Delta at q=" + std::to_string(q)};
          }
          ++checks;
        }
    // uncolored developments are 2-(q,k,lambda) designs
    for (const char* name : {"fano", "hesse"}) {
      auto schema = builtin_schema(name);
      if (schema->k > q) continue;
      auto r = find_initial_block(t, *schema);
      if (!r) continue;
      auto kdf = generate_kdf_from_initial_block(t, schema, r->block, TransversalMode::canonical);
      if (!develops_to_design(kdf))
        return {false, std::string(name) + " development at q=" + std::to_string(q) + " is not a design"};
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " checks"};
}

Outcome c13() {
  std::string d;
  for (std::uint32_t p : {109u, 127u, 151u}) {
    auto f = make_group(GroupDescriptor::prime_field(p));
    auto t = cubic_table(f);
    auto r = find_initial_block(t, hesse_schema());
    if (!r || !verify_listed_block(t, hesse_schema(), r->block)) return {false, "no block at " + std::to_string(p)};
    d += (d.empty() ? "" : ", ") + std::to_string(p) + " via " + r->method;
  }
  return {true, d};
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "FKDF(19) over Z_19 and its seven color classes", 1, c1},
      {2, "HKDF(19) {B,7B,11B}", 1, c2},
      {3, "Fano prime table, affine form (35 entries)", 5, [] { return table_outcome({"fano-2a"}); }},
      {4, "Fano alternative blocks (6 entries)", 1, [] { return table_outcome({"fano-2a-alt"}); }},
      {5, "Fano prime squares, powers form (27 + 27 entries)", 30, [] { return table_outcome({"fano-2c", "fano-2d"}); }},
      {6, "13^2 affine and 13^3 powers blocks", 10, c6},
      {7, "Hesse tables: primes, exceptional tuples, prime squares", 30,
       [] { return table_outcome({"hesse-primes", "hesse-alt", "hesse-squares"}); }},
      {8, "Proposition primes below 1000", 5, c8},
      {9, "No FK(13) over Z_13 (exhaustive)", 3600, c9},
      {10, "Replicated trivial 2-(7,7,1) design is the FK(7) color table", 1, c10},
      {11, "Composition chain: FK(133) and HK(361)", 30 + 120, c11},
      {12, "Property suites for q in {7,13,19,25,31,37}", 60, c12},
      {13, "Hesse initial blocks for p in {109,127,151}", 600 * 3, c13},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= c.limit_s;
    bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / %.0fs", secs, c.limit_s);
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << "  (" << timing << ")  " << o.detail
              << (in_time ? "" : "  [over time limit]") << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}

#pragma once

// Initial-block searches over finite fields of order q = 1 (mod 6).
//
// A triple is "evenly distributed" when its three differences fall in the
// three distinct cyclotomic classes of index 3. An ordered block all of whose
// schema lines are evenly distributed is an initial block: scaling it by a
// transversal of {1,-1} in the cubes yields a kaleidoscopic difference family.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "kaleido/algebra.hpp"
#include "kaleido/designs.hpp"
#include "kaleido/error.hpp"
#include "kaleido/schema.hpp"

namespace kaleido {

/// Lower bounds Q(t) beyond which t cyclotomic constraints are always
/// simultaneously satisfiable.
struct QTable {
  static constexpr std::array<std::uint64_t, 8> values{1, 36, 939, 19350, 326661, 4790260, 64391800, 808659000};

  static std::optional<std::uint64_t> bound(std::size_t t) {
    if (t < 1 || t > values.size()) return std::nullopt;
    return values[t - 1];
  }
};

inline CyclotomicTable cubic_table(GroupPtr field) {
  if (!field->is_field() || field->order() % 6 != 1)
    throw Error(Errc::BadCongruence, "field order " + std::to_string(field->order()) + " is not 1 mod 6");
  return CyclotomicTable(std::move(field), 3);
}

namespace detail {

inline void require_cubic(const CyclotomicTable& t) {
  if (t.e() != 3 || t.field().order() % 6 != 1)
    throw Error(Errc::BadCongruence, "need index-3 classes over a field of order 1 mod 6");
}

inline bool evenly(const CyclotomicTable& t, Element a, Element b, Element c) {
  const auto& f = t.field();
  auto x = t.class_of(f.sub(a, b));
  auto y = t.class_of(f.sub(a, c));
  auto z = t.class_of(f.sub(b, c));
  if (x == CyclotomicTable::kZero || y == CyclotomicTable::kZero || z == CyclotomicTable::kZero) return false;
  return x != y && y != z && x != z;
}

inline bool all_distinct(std::span<const Element> pts) {
  std::vector<Element> s(pts.begin(), pts.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

/// Smallest i in [0, n) with pred(i), scanning chunks on `jobs` threads.
/// The answer does not depend on scheduling.
inline std::optional<std::uint64_t> parallel_first(std::uint64_t n, unsigned jobs, std::uint64_t chunk,
                                                   const std::function<bool(std::uint64_t)>& pred) {
  if (chunk == 0) chunk = 1;
  const std::uint64_t chunks = (n + chunk - 1) / chunk;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best_chunk{std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::uint64_t> found(chunks, std::numeric_limits<std::uint64_t>::max());
  auto worker = [&] {
    for (;;) {
      auto c = next.fetch_add(1);
      if (c >= chunks || c > best_chunk.load()) return;
      const auto hi = std::min(n, (c + 1) * chunk);
      for (auto i = c * chunk; i < hi; ++i)
        if (pred(i)) {
          found[c] = i;
          auto cur = best_chunk.load();
          while (c < cur && !best_chunk.compare_exchange_weak(cur, c)) {
          }
          break;
        }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto v : found)
    if (v != std::numeric_limits<std::uint64_t>::max()) return v;
  return std::nullopt;
}

}  // namespace detail

inline bool evenly_distributed(std::span<const Element> line, const CyclotomicTable& table) {
  detail::require_cubic(table);
  if (line.size() != 3) throw Error(Errc::MalformedInput, "a line must have three points");
  return detail::evenly(table, line[0], line[1], line[2]);
}

/// Index of the first schema line that is not evenly distributed.
inline std::optional<std::size_t> first_failing_line(const CyclotomicTable& table, const Schema& s,
                                                     std::span<const Element> block) {
  detail::require_cubic(table);
  if (s.h != 3) throw Error(Errc::SchemaMismatch, "initial blocks need a schema with 3-point lines");
  if (block.size() != s.k) throw Error(Errc::MalformedInput, "block size does not match schema");
  for (std::size_t i = 0; i < s.b(); ++i) {
    const auto& l = s.lines[i];
    if (!detail::evenly(table, block[l[0]], block[l[1]], block[l[2]])) return i;
  }
  return std::nullopt;
}

/// The full initial-block predicate: distinct points and every line evenly distributed.
inline bool verify_listed_block(const CyclotomicTable& table, const Schema& s, std::span<const Element> block) {
  return detail::all_distinct(block) && !first_failing_line(table, s, block).has_value();
}

/// {s*B : s in transversal}.
inline Kdf generate_kdf_from_initial_block(const CyclotomicTable& table, SchemaPtr schema, const Block& initial,
                                           TransversalMode mode = TransversalMode::canonical) {
  if (!detail::all_distinct(initial)) throw Error(Errc::DuplicateElements, "initial block repeats a point");
  if (auto bad = first_failing_line(table, *schema, initial))
    throw Error(Errc::NotAnInitialBlock, "line " + std::to_string(*bad) + " is not evenly distributed");
  const auto& f = table.field();
  auto S = transversal(f, mode);
  Kdf out{table.field_ptr(), schema, {}, nlohmann::json::object()};
  for (auto s : S) {
    Block b;
    for (auto e : initial) b.push_back(f.mul(s, e));
    out.blocks.push_back(std::move(b));
  }
  auto fmt = [&](const std::vector<Element>& v) {
    std::vector<std::string> r;
    for (auto e : v) r.push_back(f.format(e));
    return r;
  };
  out.provenance["initial_block"] = fmt(initial);
  out.provenance["transversal"] = fmt(S);
  out.provenance["transversal_mode"] = std::string(to_string(mode));
  out.provenance["primitive"] = f.format(f.primitive());
  return out;
}

// ---------------------------------------------------------------------------
// Constrained cyclotomic search

/// A class index that may refer to the class of 2 or of 3: (coef*base + offset) mod 3.
struct ClassExpr {
  enum class Base { none, two, three };
  Base base = Base::none;
  int coef = 0;
  int offset = 0;

  static ClassExpr fixed(int c) { return {Base::none, 0, c}; }
  static ClassExpr of_two(int coef, int offset = 0) { return {Base::two, coef, offset}; }
  static ClassExpr of_three(int coef, int offset = 0) { return {Base::three, coef, offset}; }

  unsigned resolve(const CyclotomicTable& t) const {
    int b = 0;
    if (base == Base::two) b = static_cast<int>(t.index(t.field().from_int(2)));
    if (base == Base::three) b = static_cast<int>(t.index(t.field().from_int(3)));
    return static_cast<unsigned>(((coef * b + offset) % 3 + 3) % 3);
  }
};

/// x - shift must lie in class `cls`.
struct CyclotomicConstraint {
  Element shift;
  ClassExpr cls;
};

struct SearchBudget {
  std::optional<std::uint64_t> max_candidates;
  unsigned jobs = 1;
  std::uint64_t chunk = 4096;
};

struct ConstrainedResult {
  std::optional<Element> element;
  std::uint64_t candidates = 0;
  bool exhausted = false;            // every field element was examined
  bool contradicts_bound = false;    // empty although q > Q(t)
};

inline ConstrainedResult find_constrained_element(const CyclotomicTable& table,
                                                  std::span<const CyclotomicConstraint> constraints,
                                                  const SearchBudget& budget = {}) {
  detail::require_cubic(table);
  const auto& f = table.field();
  std::vector<std::pair<Element, std::uint8_t>> resolved;
  for (const auto& c : constraints) {
    for (const auto& r : resolved)
      if (r.first == c.shift) throw Error(Errc::MalformedInput, "constraint shifts must be distinct");
    resolved.emplace_back(c.shift, static_cast<std::uint8_t>(c.cls.resolve(table)));
  }
  std::uint64_t limit = f.order();
  if (budget.max_candidates) limit = std::min<std::uint64_t>(limit, *budget.max_candidates);
  auto ok = [&](std::uint64_t i) {
    for (const auto& [shift, cls] : resolved)
      if (table.class_of(f.sub(Element{static_cast<std::uint32_t>(i)}, shift)) != cls) return false;
    return true;
  };
  ConstrainedResult r;
  auto hit = detail::parallel_first(limit, budget.jobs, budget.chunk, ok);
  if (hit) {
    r.element = Element{static_cast<std::uint32_t>(*hit)};
    r.candidates = *hit + 1;
  } else {
    r.candidates = limit;
    r.exhausted = limit == f.order();
    auto q = QTable::bound(resolved.size());
    r.contradicts_bound = r.exhausted && q && f.order() > *q;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Chains of constrained choices (large-q constructions)

namespace detail {

using ChainStep = std::function<std::vector<CyclotomicConstraint>(const std::vector<Element>& chosen)>;

// Depth-first over the chain: each level picks candidates in canonical order
// satisfying its constraints; the leaf block must pass the full predicate.
inline std::optional<Block> run_chain(const CyclotomicTable& table, const Schema& schema,
                                      const std::vector<ChainStep>& steps,
                                      const std::function<Block(const std::vector<Element>&)>& assemble,
                                      std::uint64_t node_budget) {
  const auto& f = table.field();
  std::vector<Element> chosen;
  std::uint64_t nodes = 0;
  std::function<std::optional<Block>()> rec = [&]() -> std::optional<Block> {
    if (chosen.size() == steps.size()) {
      auto b = assemble(chosen);
      if (verify_listed_block(table, schema, b)) return b;
      return std::nullopt;
    }
    auto cons = steps[chosen.size()](chosen);
    std::vector<std::pair<Element, std::uint8_t>> resolved;
    for (const auto& c : cons) resolved.emplace_back(c.shift, static_cast<std::uint8_t>(c.cls.resolve(table)));
    for (std::uint32_t i = 0; i < f.order(); ++i) {
      if (++nodes > node_budget) return std::nullopt;
      bool ok = true;
      for (const auto& [shift, cls] : resolved)
        if (table.class_of(f.sub(Element{i}, shift)) != cls) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(Element{i});
      if (auto r = rec()) return r;
      chosen.pop_back();
    }
    return std::nullopt;
  };
  return rec();
}

}  // namespace detail

/// Initial block built from successive constrained choices. Fano:
/// B = (0, 1, -1, x, -x, y, -y) with the class pattern chosen by the class of 2.
/// Hesse: (b_inf, b_0, b_1, b_2) = (0, 1, 2, 3) then b_3..b_7 one at a time.
/// Returns nothing when a constrained set runs empty (small q only).
inline std::optional<Block> asymptotic_initial_block(const CyclotomicTable& table, const Schema& schema,
                                                     std::uint64_t node_budget = 50'000'000) {
  detail::require_cubic(table);
  const auto& f = table.field();
  auto el = [&](std::int64_t n) { return f.from_int(n); };
  auto C = [](int c) { return ClassExpr::fixed(c); };
  using Steps = std::vector<detail::ChainStep>;

  if (schema.name == "fano" && same_schema(schema, fano_schema())) {
    const unsigned i = table.index(el(2));
    Steps steps;
    if (i == 0) {
      steps.push_back([&](const auto&) {
        return std::vector<CyclotomicConstraint>{{el(0), C(1)}, {el(-1), C(1)}, {el(1), C(2)}};
      });
      steps.push_back([&](const std::vector<Element>& ch) {
        auto x = ch[0];
        return std::vector<CyclotomicConstraint>{
            {el(-1), C(0)}, {f.neg(x), C(0)}, {el(1), C(1)}, {el(0), C(2)}, {x, C(2)}};
      });
    } else {
      const int ii = static_cast<int>(i), i2 = static_cast<int>((2 * i) % 3);
      steps.push_back([&, ii, i2](const auto&) {
        return std::vector<CyclotomicConstraint>{{el(-1), C(0)}, {el(0), C(ii)}, {el(1), C(i2)}};
      });
      steps.push_back([&, ii, i2](const std::vector<Element>& ch) {
        auto x = ch[0];
        return std::vector<CyclotomicConstraint>{
            {f.neg(x), C(0)}, {el(1), C(ii)}, {x, C(ii)}, {el(0), C(i2)}, {el(-1), C(i2)}};
      });
    }
    auto assemble = [&](const std::vector<Element>& ch) {
      return Block{el(0), el(1), el(-1), ch[0], f.neg(ch[0]), ch[1], f.neg(ch[1])};
    };
    return detail::run_chain(table, schema, steps, assemble, node_budget);
  }

  if (schema.name == "hesse" && same_schema(schema, hesse_schema())) {
    Steps steps;
    // b3
    steps.push_back([&](const auto&) {
      return std::vector<CyclotomicConstraint>{{el(0), C(0)}, {el(3), C(0)}, {el(1), C(1)}, {el(2), C(2)}};
    });
    // b4
    steps.push_back([&](const std::vector<Element>& ch) {
      return std::vector<CyclotomicConstraint>{
          {ch[0], C(0)}, {el(0), C(1)}, {el(2), C(1)}, {el(1), C(2)}, {el(3), C(2)}};
    });
    // b5
    steps.push_back([&](const std::vector<Element>& ch) {
      return std::vector<CyclotomicConstraint>{{el(0), ClassExpr::of_two(1, 1)}, {el(2), ClassExpr::of_two(1, 2)},
                                               {ch[1], C(0)},  {el(1), C(1)},
                                               {el(3), C(1)},  {ch[0], C(2)}};
    });
    // b6
    steps.push_back([&](const std::vector<Element>& ch) {
      return std::vector<CyclotomicConstraint>{
          {el(0), ClassExpr::of_three(1, 1)}, {el(3), ClassExpr::of_three(1, 2)}, {ch[2], C(0)}, {el(2), C(1)},
          {ch[0], C(1)},                      {el(1), C(2)},                      {ch[1], C(2)}};
    });
    // b7
    steps.push_back([&](const std::vector<Element>& ch) {
      return std::vector<CyclotomicConstraint>{{ch[3], C(0)},
                                               {el(0), C(1)},
                                               {ch[1], C(1)},
                                               {el(2), C(2)},
                                               {ch[0], C(2)},
                                               {ch[2], C(2)},
                                               {el(1), ClassExpr::of_two(1, 1)},
                                               {el(3), ClassExpr::of_two(1, 2)}};
    });
    auto assemble = [&](const std::vector<Element>& ch) {
      Block b{el(0), el(1), el(2), el(3)};
      b.insert(b.end(), ch.begin(), ch.end());
      return b;
    };
    return detail::run_chain(table, schema, steps, assemble, node_budget);
  }
  throw Error(Errc::SchemaMismatch, "asymptotic construction exists for the fano and hesse schemas only");
}

// ---------------------------------------------------------------------------
// One-parameter families B(x)

enum class ParametricForm { fano_affine, fano_powers, hesse_powers };

inline std::string_view to_string(ParametricForm f) {
  switch (f) {
    case ParametricForm::fano_affine: return "fano-affine";
    case ParametricForm::fano_powers: return "fano-powers";
    case ParametricForm::hesse_powers: return "hesse-powers";
  }
  return "";
}

inline ParametricForm parse_form(std::string_view s) {
  if (s == "fano-affine") return ParametricForm::fano_affine;
  if (s == "fano-powers") return ParametricForm::fano_powers;
  if (s == "hesse-powers") return ParametricForm::hesse_powers;
  throw Error(Errc::MalformedInput, "unknown form '" + std::string(s) + "'");
}

inline SchemaPtr form_schema(ParametricForm f) {
  return builtin_schema(f == ParametricForm::hesse_powers ? "hesse" : "fano");
}

/// fano-affine: (0,1,2,x,x+1,x^2+x,2x); fano-powers: (1,x,...,x^6);
/// hesse-powers: (0,1,x,...,x^7). Nothing if the entries are not distinct.
inline std::optional<Block> parametric_block(const Group& f, ParametricForm form, Element x) {
  Block b;
  switch (form) {
    case ParametricForm::fano_affine: {
      auto one = f.one(), two = f.from_int(2);
      b = {f.zero(), one, two, x, f.add(x, one), f.add(f.mul(x, x), x), f.mul(two, x)};
      break;
    }
    case ParametricForm::fano_powers:
      for (int i = 0; i < 7; ++i) b.push_back(f.pow(x, i));
      break;
    case ParametricForm::hesse_powers:
      b.push_back(f.zero());
      for (int i = 0; i < 8; ++i) b.push_back(f.pow(x, i));
      break;
  }
  if (!detail::all_distinct(b)) return std::nullopt;
  return b;
}

/// The reduced set of lines whose evenness implies that of every line of B(x).
inline std::vector<std::array<Element, 3>> shortcut_lines(const Group& f, ParametricForm form, Element x) {
  auto p = [&](int i) { return f.pow(x, i); };
  switch (form) {
    case ParametricForm::fano_affine: {
      auto one = f.one(), two = f.from_int(2), x2x = f.add(f.mul(x, x), x);
      return {{f.zero(), one, x}, {two, x, x2x}, {x2x, f.mul(two, x), one}};
    }
    case ParametricForm::fano_powers:
      return {{p(0), p(1), p(3)}, {p(4), p(5), p(0)}, {p(6), p(0), p(2)}};
    case ParametricForm::hesse_powers:
      return {{p(0), p(1), p(3)}, {p(5), p(6), p(0)}, {p(7), p(0), p(2)}, {f.zero(), p(0), p(4)}};
  }
  return {};
}

inline bool shortcut_passes(const CyclotomicTable& table, ParametricForm form, Element x) {
  for (const auto& l : shortcut_lines(table.field(), form, x))
    if (!detail::evenly(table, l[0], l[1], l[2])) return false;
  return true;
}

struct ParametricResult {
  Element x;
  Block block;
};

/// Smallest x (canonical order) for which B(x) is an initial block.
inline std::optional<ParametricResult> parametric_search(const CyclotomicTable& table, ParametricForm form,
                                                         const SearchBudget& budget = {}) {
  detail::require_cubic(table);
  const auto& f = table.field();
  auto schema = form_schema(form);
  std::uint64_t limit = f.order();
  if (budget.max_candidates) limit = std::min<std::uint64_t>(limit, *budget.max_candidates);
  auto pred = [&](std::uint64_t i) {
    Element x{static_cast<std::uint32_t>(i)};
    auto b = parametric_block(f, form, x);
    if (!b || !shortcut_passes(table, form, x)) return false;
    return verify_listed_block(table, *schema, *b);
  };
  auto hit = detail::parallel_first(limit, budget.jobs, budget.chunk, pred);
  if (!hit) return std::nullopt;
  Element x{static_cast<std::uint32_t>(*hit)};
  return ParametricResult{x, *parametric_block(f, form, x)};
}

// ---------------------------------------------------------------------------
// Prefix-anchored backtracking

/// Fills the positions after `prefix` in order, choosing the canonically
/// smallest values that keep every completed line evenly distributed.
inline std::optional<Block> prefix_initial_block(const CyclotomicTable& table, const Schema& schema,
                                                 const Block& prefix, std::uint64_t node_budget = 200'000'000) {
  detail::require_cubic(table);
  const auto& f = table.field();
  if (schema.h != 3) throw Error(Errc::SchemaMismatch, "initial blocks need a schema with 3-point lines");
  if (prefix.size() > schema.k) throw Error(Errc::MalformedInput, "prefix longer than the block");
  // lines that become complete when position p is filled
  std::vector<std::vector<std::size_t>> closing(schema.k);
  for (std::size_t c = 0; c < schema.b(); ++c) {
    auto last = *std::max_element(schema.lines[c].begin(), schema.lines[c].end());
    closing[last].push_back(c);
  }
  Block b(schema.k);
  std::copy(prefix.begin(), prefix.end(), b.begin());
  for (std::size_t p = 0; p < prefix.size(); ++p)
    for (auto c : closing[p]) {
      const auto& l = schema.lines[c];
      if (!detail::evenly(table, b[l[0]], b[l[1]], b[l[2]])) return std::nullopt;
    }
  if (!detail::all_distinct(prefix)) return std::nullopt;
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
    if (pos == schema.k) return true;
    for (std::uint32_t i = 0; i < f.order(); ++i) {
      if (++nodes > node_budget) return false;
      Element x{i};
      if (std::find(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(pos), x) != b.begin() + static_cast<std::ptrdiff_t>(pos))
        continue;
      b[pos] = x;
      bool ok = true;
      for (auto c : closing[pos]) {
        const auto& l = schema.lines[c];
        if (!detail::evenly(table, b[l[0]], b[l[1]], b[l[2]])) {
          ok = false;
          break;
        }
      }
      if (ok && rec(pos + 1)) return true;
    }
    return false;
  };
  if (!rec(prefix.size())) return std::nullopt;
  return b;
}

struct InitialBlockResult {
  Block block;
  std::string method;
  std::optional<Element> x;
};

/// Tries the one-parameter form first, then the constrained chain, then
/// prefix-anchored backtracking from the chain's starting prefix.
inline std::optional<InitialBlockResult> find_initial_block(const CyclotomicTable& table, const Schema& schema,
                                                            const SearchBudget& budget = {}) {
  const bool hesse = same_schema(schema, hesse_schema());
  const bool fano = same_schema(schema, fano_schema());
  if (!hesse && !fano) throw Error(Errc::SchemaMismatch, "only the fano and hesse schemas have search strategies");
  const auto& f = table.field();
  if (fano) {
    if (auto r = parametric_search(table, ParametricForm::fano_affine, budget))
      return InitialBlockResult{r->block, "fano-affine", r->x};
    if (auto r = parametric_search(table, ParametricForm::fano_powers, budget))
      return InitialBlockResult{r->block, "fano-powers", r->x};
  } else {
    if (auto r = parametric_search(table, ParametricForm::hesse_powers, budget))
      return InitialBlockResult{r->block, "hesse-powers", r->x};
  }
  if (auto b = asymptotic_initial_block(table, schema)) return InitialBlockResult{*b, "constrained-chain", {}};
  Block prefix = fano ? Block{f.from_int(0), f.from_int(1)} : Block{f.from_int(0), f.from_int(1), f.from_int(2), f.from_int(3)};
  if (auto b = prefix_initial_block(table, schema, prefix)) return InitialBlockResult{*b, "prefix-backtracking", {}};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// A = (0,1,...,6)

/// Primes p = 1 (mod 6), p <= limit, such that 2 is not a cube while 6 and 20 are.
inline std::vector<std::uint32_t> proposition_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 7; p <= limit; p += 6) {
    if (!numth::is_prime(p)) continue;
    const auto e = (p - 1) / 3;
    auto cube = [&](std::uint64_t a) { return numth::pow_mod(a % p, e, p) == 1; };
    if (!cube(2) && cube(6) && cube(20)) out.push_back(p);
  }
  return out;
}

}  // namespace kaleido

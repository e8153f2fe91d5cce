#pragma once

// Difference families, kaleidoscopic difference families, development into
// explicit kaleidoscopes and the pair-color incidence check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "kaleido/algebra.hpp"
#include "kaleido/error.hpp"
#include "kaleido/schema.hpp"

namespace kaleido {

using Block = std::vector<Element>;

/// All ordered differences x - y, x != y, sorted canonically.
inline std::vector<Element> delta(const Group& g, std::span<const Element> s) {
  if (s.size() < 2) throw Error(Errc::MalformedInput, "difference list needs at least two elements");
  std::vector<Element> out;
  out.reserve(s.size() * (s.size() - 1));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      auto d = g.sub(s[i], s[j]);
      if (d.index == 0) throw Error(Errc::DuplicateElements, "element " + g.format(s[i]) + " repeated");
      out.push_back(d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

struct DfReport {
  bool valid = false;
  unsigned lambda = 0;
  std::vector<std::uint32_t> coverage;  // coverage[x.index]; coverage[0] unused
  std::vector<Element> under;           // covered fewer than lambda times
  std::vector<Element> over;            // covered more than lambda times
};

inline DfReport verify_df(const Group& g, std::span<const Block> family, unsigned k, unsigned lambda) {
  DfReport r;
  r.lambda = lambda;
  r.coverage.assign(g.order(), 0);
  for (const auto& block : family) {
    if (block.size() != k)
      throw Error(Errc::MalformedInput, "block of size " + std::to_string(block.size()) + ", expected " + std::to_string(k));
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j)
        if (i != j) ++r.coverage[g.sub(block[i], block[j]).index];
  }
  // A repeated point inside a block shows up as a zero difference.
  for (std::uint32_t x = 1; x < g.order(); ++x) {
    if (r.coverage[x] < lambda) r.under.push_back({x});
    if (r.coverage[x] > lambda) r.over.push_back({x});
  }
  r.valid = r.under.empty() && r.over.empty() && r.coverage[0] == 0;
  return r;
}

struct DifferenceFamily {
  GroupPtr group;
  std::vector<Block> blocks;
};

/// lambda for which `family` could be a difference family, from counting.
inline std::optional<unsigned> implied_lambda(const Group& g, std::span<const Block> family) {
  if (family.empty() || g.order() < 2) return std::nullopt;
  const std::uint64_t k = family.front().size();
  const std::uint64_t total = family.size() * k * (k - 1);
  if (total % (g.order() - 1) != 0) return std::nullopt;
  return static_cast<unsigned>(total / (g.order() - 1));
}

// ---------------------------------------------------------------------------
// Kaleidoscopic difference families

struct Kdf {
  GroupPtr group;
  SchemaPtr schema;
  std::vector<Block> blocks;  // ordered per schema positions
  nlohmann::json provenance = nlohmann::json::object();
};

struct KdfReport {
  bool valid = false;
  bool underlying_valid = false;  // blocks form a (v, k, b)-DF
  std::vector<unsigned> failing_colors;
  std::vector<DfReport> colors;
};

inline std::vector<Block> color_class(const Kdf& f, std::size_t color) {
  std::vector<Block> out;
  out.reserve(f.blocks.size());
  for (const auto& b : f.blocks) out.push_back(line_of(*f.schema, b, color));
  return out;
}

inline KdfReport verify_kdf(const Kdf& f) {
  for (const auto& b : f.blocks) {
    if (b.size() != f.schema->k) throw Error(Errc::MalformedInput, "block size does not match schema");
    for (auto e : b)
      if (!f.group->contains(e)) throw Error(Errc::MalformedInput, "block point outside the group");
  }
  KdfReport r;
  r.underlying_valid = verify_df(*f.group, f.blocks, f.schema->k, f.schema->lambda_underlying()).valid;
  for (std::size_t c = 0; c < f.schema->b(); ++c) {
    auto lines = color_class(f, c);
    r.colors.push_back(verify_df(*f.group, lines, f.schema->h, 1));
    if (!r.colors.back().valid) r.failing_colors.push_back(static_cast<unsigned>(c));
  }
  r.valid = r.underlying_valid && r.failing_colors.empty();
  return r;
}

inline DifferenceFamily flatten(const Kdf& f) { return {f.group, f.blocks}; }

// ---------------------------------------------------------------------------
// Kaleidoscopes

struct Plane {
  std::vector<std::uint32_t> points;
  /// coloring[c] = index of the schema line carrying color c; empty = identity.
  std::vector<std::uint32_t> coloring;

  std::uint32_t line_for_color(std::uint32_t c) const { return coloring.empty() ? c : coloring[c]; }
};

struct Kaleidoscope {
  std::uint32_t v = 0;
  GroupPtr group;  // set when points are group elements; may be null
  SchemaPtr schema;
  std::vector<Plane> planes;
};

struct KaleidoscopeReport {
  struct Offense {
    std::uint32_t x = 0, y = 0, color = 0, count = 0;
  };
  bool valid = false;
  std::uint64_t cells = 0;         // C(v,2) * b
  std::uint64_t zero_cells = 0;    // (pair, color) with no incidence
  std::uint64_t excess_cells = 0;  // (pair, color) with more than one
  std::optional<Offense> first;
};

namespace detail {

inline std::uint64_t pair_index(std::uint64_t v, std::uint64_t x, std::uint64_t y) {
  if (x > y) std::swap(x, y);
  return x * v - x * (x + 1) / 2 + (y - x - 1);
}

inline void check_plane(const Kaleidoscope& K, const Plane& pl) {
  const auto& s = *K.schema;
  if (pl.points.size() != s.k) throw Error(Errc::MalformedInput, "plane size does not match schema");
  for (auto p : pl.points)
    if (p >= K.v) throw Error(Errc::MalformedInput, "plane point out of range");
  auto sorted = pl.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::DuplicateElements, "plane repeats a point");
  if (!pl.coloring.empty()) {
    if (pl.coloring.size() != s.b()) throw Error(Errc::MalformedInput, "coloring must assign every color");
    auto c = pl.coloring;
    std::sort(c.begin(), c.end());
    for (std::uint32_t i = 0; i < c.size(); ++i)
      if (c[i] != i) throw Error(Errc::MalformedInput, "coloring is not a permutation of the lines");
  }
}

}  // namespace detail

inline KaleidoscopeReport verify_kaleidoscope(const Kaleidoscope& K) {
  const auto& s = *K.schema;
  const std::uint64_t v = K.v, b = s.b();
  const std::uint64_t pairs = v * (v - 1) / 2;
  std::vector<std::uint16_t> count(pairs * b, 0);
  for (const auto& pl : K.planes) {
    detail::check_plane(K, pl);
    for (std::uint32_t c = 0; c < b; ++c) {
      const auto& line = s.lines[pl.line_for_color(c)];
      for (std::size_t i = 0; i < line.size(); ++i)
        for (std::size_t j = i + 1; j < line.size(); ++j) {
          auto& cell = count[detail::pair_index(v, pl.points[line[i]], pl.points[line[j]]) * b + c];
          if (cell < 0xFFFF) ++cell;
        }
    }
  }
  KaleidoscopeReport r;
  r.cells = pairs * b;
  for (std::uint32_t x = 0; x < v; ++x)
    for (std::uint32_t y = x + 1; y < v; ++y)
      for (std::uint32_t c = 0; c < b; ++c) {
        auto n = count[detail::pair_index(v, x, y) * b + c];
        if (n == 1) continue;
        (n == 0 ? r.zero_cells : r.excess_cells)++;
        if (!r.first) r.first = KaleidoscopeReport::Offense{x, y, c, n};
      }
  r.valid = !r.first.has_value();
  return r;
}

/// t*v planes: every translate of every block, color j on the j-th line.
inline Kaleidoscope develop(const Kdf& f) {
  if (!verify_kdf(f).valid) throw Error(Errc::InvalidKDF, "family fails the kaleidoscopic difference check");
  Kaleidoscope K{f.group->order(), f.group, f.schema, {}};
  K.planes.reserve(f.blocks.size() * f.group->order());
  for (const auto& block : f.blocks)
    for (std::uint32_t g = 0; g < f.group->order(); ++g) {
      Plane pl;
      pl.points.reserve(block.size());
      for (auto e : block) pl.points.push_back(f.group->add(e, Element{g}).index);
      K.planes.push_back(std::move(pl));
    }
  return K;
}

// ---------------------------------------------------------------------------
// Plain block designs and PBDs (points are 0..v-1)

struct BlockDesign {
  std::uint32_t v = 0;
  std::vector<std::vector<std::uint32_t>> blocks;
};

using PairwiseBalancedDesign = BlockDesign;

struct DesignReport {
  bool valid = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> first_pair;
  std::uint32_t first_count = 0;
};

/// Every pair of points lies in exactly `lambda` blocks.
inline DesignReport verify_design(const BlockDesign& d, std::uint32_t lambda) {
  const std::uint64_t v = d.v;
  std::vector<std::uint32_t> count(v * (v - 1) / 2, 0);
  for (const auto& blk : d.blocks) {
    for (auto p : blk)
      if (p >= v) throw Error(Errc::MalformedInput, "block point " + std::to_string(p) + " out of range");
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = i + 1; j < blk.size(); ++j) {
        if (blk[i] == blk[j]) throw Error(Errc::DuplicateElements, "block repeats a point");
        ++count[detail::pair_index(v, blk[i], blk[j])];
      }
  }
  DesignReport r;
  for (std::uint32_t x = 0; x < v && !r.first_pair; ++x)
    for (std::uint32_t y = x + 1; y < v; ++y)
      if (auto n = count[detail::pair_index(v, x, y)]; n != lambda) {
        r.first_pair = {x, y};
        r.first_count = n;
        break;
      }
  r.valid = !r.first_pair;
  return r;
}

inline DesignReport verify_pbd(const PairwiseBalancedDesign& p) { return verify_design(p, 1); }

/// The uncolored block multiset of a kaleidoscope.
inline BlockDesign underlying_design(const Kaleidoscope& K) {
  BlockDesign d{K.v, {}};
  for (const auto& pl : K.planes) d.blocks.push_back(pl.points);
  return d;
}

/// b copies of each block of a 2-(v,k,1) design; copy j gives line i color i+j (mod b).
inline Kaleidoscope replicate(const BlockDesign& d, SchemaPtr schema) {
  for (const auto& blk : d.blocks)
    if (blk.size() != schema->k)
      throw Error(Errc::NotAUnitalDesign, "block size " + std::to_string(blk.size()) + " differs from schema k");
  auto rep = verify_design(d, 1);
  if (!rep.valid)
    throw Error(Errc::NotAUnitalDesign, "pair (" + std::to_string(rep.first_pair->first) + "," +
                                            std::to_string(rep.first_pair->second) + ") covered " +
                                            std::to_string(rep.first_count) + " times");
  const auto b = static_cast<std::uint32_t>(schema->b());
  Kaleidoscope K{d.v, nullptr, schema, {}};
  for (const auto& blk : d.blocks) {
    auto ordered = blk;
    std::sort(ordered.begin(), ordered.end());
    for (std::uint32_t j = 0; j < b; ++j) {
      Plane pl{ordered, std::vector<std::uint32_t>(b)};
      for (std::uint32_t c = 0; c < b; ++c) pl.coloring[c] = (c + b - j) % b;
      K.planes.push_back(std::move(pl));
    }
  }
  return K;
}

// ---------------------------------------------------------------------------
// Linear blocks over F_2

/// True iff the set together with 0 is closed under addition, i.e. it is the
/// set of nonzero vectors of a 3-dimensional subspace of F_2^n.
inline bool is_linear_block(std::span<const std::uint64_t> vectors, unsigned n) {
  if (n == 0 || n > 64) throw Error(Errc::BadVectorLength, "vector length must lie in [1, 64]");
  for (auto x : vectors)
    if (n < 64 && (x >> n) != 0) throw Error(Errc::BadVectorLength, "vector wider than " + std::to_string(n) + " bits");
  std::vector<std::uint64_t> s(vectors.begin(), vectors.end());
  std::sort(s.begin(), s.end());
  if (s.size() != 7 || std::adjacent_find(s.begin(), s.end()) != s.end() || s.front() == 0) return false;
  for (auto x : s)
    for (auto y : s)
      if (x != y && !std::binary_search(s.begin(), s.end(), x ^ y)) return false;
  return true;
}

inline bool is_linear_block(std::span<const std::string> bit_strings, unsigned n) {
  std::vector<std::uint64_t> v;
  for (const auto& s : bit_strings) {
    if (s.size() != n) throw Error(Errc::BadVectorLength, "'" + s + "' is not of length " + std::to_string(n));
    std::uint64_t x = 0;
    for (char ch : s) {
      if (ch != '0' && ch != '1') throw Error(Errc::MalformedInput, "'" + s + "' is not a bit string");
      x = (x << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    v.push_back(x);
  }
  return is_linear_block(std::span<const std::uint64_t>(v), n);
}

}  // namespace kaleido

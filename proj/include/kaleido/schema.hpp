#pragma once

// Ordered-block templates: which point positions of a k-tuple form which
// colored line. Line i carries color i.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kaleido/algebra.hpp"
#include "kaleido/error.hpp"

namespace kaleido {

struct Schema {
  std::string name;
  unsigned k = 0;
  unsigned h = 0;
  std::vector<std::vector<unsigned>> lines;

  std::size_t b() const { return lines.size(); }

  /// Every point pair of a developed kaleidoscope is covered once per color,
  /// so the uncolored structure is a 2-(v, k, b) design.
  unsigned lambda_underlying() const { return static_cast<unsigned>(lines.size()); }

  /// Number of base blocks in a difference family of order v: (v-1)b / (k(k-1)).
  std::optional<std::size_t> blocks_for_order(std::size_t v) const {
    const std::size_t num = (v - 1) * b(), den = std::size_t{k} * (k - 1);
    if (v < 1 || den == 0 || num % den != 0) return std::nullopt;
    return num / den;
  }

  /// pair_line()[i][j] = the line containing positions i != j.
  std::vector<std::vector<unsigned>> pair_line() const {
    std::vector<std::vector<unsigned>> m(k, std::vector<unsigned>(k, 0));
    for (unsigned c = 0; c < lines.size(); ++c)
      for (auto i : lines[c])
        for (auto j : lines[c])
          if (i != j) m[i][j] = c;
    return m;
  }
};

using SchemaPtr = std::shared_ptr<const Schema>;

struct PairViolation {
  unsigned a = 0;
  unsigned b = 0;
  unsigned count = 0;
};

struct SchemaReport {
  bool valid = false;
  std::vector<std::string> structural;  // malformed lines
  std::vector<PairViolation> violations;  // in (a,b) lexicographic order
};

inline SchemaReport validate_schema(const Schema& s) {
  SchemaReport r;
  if (s.k < 2) r.structural.push_back("k must be at least 2");
  if (s.h < 2 || s.h > s.k) r.structural.push_back("h must lie in [2, k]");
  for (std::size_t c = 0; c < s.lines.size(); ++c) {
    const auto& line = s.lines[c];
    if (line.size() != s.h)
      r.structural.push_back("line " + std::to_string(c) + " has " + std::to_string(line.size()) + " points");
    std::set<unsigned> seen;
    for (auto i : line) {
      if (i >= s.k) r.structural.push_back("line " + std::to_string(c) + " has position out of range");
      if (!seen.insert(i).second) r.structural.push_back("line " + std::to_string(c) + " repeats a position");
    }
  }
  if (!r.structural.empty()) return r;
  std::vector<unsigned> count(std::size_t{s.k} * s.k, 0);
  for (const auto& line : s.lines)
    for (std::size_t x = 0; x < line.size(); ++x)
      for (std::size_t y = x + 1; y < line.size(); ++y) {
        auto a = std::min(line[x], line[y]), b = std::max(line[x], line[y]);
        ++count[a * s.k + b];
      }
  for (unsigned a = 0; a < s.k; ++a)
    for (unsigned b = a + 1; b < s.k; ++b)
      if (count[a * s.k + b] != 1) r.violations.push_back({a, b, count[a * s.k + b]});
  r.valid = r.violations.empty();
  return r;
}

/// Validates and freezes a user-supplied schema.
inline SchemaPtr make_schema(Schema s) {
  auto report = validate_schema(s);
  if (!report.valid) {
    std::string why = report.structural.empty()
                          ? "pair (" + std::to_string(report.violations.front().a) + "," +
                                std::to_string(report.violations.front().b) + ") covered " +
                                std::to_string(report.violations.front().count) + " times"
                          : report.structural.front();
    throw Error(Errc::InvalidSchema, s.name + ": " + why);
  }
  return std::make_shared<const Schema>(std::move(s));
}

inline Schema fano_schema() {
  Schema s{"fano", 7, 3, {}};
  for (unsigned i = 0; i < 7; ++i) s.lines.push_back({i, (i + 1) % 7, (i + 3) % 7});
  return s;
}

// Position 0 holds the point at infinity; positions 1..8 hold b_0..b_7.
inline Schema hesse_schema() {
  Schema s{"hesse", 9, 3, {}};
  for (unsigned i = 0; i < 8; ++i) s.lines.push_back({1 + i, 1 + (i + 1) % 8, 1 + (i + 3) % 8});
  for (unsigned j = 0; j < 4; ++j) s.lines.push_back({0, 1 + j, 1 + j + 4});
  return s;
}

inline SchemaPtr builtin_schema(std::string_view name) {
  static const SchemaPtr fano = make_schema(fano_schema());
  static const SchemaPtr hesse = make_schema(hesse_schema());
  if (name == "fano") return fano;
  if (name == "hesse") return hesse;
  throw Error(Errc::InvalidSchema, "unknown builtin schema '" + std::string(name) + "'");
}

inline bool is_builtin(const Schema& s) {
  return (s.name == "fano" && s.lines == fano_schema().lines) || (s.name == "hesse" && s.lines == hesse_schema().lines);
}

inline bool same_schema(const Schema& a, const Schema& b) { return a.k == b.k && a.h == b.h && a.lines == b.lines; }

struct OrderedBlock {
  SchemaPtr schema;
  std::vector<Element> points;
};

inline OrderedBlock make_block(SchemaPtr schema, std::vector<Element> points) {
  if (points.size() != schema->k)
    throw Error(Errc::MalformedInput, "block has " + std::to_string(points.size()) + " points, schema needs " +
                                          std::to_string(schema->k));
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::DuplicateElements, "block points must be distinct");
  return {std::move(schema), std::move(points)};
}

inline std::vector<Element> line_of(const Schema& s, std::span<const Element> points, std::size_t i) {
  std::vector<Element> line;
  line.reserve(s.h);
  for (auto pos : s.lines[i]) line.push_back(points[pos]);
  return line;
}

inline std::vector<std::vector<Element>> lines_of(const Schema& s, std::span<const Element> points) {
  std::vector<std::vector<Element>> out;
  out.reserve(s.b());
  for (std::size_t i = 0; i < s.b(); ++i) out.push_back(line_of(s, points, i));
  return out;
}

inline std::vector<std::vector<Element>> lines_of(const OrderedBlock& block) {
  return lines_of(*block.schema, block.points);
}

}  // namespace kaleido

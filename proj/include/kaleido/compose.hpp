#pragma once

// Difference matrices, product constructions of (kaleidoscopic) difference
// families, and gluing kaleidoscopes along a pairwise balanced design.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kaleido/algebra.hpp"
#include "kaleido/designs.hpp"
#include "kaleido/error.hpp"
#include "kaleido/schema.hpp"

namespace kaleido {

/// k x |H| matrix over H; every row-pair difference vector is a permutation of H.
struct DifferenceMatrix {
  GroupPtr group;
  std::vector<std::vector<Element>> rows;
};

struct DmReport {
  bool valid = false;
  std::optional<std::pair<std::size_t, std::size_t>> failing_rows;
};

inline DmReport verify_dm(const DifferenceMatrix& m) {
  const auto n = m.group->order();
  for (const auto& row : m.rows) {
    if (row.size() != n) throw Error(Errc::MalformedInput, "difference matrix rows must have |H| columns");
    for (auto e : row)
      if (!m.group->contains(e)) throw Error(Errc::MalformedInput, "matrix entry outside the group");
  }
  DmReport r;
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < m.rows.size(); ++a)
    for (std::size_t b = a + 1; b < m.rows.size(); ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::uint32_t c = 0; c < n; ++c) {
        auto& s = seen[m.group->sub(m.rows[a][c], m.rows[b][c]).index];
        if (s) {
          r.failing_rows = {a, b};
          return r;
        }
        s = 1;
      }
    }
  r.valid = true;
  return r;
}

/// M[i][c] = a_i * x_c with a_0..a_{k-1} the first k field elements and x_c
/// running over the field in canonical order.
inline DifferenceMatrix field_dm(GroupPtr field, unsigned k) {
  if (!field->is_field()) throw Error(Errc::MalformedInput, "field_dm needs a field");
  if (field->order() < k)
    throw Error(Errc::OrderTooSmall, "q = " + std::to_string(field->order()) + " < k = " + std::to_string(k));
  DifferenceMatrix m{field, {}};
  for (std::uint32_t i = 0; i < k; ++i) {
    std::vector<Element> row(field->order());
    for (std::uint32_t c = 0; c < field->order(); ++c) row[c] = field->mul(Element{i}, Element{c});
    m.rows.push_back(std::move(row));
  }
  return m;
}

inline DifferenceMatrix select_rows(const DifferenceMatrix& m, const std::vector<unsigned>& rows) {
  DifferenceMatrix out{m.group, {}};
  for (auto r : rows) {
    if (r >= m.rows.size()) throw Error(Errc::MalformedInput, "row index out of range");
    out.rows.push_back(m.rows[r]);
  }
  return out;
}

namespace detail {

inline unsigned checked_lambda(const DifferenceFamily& f, const char* which) {
  if (f.blocks.empty()) throw Error(Errc::IngredientInvalid, std::string(which) + " is empty");
  auto lambda = implied_lambda(*f.group, f.blocks);
  if (!lambda) throw Error(Errc::IngredientInvalid, std::string(which) + " has an impossible block count");
  const auto k = static_cast<unsigned>(f.blocks.front().size());
  for (const auto& b : f.blocks)
    if (b.size() != k) throw Error(Errc::IngredientInvalid, std::string(which) + " mixes block sizes");
  if (!verify_df(*f.group, f.blocks, k, *lambda).valid)
    throw Error(Errc::IngredientInvalid, std::string(which) + " is not a difference family");
  return *lambda;
}

// Blocks {(b_r, m_{r,j})}_r for every base block and every column j, then
// {0} x B' for every B' in the second family. Position order is preserved.
inline std::vector<Block> product_blocks(const Group& gh, const std::vector<Block>& first,
                                         const std::vector<Block>& second, const DifferenceMatrix& m) {
  const auto& h = *gh.right();
  std::vector<Block> out;
  out.reserve(first.size() * h.order() + second.size());
  for (const auto& b : first)
    for (std::uint32_t j = 0; j < h.order(); ++j) {
      Block nb(b.size());
      for (std::size_t r = 0; r < b.size(); ++r) nb[r] = gh.pair(b[r], m.rows[r][j]);
      out.push_back(std::move(nb));
    }
  for (const auto& b : second) {
    Block nb(b.size());
    for (std::size_t r = 0; r < b.size(); ++r) nb[r] = gh.pair(Element{0}, b[r]);
    out.push_back(std::move(nb));
  }
  return out;
}

inline void check_matrix(const DifferenceMatrix& m, const Group& h, std::size_t k) {
  if (!(m.group->descriptor() == h.descriptor()))
    throw Error(Errc::IngredientInvalid, "difference matrix is over a different group");
  if (m.rows.size() != k)
    throw Error(Errc::IngredientInvalid,
                "difference matrix has " + std::to_string(m.rows.size()) + " rows, need " + std::to_string(k));
  if (!verify_dm(m).valid) throw Error(Errc::IngredientInvalid, "not a difference matrix");
}

}  // namespace detail

/// (G,k,l)-DF and (H,k,l)-DF with an (H,k,1)-DM give a (G x H,k,l)-DF with
/// |F|*|H| + |F'| blocks.
inline DifferenceFamily compose_df(const DifferenceFamily& f, const DifferenceFamily& fp, const DifferenceMatrix& m) {
  auto lf = detail::checked_lambda(f, "first family");
  auto lfp = detail::checked_lambda(fp, "second family");
  if (f.blocks.front().size() != fp.blocks.front().size())
    throw Error(Errc::IngredientInvalid, "families have different block sizes");
  if (lf != lfp) throw Error(Errc::IngredientInvalid, "families have different lambda");
  detail::check_matrix(m, *fp.group, f.blocks.front().size());
  auto gh = make_group(GroupDescriptor::product(f.group->descriptor(), fp.group->descriptor()));
  auto blocks = detail::product_blocks(*gh, f.blocks, fp.blocks, m);
  return {gh, std::move(blocks)};
}

/// Colored analogue of compose_df; color j of the result is the product of
/// the color-j families through the rows of M picked by schema line j.
inline Kdf compose_kdf(const Kdf& f, const Kdf& fp, const DifferenceMatrix& m) {
  if (!same_schema(*f.schema, *fp.schema)) throw Error(Errc::SchemaMismatch, "ingredients use different schemas");
  if (f.blocks.empty() || fp.blocks.empty()) throw Error(Errc::IngredientInvalid, "empty family");
  if (!verify_kdf(f).valid) throw Error(Errc::IngredientInvalid, "first family is not kaleidoscopic");
  if (!verify_kdf(fp).valid) throw Error(Errc::IngredientInvalid, "second family is not kaleidoscopic");
  detail::check_matrix(m, *fp.group, f.schema->k);
  auto gh = make_group(GroupDescriptor::product(f.group->descriptor(), fp.group->descriptor()));
  Kdf out{gh, f.schema, detail::product_blocks(*gh, f.blocks, fp.blocks, m), nlohmann::json::object()};
  out.provenance["construction"] = "product";
  out.provenance["first_blocks"] = f.blocks.size();
  out.provenance["second_blocks"] = fp.blocks.size();
  return out;
}

/// Relabel a product of two cyclic factors with coprime orders onto Z_{mn}.
inline Kdf flatten_to_cyclic(const Kdf& f) {
  const auto& g = *f.group;
  auto cyclic_like = [](const Group& x) {
    return x.kind() == Group::Kind::cyclic || x.kind() == Group::Kind::prime_field;
  };
  if (g.kind() != Group::Kind::product || !cyclic_like(*g.left()) || !cyclic_like(*g.right()))
    throw Error(Errc::MalformedInput, "flattening needs a product of two cyclic groups");
  const std::uint64_t m = g.left()->order(), n = g.right()->order();
  if (std::gcd(m, n) != 1) throw Error(Errc::MalformedInput, "factor orders are not coprime");
  auto z = make_group(GroupDescriptor::cyclic(static_cast<std::uint32_t>(m * n)));
  // CRT: x = a (mod m), x = b (mod n)
  std::vector<std::uint32_t> crt(m * n);
  for (std::uint64_t x = 0; x < m * n; ++x) crt[(x % m) * n + (x % n)] = static_cast<std::uint32_t>(x);
  Kdf out{z, f.schema, {}, f.provenance};
  for (const auto& b : f.blocks) {
    Block nb;
    for (auto e : b) nb.push_back(Element{crt[e.index]});
    out.blocks.push_back(std::move(nb));
  }
  out.provenance["flattened_from"] = "product";
  return out;
}

/// Glue one catalog kaleidoscope onto every block of a PBD. Catalog point i
/// maps to the i-th smallest point of the block.
inline Kaleidoscope pbd_compose(const PairwiseBalancedDesign& p, const std::map<std::uint32_t, Kaleidoscope>& catalog) {
  if (!verify_pbd(p).valid) throw Error(Errc::InvalidPBD, "some pair is not covered exactly once");
  SchemaPtr schema;
  for (const auto& blk : p.blocks) {
    if (blk.size() < 2) continue;
    auto it = catalog.find(static_cast<std::uint32_t>(blk.size()));
    if (it == catalog.end()) throw Error(Errc::MissingIngredient, std::to_string(blk.size()));
    if (it->second.v != blk.size()) throw Error(Errc::IngredientInvalid, "catalog entry has the wrong order");
    if (!schema) schema = it->second.schema;
    else if (!same_schema(*schema, *it->second.schema))
      throw Error(Errc::SchemaMismatch, "catalog entries use different schemas");
  }
  if (!schema) throw Error(Errc::MissingIngredient, "no block with two or more points");
  Kaleidoscope out{p.v, nullptr, schema, {}};
  for (const auto& blk : p.blocks) {
    if (blk.size() < 2) continue;
    auto sorted = blk;
    std::sort(sorted.begin(), sorted.end());
    const auto& ingredient = catalog.at(static_cast<std::uint32_t>(blk.size()));
    for (const auto& pl : ingredient.planes) {
      Plane np{{}, pl.coloring};
      for (auto x : pl.points) np.points.push_back(sorted[x]);
      out.planes.push_back(std::move(np));
    }
  }
  return out;
}

}  // namespace kaleido

#pragma once

// Published families used across suites.

#include <set>
#include <vector>

#include "kaleido/designs.hpp"
#include "kaleido/schema.hpp"

namespace fixtures {

using namespace kaleido;

inline Block block(std::initializer_list<std::uint32_t> xs) {
  Block b;
  for (auto x : xs) b.push_back(Element{x});
  return b;
}

// FKDF(19) over Z_19.
inline Kdf fkdf19() {
  return {make_group(GroupDescriptor::cyclic(19)), builtin_schema("fano"),
          {block({0, 1, 2, 4, 5, 11, 8}), block({0, 7, 14, 9, 16, 1, 18}), block({0, 11, 3, 6, 17, 7, 12})},
          nlohmann::json::object()};
}

// Its seven color classes F_0..F_6, as sets of sets.
inline std::vector<std::set<std::set<std::uint32_t>>> fkdf19_classes() {
  return {{{0, 1, 4}, {0, 7, 9}, {0, 11, 6}},   {{1, 2, 5}, {7, 14, 16}, {11, 3, 17}},
          {{2, 4, 11}, {14, 9, 1}, {3, 6, 7}},  {{4, 5, 8}, {9, 16, 18}, {6, 17, 12}},
          {{5, 11, 0}, {16, 1, 0}, {17, 7, 0}}, {{11, 8, 1}, {1, 18, 7}, {7, 12, 11}},
          {{8, 0, 2}, {18, 0, 14}, {12, 0, 3}}};
}

// {B, 7B, 11B} with B = (0,1,2,3,7,16,8,4,10) over F_19.
inline Kdf hkdf19() {
  auto f = make_group(GroupDescriptor::prime_field(19));
  auto B = block({0, 1, 2, 3, 7, 16, 8, 4, 10});
  Kdf k{f, builtin_schema("hesse"), {}, nlohmann::json::object()};
  for (std::uint32_t s : {1u, 7u, 11u}) {
    Block sb;
    for (auto e : B) sb.push_back(f->mul(e, Element{s}));
    k.blocks.push_back(sb);
  }
  return k;
}

// Single block (0,...,6) over Z_7.
inline Kdf fkdf7() {
  return {make_group(GroupDescriptor::prime_field(7)), builtin_schema("fano"), {block({0, 1, 2, 3, 4, 5, 6})},
          nlohmann::json::object()};
}

inline std::set<std::set<std::uint32_t>> as_sets(const std::vector<Block>& bs) {
  std::set<std::set<std::uint32_t>> out;
  for (const auto& b : bs) {
    std::set<std::uint32_t> s;
    for (auto e : b) s.insert(e.index);
    out.insert(s);
  }
  return out;
}

}  // namespace fixtures

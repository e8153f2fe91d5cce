#include <gtest/gtest.h>

#include <set>

#include "kaleido/algebra.hpp"
#include "kaleido/schema.hpp"

using namespace kaleido;

namespace {

std::set<std::uint32_t> as_set(const std::vector<Element>& v) {
  std::set<std::uint32_t> s;
  for (auto e : v) s.insert(e.index);
  return s;
}

std::vector<Element> els(std::initializer_list<std::uint32_t> xs) {
  std::vector<Element> v;
  for (auto x : xs) v.push_back(Element{x});
  return v;
}

// Brute-force pair coverage of position indices.
bool covers_each_pair_once(const Schema& s) {
  std::vector<std::vector<int>> c(s.k, std::vector<int>(s.k, 0));
  for (const auto& l : s.lines)
    for (auto a : l)
      for (auto b : l)
        if (a != b) ++c[a][b];
  for (unsigned a = 0; a < s.k; ++a)
    for (unsigned b = 0; b < s.k; ++b)
      if (a != b && c[a][b] != 1) return false;
  return true;
}

}  // namespace

TEST(Builtin, FanoLines) {
  auto s = fano_schema();
  EXPECT_EQ(s.k, 7u);
  EXPECT_EQ(s.b(), 7u);
  EXPECT_EQ(std::set<unsigned>(s.lines[0].begin(), s.lines[0].end()), (std::set<unsigned>{0, 1, 3}));
  for (unsigned i = 0; i < 7; ++i)
    EXPECT_EQ(std::set<unsigned>(s.lines[i].begin(), s.lines[i].end()),
              (std::set<unsigned>{i, (i + 1) % 7, (i + 3) % 7}));
  EXPECT_TRUE(covers_each_pair_once(s));
  EXPECT_TRUE(validate_schema(s).valid);
}

TEST(Builtin, HesseLines) {
  auto s = hesse_schema();
  EXPECT_EQ(s.k, 9u);
  EXPECT_EQ(s.b(), 12u);
  // l_8 = {b_inf, b_0, b_4} = positions {0, 1, 5}
  EXPECT_EQ(std::set<unsigned>(s.lines[8].begin(), s.lines[8].end()), (std::set<unsigned>{0, 1, 5}));
  for (unsigned i = 0; i < 8; ++i)
    EXPECT_EQ(std::set<unsigned>(s.lines[i].begin(), s.lines[i].end()),
              (std::set<unsigned>{1 + i, 1 + (i + 1) % 8, 1 + (i + 3) % 8}));
  EXPECT_TRUE(covers_each_pair_once(s));
  EXPECT_TRUE(validate_schema(s).valid);
}

TEST(Builtin, LambdaUnderlying) {
  EXPECT_EQ(fano_schema().lambda_underlying(), 7u);
  EXPECT_EQ(hesse_schema().lambda_underlying(), 12u);
  EXPECT_EQ(fano_schema().blocks_for_order(19), 3u);
  EXPECT_EQ(hesse_schema().blocks_for_order(19), 3u);
  EXPECT_FALSE(fano_schema().blocks_for_order(11).has_value());
}

TEST(Validate, ReportsDoubleCoveredPair) {
  auto s = fano_schema();
  s.lines[1] = {0, 1, 4};
  auto r = validate_schema(s);
  EXPECT_FALSE(r.valid);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().a, 0u);
  EXPECT_EQ(r.violations.front().b, 1u);
  EXPECT_EQ(r.violations.front().count, 2u);
  EXPECT_THROW(make_schema(s), Error);
}

TEST(Validate, StructuralProblems) {
  Schema s{"bad", 3, 3, {{0, 1, 5}}};
  auto r = validate_schema(s);
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(r.structural.empty());
  Schema ok{"triangle", 3, 2, {{0, 1}, {1, 2}, {0, 2}}};
  EXPECT_TRUE(validate_schema(ok).valid);
  EXPECT_NO_THROW(make_schema(ok));
}

TEST(Lines, ExampleBlock) {
  auto z = make_group(GroupDescriptor::cyclic(19));
  auto B = make_block(builtin_schema("fano"), els({0, 1, 2, 4, 5, 11, 8}));
  auto L = lines_of(B);
  ASSERT_EQ(L.size(), 7u);
  EXPECT_EQ(as_set(L[0]), (std::set<std::uint32_t>{0, 1, 4}));
  EXPECT_EQ(as_set(L[4]), (std::set<std::uint32_t>{5, 11, 0}));

  auto H = make_block(builtin_schema("hesse"), els({0, 1, 2, 3, 7, 16, 8, 4, 10}));
  EXPECT_EQ(as_set(lines_of(H)[0]), (std::set<std::uint32_t>{1, 2, 7}));
}

TEST(Lines, BlockValidation) {
  EXPECT_THROW(make_block(builtin_schema("fano"), els({0, 1, 2})), Error);
  EXPECT_THROW(make_block(builtin_schema("fano"), els({0, 1, 2, 3, 4, 5, 5})), Error);
  EXPECT_THROW(builtin_schema("octagon"), Error);
}

TEST(Lines, TranslationEquivariance) {
  auto z = make_group(GroupDescriptor::cyclic(19));
  const auto& s = fano_schema();
  auto B = els({0, 1, 2, 4, 5, 11, 8});
  auto L = lines_of(s, B);
  for (std::uint32_t g = 0; g < 19; ++g) {
    std::vector<Element> Bg;
    for (auto e : B) Bg.push_back(z->add(e, Element{g}));
    auto Lg = lines_of(s, Bg);
    for (std::size_t i = 0; i < L.size(); ++i) {
      std::set<std::uint32_t> shifted;
      for (auto e : L[i]) shifted.insert(z->add(e, Element{g}).index);
      EXPECT_EQ(as_set(Lg[i]), shifted);
    }
  }
}

TEST(Lines, ScalingEquivariance) {
  auto f = make_group(GroupDescriptor::prime_field(19));
  const auto& s = hesse_schema();
  auto B = els({0, 1, 2, 3, 7, 16, 8, 4, 10});
  auto L = lines_of(s, B);
  for (std::uint32_t u = 1; u < 19; ++u) {
    std::vector<Element> Bu;
    for (auto e : B) Bu.push_back(f->mul(e, Element{u}));
    auto Lu = lines_of(s, Bu);
    for (std::size_t i = 0; i < L.size(); ++i) {
      std::set<std::uint32_t> scaled;
      for (auto e : L[i]) scaled.insert(f->mul(e, Element{u}).index);
      EXPECT_EQ(as_set(Lu[i]), scaled);
    }
  }
}

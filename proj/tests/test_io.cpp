#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "kaleido/compose.hpp"
#include "kaleido/exhaustive.hpp"
#include "kaleido/io.hpp"

using namespace kaleido;
using json = nlohmann::json;

namespace {

std::vector<GroupDescriptor> descriptors() {
  return {GroupDescriptor::cyclic(19), GroupDescriptor::prime_field(31),
          GroupDescriptor::extension_field(5, {-3, 0, 1}),
          GroupDescriptor::product(GroupDescriptor::prime_field(7), GroupDescriptor::prime_field(19))};
}

}  // namespace

TEST(Json, DescriptorRoundTrip) {
  for (const auto& d : descriptors()) {
    auto j = io::to_json(d);
    EXPECT_EQ(io::descriptor_from_json(j), d);
    EXPECT_EQ(io::to_json(io::descriptor_from_json(j)).dump(), j.dump());
    EXPECT_EQ(io::descriptor_hash(d), io::descriptor_hash(io::descriptor_from_json(j)));
  }
  EXPECT_NE(io::descriptor_hash(GroupDescriptor::cyclic(19)), io::descriptor_hash(GroupDescriptor::prime_field(19)));
  EXPECT_EQ(io::to_json(GroupDescriptor::extension_field(5, {-3, 0, 1})).dump(),
            R"({"kind":"ext","modulus":[2,0,1],"p":5})");
}

TEST(Json, ElementRoundTripEveryGroup) {
  for (const auto& d : descriptors()) {
    auto g = make_group(d);
    for (auto e : g->elements()) ASSERT_EQ(io::element_from_json(*g, io::to_json(*g, e)), e);
  }
  auto f = make_group(GroupDescriptor::extension_field(5, {-3, 0, 1}));
  EXPECT_EQ(io::element_from_json(*f, json("4+t")), f->parse("4+t"));
  EXPECT_EQ(io::element_from_json(*f, json(3)), f->from_int(3));
  auto z = make_group(GroupDescriptor::cyclic(19));
  EXPECT_EQ(io::element_from_json(*z, json(-1)), Element{18});
}

TEST(Json, MalformedInputs) {
  auto expect_malformed = [](auto&& fn) {
    try {
      fn();
      ADD_FAILURE() << "no throw";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::MalformedInput);
    }
  };
  expect_malformed([] { io::descriptor_from_json(json{{"kind", "torus"}}); });
  expect_malformed([] { io::descriptor_from_json(json{{"p", 7}}); });
  expect_malformed([] { io::kdf_from_json(json{{"group", {{"kind", "cyclic"}, {"v", 19}}}, {"schema", "fano"}}); });
  auto g = make_group(GroupDescriptor::prime_field(7));
  expect_malformed([&] { io::element_from_json(*g, json::object()); });
  expect_malformed([] { io::parse_design("3 4 5\n"); });
  expect_malformed([] { io::parse_design("v=7\n0 1 x\n"); });
  expect_malformed([] { io::parse_design(""); });
}

TEST(Json, KdfRoundTripIsByteStable) {
  for (auto k : {fixtures::fkdf19(), fixtures::hkdf19(), fixtures::fkdf7()}) {
    k.provenance = {{"source", "fixture"}};
    auto text = io::dump(io::to_json(k));
    auto back = io::kdf_from_json(json::parse(text));
    EXPECT_EQ(back.blocks, k.blocks);
    EXPECT_EQ(back.group->descriptor(), k.group->descriptor());
    EXPECT_TRUE(same_schema(*back.schema, *k.schema));
    EXPECT_EQ(back.provenance, k.provenance);
    EXPECT_EQ(io::dump(io::to_json(back)), text);
    EXPECT_TRUE(verify_kdf(back).valid);
  }
}

TEST(Json, CustomSchemaRoundTrip) {
  auto s = make_schema(Schema{"triangle", 3, 2, {{0, 1}, {1, 2}, {0, 2}}});
  auto j = io::to_json(*s);
  EXPECT_TRUE(j.is_object());
  EXPECT_TRUE(same_schema(*io::schema_from_json(j), *s));
  EXPECT_EQ(io::to_json(fano_schema()), json("fano"));
  auto g = make_group(GroupDescriptor::cyclic(19));
  auto b = make_block(builtin_schema("hesse"), fixtures::block({0, 1, 2, 3, 7, 16, 8, 4, 10}));
  auto bj = io::to_json(*g, b);
  auto bb = io::block_from_json(*g, bj);
  EXPECT_EQ(bb.points, b.points);
}

TEST(Json, DfAndDmRoundTrip) {
  auto k = fixtures::fkdf19();
  auto df = flatten(k);
  auto j = io::to_json(df, 7u);
  EXPECT_EQ(j["lambda"], 7);
  auto back = io::df_from_json(j);
  EXPECT_EQ(back.blocks, df.blocks);

  auto dm = field_dm(make_group(GroupDescriptor::prime_field(19)), 7);
  auto text = io::dump(io::to_json(dm));
  auto dm2 = io::dm_from_json(json::parse(text));
  EXPECT_EQ(dm2.rows, dm.rows);
  EXPECT_TRUE(verify_dm(dm2).valid);
  EXPECT_EQ(io::dump(io::to_json(dm2)), text);
}

TEST(Json, KaleidoscopeRoundTrip) {
  auto K = develop(fixtures::fkdf19());
  auto text = io::dump(io::to_json(K));
  auto K2 = io::kaleidoscope_from_json(json::parse(text));
  EXPECT_TRUE(verify_kaleidoscope(K2).valid);
  EXPECT_EQ(io::dump(io::to_json(K2)), text);

  auto R = replicate(BlockDesign{7, {{0, 1, 2, 3, 4, 5, 6}}}, builtin_schema("fano"));
  auto rj = io::to_json(R);
  ASSERT_TRUE(rj.contains("colorings"));
  auto R2 = io::kaleidoscope_from_json(rj);
  EXPECT_TRUE(verify_kaleidoscope(R2).valid);
  EXPECT_EQ(io::to_json(R2).dump(), rj.dump());
}

TEST(Text, DesignRoundTrip) {
  BlockDesign d{9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}}};
  auto text = io::format_design(d);
  EXPECT_EQ(text.substr(0, 4), "v=9\n");
  auto back = io::parse_design("# comment\n\n" + text);
  EXPECT_EQ(back.v, d.v);
  EXPECT_EQ(back.blocks, d.blocks);
  EXPECT_EQ(io::format_design(back), text);
}

TEST(Json, CertificateFields) {
  auto c = exhaustive_nonexistence(13, builtin_schema("fano"));
  auto j = io::to_json(c);
  EXPECT_EQ(j["v"], 13);
  EXPECT_EQ(j["schema"], "fano");
  EXPECT_EQ(j["solutions"], 0);
  EXPECT_EQ(j["split_depth"], 3);
  EXPECT_TRUE(j.contains("nodes_visited"));
}

TEST(Files, WriteReadJson) {
  auto dir = std::filesystem::temp_directory_path() / "kaleido_io_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "k.json").string();
  auto j = io::to_json(fixtures::fkdf19());
  io::write_file(path, io::dump(j));
  EXPECT_EQ(io::read_json(path), j);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(io::read_file(path), Error);
}

#pragma once

// JSON and text formats for every artifact. nlohmann::json keeps object keys
// sorted, so dump() output is byte-stable.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kaleido/algebra.hpp"
#include "kaleido/compose.hpp"
#include "kaleido/designs.hpp"
#include "kaleido/error.hpp"
#include "kaleido/exhaustive.hpp"
#include "kaleido/schema.hpp"

namespace kaleido::io {

using nlohmann::json;

namespace detail {

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::MalformedInput, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedInput, std::string("bad value for '") + key + "': " + e.what());
  }
}

inline const json& get_node(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::MalformedInput, std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace detail

// -- groups -----------------------------------------------------------------

inline json to_json(const GroupDescriptor& d) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CyclicGroup>) return {{"kind", "cyclic"}, {"v", x.v}};
        else if constexpr (std::is_same_v<T, PrimeField>) return {{"kind", "prime"}, {"p", x.p}};
        else if constexpr (std::is_same_v<T, ExtensionField>) return {{"kind", "ext"}, {"p", x.p}, {"modulus", x.modulus}};
        else return {{"kind", "product"}, {"left", to_json(*x.left)}, {"right", to_json(*x.right)}};
      },
      d.kind);
}

inline GroupDescriptor descriptor_from_json(const json& j) {
  auto kind = detail::get_field<std::string>(j, "kind");
  auto positive = [&](const char* key) {
    auto n = detail::get_field<std::int64_t>(j, key);
    if (n < 0 || n > (1ll << 31)) throw Error(Errc::OrderTooSmall, std::string(key) + " out of range");
    return static_cast<std::uint32_t>(n);
  };
  if (kind == "cyclic") return GroupDescriptor::cyclic(positive("v"));
  if (kind == "prime") return GroupDescriptor::prime_field(positive("p"));
  if (kind == "ext")
    return GroupDescriptor::extension_field(positive("p"), detail::get_field<std::vector<std::int64_t>>(j, "modulus"));
  if (kind == "product")
    return GroupDescriptor::product(descriptor_from_json(detail::get_node(j, "left")),
                                    descriptor_from_json(detail::get_node(j, "right")));
  throw Error(Errc::MalformedInput, "unknown group kind '" + kind + "'");
}

inline GroupPtr group_from_json(const json& j) { return make_group(descriptor_from_json(j)); }

/// Stable 64-bit FNV-1a hash of the canonical descriptor JSON.
inline std::string descriptor_hash(const GroupDescriptor& d) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : to_json(d).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// -- elements ---------------------------------------------------------------

inline json to_json(const Group& g, Element e) {
  switch (g.kind()) {
    case Group::Kind::cyclic:
    case Group::Kind::prime_field:
      return e.index;
    case Group::Kind::extension_field:
      return g.coefficients(e);
    case Group::Kind::product: {
      auto [l, r] = g.split(e);
      return json::array({to_json(*g.left(), l), to_json(*g.right(), r)});
    }
  }
  return {};
}

inline Element element_from_json(const Group& g, const json& j) {
  try {
    switch (g.kind()) {
      case Group::Kind::cyclic:
      case Group::Kind::prime_field:
        if (j.is_string()) return g.parse(j.get<std::string>());
        return g.from_int(j.get<std::int64_t>());
      case Group::Kind::extension_field:
        if (j.is_string()) return g.parse(j.get<std::string>());
        if (j.is_number_integer()) return g.from_int(j.get<std::int64_t>());
        return g.from_coefficients(j.get<std::vector<std::int64_t>>());
      case Group::Kind::product:
        if (!j.is_array() || j.size() != 2) throw Error(Errc::MalformedInput, "product element must be a pair");
        return g.pair(element_from_json(*g.left(), j[0]), element_from_json(*g.right(), j[1]));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedInput, std::string("bad element: ") + e.what());
  }
  return {};
}

inline json to_json(const Group& g, const std::vector<Element>& v) {
  json a = json::array();
  for (auto e : v) a.push_back(to_json(g, e));
  return a;
}

inline std::vector<Element> elements_from_json(const Group& g, const json& j) {
  if (!j.is_array()) throw Error(Errc::MalformedInput, "expected an array of elements");
  std::vector<Element> out;
  for (const auto& x : j) out.push_back(element_from_json(g, x));
  return out;
}

// -- schemas ----------------------------------------------------------------

inline json to_json(const Schema& s) {
  if (is_builtin(s)) return s.name;
  return {{"name", s.name}, {"k", s.k}, {"h", s.h}, {"lines", s.lines}};
}

inline SchemaPtr schema_from_json(const json& j) {
  if (j.is_string()) return builtin_schema(j.get<std::string>());
  Schema s;
  s.name = j.value("name", std::string("custom"));
  s.k = detail::get_field<unsigned>(j, "k");
  s.h = detail::get_field<unsigned>(j, "h");
  s.lines = detail::get_field<std::vector<std::vector<unsigned>>>(j, "lines");
  return make_schema(std::move(s));
}

// -- blocks and families -----------------------------------------------------

inline json to_json(const Group& g, const OrderedBlock& b) {
  return {{"schema", to_json(*b.schema)}, {"points", to_json(g, b.points)}};
}

inline OrderedBlock block_from_json(const Group& g, const json& j) {
  return make_block(schema_from_json(detail::get_node(j, "schema")), elements_from_json(g, detail::get_node(j, "points")));
}

inline json to_json(const Kdf& f) {
  json blocks = json::array();
  for (const auto& b : f.blocks) blocks.push_back(to_json(*f.group, b));
  return {{"group", to_json(f.group->descriptor())},
          {"schema", to_json(*f.schema)},
          {"blocks", blocks},
          {"provenance", f.provenance}};
}

inline Kdf kdf_from_json(const json& j) {
  Kdf f;
  f.group = group_from_json(detail::get_node(j, "group"));
  f.schema = schema_from_json(detail::get_node(j, "schema"));
  for (const auto& b : detail::get_node(j, "blocks")) f.blocks.push_back(elements_from_json(*f.group, b));
  if (j.contains("provenance")) f.provenance = j.at("provenance");
  return f;
}

inline json to_json(const DifferenceFamily& f, std::optional<unsigned> lambda = {}) {
  json blocks = json::array();
  for (const auto& b : f.blocks) blocks.push_back(to_json(*f.group, b));
  json j{{"group", to_json(f.group->descriptor())}, {"blocks", blocks}};
  if (lambda) j["lambda"] = *lambda;
  return j;
}

inline DifferenceFamily df_from_json(const json& j) {
  DifferenceFamily f;
  f.group = group_from_json(detail::get_node(j, "group"));
  for (const auto& b : detail::get_node(j, "blocks")) f.blocks.push_back(elements_from_json(*f.group, b));
  return f;
}

inline json to_json(const DifferenceMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.rows) rows.push_back(to_json(*m.group, r));
  return {{"group", to_json(m.group->descriptor())}, {"rows", rows}};
}

inline DifferenceMatrix dm_from_json(const json& j) {
  DifferenceMatrix m;
  m.group = group_from_json(detail::get_node(j, "group"));
  for (const auto& r : detail::get_node(j, "rows")) m.rows.push_back(elements_from_json(*m.group, r));
  return m;
}

// -- kaleidoscopes ----------------------------------------------------------

inline json to_json(const Kaleidoscope& K) {
  json planes = json::array();
  bool colored = false;
  for (const auto& pl : K.planes) {
    json p = json::array();
    for (auto x : pl.points) p.push_back(K.group ? to_json(*K.group, Element{x}) : json(x));
    planes.push_back(p);
    colored = colored || !pl.coloring.empty();
  }
  json j{{"points", K.group ? to_json(K.group->descriptor()) : json(K.v)},
         {"schema", to_json(*K.schema)},
         {"planes", planes}};
  if (colored) {
    json c = json::array();
    for (const auto& pl : K.planes) {
      if (pl.coloring.empty()) {
        std::vector<std::uint32_t> id(K.schema->b());
        for (std::uint32_t i = 0; i < id.size(); ++i) id[i] = i;
        c.push_back(id);
      } else {
        c.push_back(pl.coloring);
      }
    }
    j["colorings"] = c;
  }
  return j;
}

inline Kaleidoscope kaleidoscope_from_json(const json& j) {
  Kaleidoscope K;
  const auto& pts = detail::get_node(j, "points");
  if (pts.is_object()) {
    K.group = group_from_json(pts);
    K.v = K.group->order();
  } else {
    K.v = detail::get_field<std::uint32_t>(j, "points");
  }
  K.schema = schema_from_json(detail::get_node(j, "schema"));
  for (const auto& p : detail::get_node(j, "planes")) {
    Plane pl;
    if (K.group) {
      for (auto e : elements_from_json(*K.group, p)) pl.points.push_back(e.index);
    } else {
      pl.points = p.get<std::vector<std::uint32_t>>();
    }
    K.planes.push_back(std::move(pl));
  }
  if (j.contains("colorings")) {
    const auto& c = j.at("colorings");
    if (!c.is_array() || c.size() != K.planes.size())
      throw Error(Errc::MalformedInput, "colorings must have one entry per plane");
    for (std::size_t i = 0; i < c.size(); ++i) K.planes[i].coloring = c[i].get<std::vector<std::uint32_t>>();
  }
  return K;
}

// -- plain designs (text) ----------------------------------------------------

/// First line "v=<n>", then one block per line as space-separated points.
/// Blank lines and lines starting with '#' are ignored.
inline BlockDesign parse_design(std::istream& in) {
  BlockDesign d;
  std::string line;
  bool have_v = false;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!have_v) {
      if (line.compare(first, 2, "v=") != 0) throw Error(Errc::MalformedInput, "design must start with 'v=<n>'");
      try {
        d.v = static_cast<std::uint32_t>(std::stoul(line.substr(first + 2)));
      } catch (const std::exception&) {
        throw Error(Errc::MalformedInput, "bad point count: " + line);
      }
      have_v = true;
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::uint32_t> blk;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        auto x = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        blk.push_back(static_cast<std::uint32_t>(x));
      } catch (const std::exception&) {
        throw Error(Errc::MalformedInput, "bad point '" + tok + "'");
      }
    }
    d.blocks.push_back(std::move(blk));
  }
  if (!have_v) throw Error(Errc::MalformedInput, "empty design file");
  return d;
}

inline BlockDesign parse_design(const std::string& text) {
  std::istringstream in(text);
  return parse_design(in);
}

inline std::string format_design(const BlockDesign& d) {
  std::ostringstream os;
  os << "v=" << d.v << '\n';
  for (const auto& b : d.blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
    os << '\n';
  }
  return os.str();
}

// -- reports ------------------------------------------------------------------

inline json to_json(const ExhaustionCertificate& c) {
  json j{{"v", c.v},
         {"schema", c.schema},
         {"normalizations", c.normalizations},
         {"split_depth", c.split_depth},
         {"subtrees", c.subtrees},
         {"nodes_visited", c.nodes_visited},
         {"solutions", c.solutions},
         {"exhausted", c.exhausted}};
  if (c.witness) {
    json w = json::array();
    for (const auto& b : *c.witness) {
      json a = json::array();
      for (auto e : b) a.push_back(e.index);
      w.push_back(a);
    }
    j["witness"] = w;
  }
  return j;
}

// -- files --------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedInput, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedInput, path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MalformedInput, "cannot write '" + path + "'");
  out << content;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace kaleido::io

#pragma once

// On-disk store of built families and kaleidoscopes, one JSON file each.
// File name: k<order>_<schema>_<key>.json, key = group descriptor hash for
// group-based artifacts and "plain" otherwise.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "kaleido/designs.hpp"
#include "kaleido/error.hpp"
#include "kaleido/io.hpp"

namespace kaleido {

struct CatalogEntry {
  std::string schema;
  std::uint32_t order = 0;
  std::string key;
  std::string type;  // "kdf" or "kaleidoscope"
  std::filesystem::path path;
};

class Catalog {
 public:
  explicit Catalog(std::filesystem::path root, bool verify_on_read = true)
      : root_(std::move(root)), verify_(verify_on_read) {}

  /// Flag wins over KALEIDO_CATALOG, which wins over ./catalog.
  static std::filesystem::path resolve_root(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("KALEIDO_CATALOG"); env && *env) return env;
    return "catalog";
  }

  const std::filesystem::path& root() const { return root_; }

  std::filesystem::path add(const Kdf& f) {
    if (!verify_kdf(f).valid) throw Error(Errc::InvalidKDF, "refusing to store an invalid family");
    nlohmann::json j{{"type", "kdf"}, {"artifact", io::to_json(f)}};
    return store(f.schema->name, f.group->order(), io::descriptor_hash(f.group->descriptor()), j);
  }

  std::filesystem::path add(const Kaleidoscope& K) {
    if (!verify_kaleidoscope(K).valid) throw Error(Errc::IngredientInvalid, "refusing to store an invalid kaleidoscope");
    nlohmann::json j{{"type", "kaleidoscope"}, {"artifact", io::to_json(K)}};
    auto key = K.group ? io::descriptor_hash(K.group->descriptor()) : std::string("plain");
    return store(K.schema->name, K.v, key, j);
  }

  std::vector<CatalogEntry> list() const {
    std::vector<CatalogEntry> out;
    if (!std::filesystem::exists(root_)) return out;
    for (const auto& de : std::filesystem::directory_iterator(root_)) {
      if (de.path().extension() != ".json") continue;
      auto e = parse_name(de.path());
      if (!e) continue;
      try {
        e->type = io::read_json(de.path().string()).value("type", "");
      } catch (const Error&) {
        continue;
      }
      out.push_back(*e);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::tie(a.schema, a.order, a.key) < std::tie(b.schema, b.order, b.key);
    });
    return out;
  }

  /// Loads an entry as a kaleidoscope, developing stored families.
  Kaleidoscope load(const CatalogEntry& e) const {
    auto j = io::read_json(e.path.string());
    const auto& art = io::detail::get_node(j, "artifact");
    Kaleidoscope K;
    if (j.value("type", "") == "kdf") {
      auto f = io::kdf_from_json(art);
      if (verify_ && !verify_kdf(f).valid) throw Error(Errc::InvalidKDF, e.path.string() + " fails verification");
      K = develop(f);
    } else {
      K = io::kaleidoscope_from_json(art);
    }
    if (verify_ && !verify_kaleidoscope(K).valid)
      throw Error(Errc::IngredientInvalid, e.path.string() + " fails verification");
    return K;
  }

  std::optional<Kaleidoscope> get(const std::string& schema, std::uint32_t order) const {
    for (const auto& e : list())
      if (e.schema == schema && e.order == order) return load(e);
    return std::nullopt;
  }

  /// One kaleidoscope per stored order, for PBD composition.
  std::map<std::uint32_t, Kaleidoscope> by_order(const std::string& schema) const {
    std::map<std::uint32_t, Kaleidoscope> out;
    for (const auto& e : list())
      if (e.schema == schema && !out.count(e.order)) out.emplace(e.order, load(e));
    return out;
  }

 private:
  std::filesystem::path store(const std::string& schema, std::uint32_t order, const std::string& key,
                              const nlohmann::json& j) {
    std::filesystem::create_directories(root_);
    auto path = root_ / ("k" + std::to_string(order) + "_" + schema + "_" + key + ".json");
    io::write_file(path.string(), io::dump(j));
    return path;
  }

  static std::optional<CatalogEntry> parse_name(const std::filesystem::path& p) {
    auto stem = p.stem().string();
    auto a = stem.find('_');
    auto b = stem.rfind('_');
    if (stem.size() < 2 || stem[0] != 'k' || a == std::string::npos || b <= a) return std::nullopt;
    CatalogEntry e;
    e.schema = stem.substr(a + 1, b - a - 1);
    e.key = stem.substr(b + 1);
    try {
      std::size_t used = 0;
      e.order = static_cast<std::uint32_t>(std::stoul(stem.substr(1, a - 1), &used));
      if (used != a - 1) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    e.path = p;
    return e;
  }

  std::filesystem::path root_;
  bool verify_;
};

}  // namespace kaleido

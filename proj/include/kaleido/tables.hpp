#pragma once

// Published initial blocks, transcribed once. Field elements are written in
// the notation accepted by Group::parse ("1+3t" means 1 + 3t in Z_p[t]/(m)).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kaleido/algebra.hpp"
#include "kaleido/error.hpp"
#include "kaleido/schema.hpp"
#include "kaleido/search.hpp"

namespace kaleido::tables {

struct Entry {
  std::uint32_t p = 0;
  unsigned degree = 1;
  std::vector<std::int64_t> modulus;  // low-to-high; empty for prime fields
  std::string schema;                 // "fano" or "hesse"
  std::optional<ParametricForm> form; // set: B(x) with `x`; unset: explicit `block`
  std::string x;
  std::vector<std::string> block;

  std::string label() const {
    return degree == 1 ? std::to_string(p) : std::to_string(p) + "^" + std::to_string(degree);
  }
};

namespace detail {

inline const std::vector<std::int64_t> kMinus3{-3, 0, 1};  // t^2 - 3
inline const std::vector<std::int64_t> kPlus1{1, 0, 1};    // t^2 + 1
inline const std::vector<std::int64_t> kMinus2{-2, 0, 1};  // t^2 - 2
inline const std::vector<std::int64_t> kCubeMinus2{-2, 0, 0, 1};  // t^3 - 2

inline std::vector<Entry> prime_x(const char* schema, ParametricForm form,
                                  std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> rows) {
  std::vector<Entry> out;
  for (auto [p, x] : rows) out.push_back({p, 1, {}, schema, form, std::to_string(x), {}});
  return out;
}

inline std::vector<Entry> square_x(const std::vector<std::int64_t>& m,
                                   std::initializer_list<std::pair<std::uint32_t, const char*>> rows) {
  std::vector<Entry> out;
  for (auto [p, x] : rows) out.push_back({p, 2, m, "fano", ParametricForm::fano_powers, x, {}});
  return out;
}

inline std::vector<Entry> explicit_blocks(const char* schema, unsigned degree,
                                          std::initializer_list<std::pair<std::uint32_t, std::vector<std::string>>> rows,
                                          std::initializer_list<std::vector<std::int64_t>> moduli = {}) {
  std::vector<Entry> out;
  auto mod = moduli.begin();
  for (const auto& [p, b] : rows) {
    Entry e{p, degree, {}, schema, std::nullopt, {}, b};
    if (mod != moduli.end()) e.modulus = *mod++;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids{"fano-2a",      "fano-2a-alt", "fano-2c",       "fano-2d",
                                            "fano-2e",      "hesse-primes", "hesse-alt",     "hesse-squares",
                                            "proposition-primes"};
  return ids;
}

/// Entries of a table; "proposition-primes" lists p with the block (0,...,6).
inline std::vector<Entry> table(std::string_view id) {
  using F = ParametricForm;
  if (id == "fano-2a")
    // (0,1,2,x,x+1,x^2+x,2x) over F_p
    return detail::prime_x("fano", F::fano_affine,
                           {{37, 13},  {67, 61},  {73, 35},  {97, 5},    {103, 18}, {109, 26}, {139, 47},
                            {151, 12}, {157, 84}, {163, 55}, {181, 61},  {193, 78}, {223, 143}, {229, 37},
                            {241, 20}, {271, 89}, {277, 47}, {283, 7},   {307, 23}, {313, 92}, {331, 48},
                            {349, 55}, {367, 34}, {373, 122}, {397, 19}, {409, 37}, {433, 24}, {439, 174},
                            {457, 147}, {487, 111}, {499, 87}, {523, 133}, {541, 10}, {571, 3}, {577, 80}});
  if (id == "fano-2a-alt")
    return detail::explicit_blocks("fano", 1,
                                   {{31, {"0", "1", "2", "12", "13", "27", "24"}},
                                    {43, {"0", "1", "2", "7", "8", "37", "38"}},
                                    {61, {"0", "1", "2", "5", "6", "41", "10"}},
                                    {79, {"0", "1", "2", "24", "25", "11", "48"}},
                                    {127, {"0", "1", "2", "12", "13", "87", "24"}},
                                    {199, {"0", "1", "2", "4", "5", "71", "8"}}});
  if (id == "fano-2c")
    // (1,x,...,x^6) over Z_p[t]/(t^2-3), p = 5 (mod 12)
    return detail::square_x(detail::kMinus3,
                            {{5, "4+t"},     {17, "6+3t"},    {29, "1+2t"},    {41, "3+15t"},   {53, "1+19t"},
                             {89, "1+15t"},  {101, "1+43t"},  {113, "1+39t"},  {137, "1+63t"},  {149, "1+17t"},
                             {173, "1+34t"}, {197, "2+18t"},  {233, "1+99t"},  {257, "1+33t"},  {269, "1+65t"},
                             {281, "1+7t"},  {293, "3+9t"},   {317, "1+27t"},  {353, "1+9t"},   {389, "1+11t"},
                             {401, "1+40t"}, {449, "1+8t"},   {461, "1+8t"},   {509, "1+103t"}, {521, "1+82t"},
                             {557, "1+7t"},  {569, "1+116t"}});
  if (id == "fano-2d")
    // (1,x,...,x^6) over Z_p[t]/(t^2+1), p = 11 (mod 12)
    return detail::square_x(detail::kPlus1,
                            {{11, "3+4t"},    {23, "1+11t"},   {47, "2+12t"},   {59, "2+15t"},   {71, "2+32t"},
                             {83, "2+3t"},    {107, "2+51t"},  {131, "1+22t"},  {167, "3+9t"},   {179, "1+8t"},
                             {191, "1+23t"},  {227, "1+91t"},  {239, "1+101t"}, {251, "1+42t"},  {263, "1+56t"},
                             {311, "2+41t"},  {347, "1+16t"},  {359, "1+157t"}, {383, "1+122t"}, {419, "1+30t"},
                             {431, "1+15t"},  {443, "1+122t"}, {467, "1+31t"},  {479, "1+103t"}, {491, "1+126t"},
                             {503, "1+50t"},  {563, "1+73t"}});
  if (id == "fano-2e")
    return {{13, 2, detail::kMinus2, "fano", ParametricForm::fano_affine, "6+2t", {}},
            {13, 3, detail::kCubeMinus2, "fano", ParametricForm::fano_powers, "10+7t+11t^2", {}}};
  if (id == "hesse-primes")
    // (0,1,x,...,x^7) over F_p
    return detail::prime_x("hesse", F::hesse_powers,
                           {{97, 14}, {103, 36}, {139, 61}, {163, 143}, {181, 66}, {223, 187}, {229, 184}, {277, 97}});
  if (id == "hesse-alt")
    // (b_inf, b_0, ..., b_7)
    return detail::explicit_blocks("hesse", 1,
                                   {{31, {"12", "0", "1", "3", "6", "13", "8", "28", "11"}},
                                    {37, {"24", "0", "1", "7", "3", "35", "29", "25", "17"}},
                                    {43, {"13", "0", "1", "3", "7", "8", "22", "17", "14"}},
                                    {61, {"50", "0", "1", "6", "5", "15", "10", "13", "14"}},
                                    {67, {"26", "0", "1", "6", "7", "18", "13", "12", "11"}},
                                    {73, {"3", "0", "1", "4", "6", "29", "27", "16", "17"}},
                                    {79, {"16", "0", "1", "4", "20", "12", "25", "7", "17"}}});
  if (id == "hesse-squares")
    // t stands for sqrt(3), sqrt(-1), sqrt(2) respectively; the lone "t" in the
    // 5^2 row is read as sqrt(3).
    return detail::explicit_blocks(
        "hesse", 2,
        {{5, {"1+3t", "0", "1", "2", "2+t", "t", "2t", "4+3t", "1+4t"}},
         {11, {"2t", "0", "1", "2", "3+t", "4+t", "1+4t", "3+3t", "1+2t"}},
         {13, {"2+12t", "0", "1", "2", "3+t", "4+t", "2+8t", "9+3t", "3+4t"}},
         {17, {"5+3t", "0", "1", "2", "3+t", "4+2t", "1+t", "2t", "1+3t"}},
         {23, {"1+11t", "0", "1", "2", "3+t", "4+t", "2t", "1+3t", "1+2t"}},
         {29, {"4t", "0", "1", "2", "2+t", "4+2t", "4+3t", "3+t", "1+4t"}}},
        {detail::kMinus3, detail::kPlus1, detail::kMinus2, detail::kMinus3, detail::kPlus1, detail::kMinus3});
  if (id == "proposition-primes")
    return detail::explicit_blocks("fano", 1,
                                   {{7, {"0", "1", "2", "3", "4", "5", "6"}},
                                    {541, {"0", "1", "2", "3", "4", "5", "6"}},
                                    {571, {"0", "1", "2", "3", "4", "5", "6"}},
                                    {877, {"0", "1", "2", "3", "4", "5", "6"}},
                                    {937, {"0", "1", "2", "3", "4", "5", "6"}}});
  throw Error(Errc::UnknownTable, std::string(id));
}

inline GroupPtr entry_field(const Entry& e) {
  if (e.degree == 1) return make_group(GroupDescriptor::prime_field(e.p));
  return make_group(GroupDescriptor::extension_field(e.p, e.modulus));
}

/// The ordered block an entry denotes.
inline Block entry_block(const Group& f, const Entry& e) {
  if (e.form) {
    auto b = parametric_block(f, *e.form, f.parse(e.x));
    if (!b) throw Error(Errc::NotAnInitialBlock, "entries of B(" + e.x + ") are not distinct");
    return *b;
  }
  Block b;
  for (const auto& s : e.block) b.push_back(f.parse(s));
  return b;
}

struct EntryResult {
  std::string label;
  std::string value;  // x or the block as written
  bool pass = false;
};

struct TableResult {
  std::string id;
  std::vector<EntryResult> entries;
  std::optional<std::vector<std::uint32_t>> computed_primes;  // proposition-primes only
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Re-checks a single entry with the full predicate (plus the reduced line
/// check for parametric entries).
inline bool check_entry(const Entry& e) {
  auto f = entry_field(e);
  auto table = cubic_table(f);
  Block b;
  try {
    b = entry_block(*f, e);
  } catch (const Error&) {
    return false;
  }
  if (e.form && !shortcut_passes(table, *e.form, f->parse(e.x))) return false;
  return verify_listed_block(table, *builtin_schema(e.schema), b);
}

inline TableResult reproduce(std::string_view id) {
  TableResult r;
  r.id = std::string(id);
  const auto entries = table(id);
  std::optional<std::vector<std::uint32_t>> primes;
  if (id == "proposition-primes") primes = proposition_primes(1000);
  for (const auto& e : entries) {
    EntryResult er{e.label(), e.form ? e.x : "", check_entry(e)};
    if (!e.form) {
      er.value = "(";
      for (std::size_t i = 0; i < e.block.size(); ++i) er.value += (i ? "," : "") + e.block[i];
      er.value += ")";
    }
    if (primes) er.pass = er.pass && std::find(primes->begin(), primes->end(), e.p) != primes->end();
    r.entries.push_back(std::move(er));
  }
  if (primes) {
    r.computed_primes = primes;
    if (primes->size() != entries.size()) r.entries.push_back({"count", std::to_string(primes->size()), false});
  }
  return r;
}

}  // namespace kaleido::tables

// kaleido: command-line front end.
//
// Exit status: 0 valid / found / built, 1 invalid / not found, 2 malformed input.
// JSON results go to stdout (or --output), a one-line summary to stderr.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <sstream>

#include "kaleido/kaleido.hpp"

using namespace kaleido;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kMalformed = 2;

struct Opts {
  std::uint32_t q = 0;
  std::string modulus;
  std::string schema = "fano";
  std::string file;
  std::string form;
  unsigned jobs = 1;
  std::uint64_t budget = 0;
  std::string catalog;
  std::string x;
  std::string block;
  std::string output;
  std::optional<unsigned> lambda;
  std::uint32_t v = 0;
  unsigned k = 0;
  std::string rows;
  std::string left, right, dm;
  bool flatten = false;
  bool existence = false;
  bool fallback = false;
  unsigned split_depth = 3;
  std::vector<std::string> constraints;
  std::string save;
  std::string table;
  std::uint32_t order = 0;
  bool no_verify = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::int64_t> parse_ints(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }), s.end());
  std::vector<std::int64_t> out;
  for (const auto& t : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw Error(Errc::MalformedInput, "bad integer '" + t + "'");
    }
  }
  return out;
}

GroupPtr field_from(const Opts& o) {
  if (o.q == 0) throw Error(Errc::MalformedInput, "--q is required");
  if (o.modulus.empty()) {
    if (!numth::is_prime(o.q)) throw Error(Errc::MalformedInput, "--q is not prime; pass --modulus");
    return make_group(GroupDescriptor::prime_field(o.q));
  }
  return make_field(o.q, parse_ints(o.modulus));
}

SchemaPtr schema_from(const std::string& s) {
  if (s == "fano" || s == "hesse") return builtin_schema(s);
  return io::schema_from_json(io::read_json(s));
}

json elements(const Group& g, std::span<const Element> b) {
  json a = json::array();
  for (auto e : b) a.push_back(io::to_json(g, e));
  return a;
}

json transversal_json(const CyclotomicTable& t) {
  return elements(t.field(), transversal(t.field(), TransversalMode::canonical));
}

json read_input(const Opts& o) {
  if (o.file.empty()) throw Error(Errc::MalformedInput, "--file is required");
  return io::read_json(o.file);
}

// -- verify -------------------------------------------------------------------

int verify_df_cmd(const Opts& o, json& out) {
  auto j = read_input(o);
  auto f = io::df_from_json(j);
  if (f.blocks.empty()) throw Error(Errc::MalformedInput, "no blocks");
  std::optional<unsigned> lambda = o.lambda;
  if (!lambda && j.contains("lambda")) lambda = j["lambda"].get<unsigned>();
  if (!lambda) lambda = implied_lambda(*f.group, f.blocks);
  if (!lambda) {
    out = {{"valid", false}, {"reason", "block count does not give an integral lambda"}};
    return kInvalid;
  }
  auto r = verify_df(*f.group, f.blocks, static_cast<unsigned>(f.blocks.front().size()), *lambda);
  out = {{"valid", r.valid},
         {"lambda", r.lambda},
         {"under", elements(*f.group, r.under)},
         {"over", elements(*f.group, r.over)}};
  return r.valid ? kOk : kInvalid;
}

int verify_kdf_cmd(const Opts& o, json& out) {
  auto f = io::kdf_from_json(read_input(o));
  auto r = verify_kdf(f);
  out = {{"valid", r.valid},
         {"underlying_valid", r.underlying_valid},
         {"failing_colors", r.failing_colors},
         {"order", f.group->order()},
         {"blocks", f.blocks.size()}};
  return r.valid ? kOk : kInvalid;
}

int verify_kaleidoscope_cmd(const Opts& o, json& out) {
  auto K = io::kaleidoscope_from_json(read_input(o));
  auto r = verify_kaleidoscope(K);
  out = {{"valid", r.valid},
         {"v", K.v},
         {"planes", K.planes.size()},
         {"cells", r.cells},
         {"zero_cells", r.zero_cells},
         {"excess_cells", r.excess_cells}};
  if (r.first)
    out["first"] = {{"x", r.first->x}, {"y", r.first->y}, {"color", r.first->color}, {"count", r.first->count}};
  return r.valid ? kOk : kInvalid;
}

int verify_dm_cmd(const Opts& o, json& out) {
  auto m = io::dm_from_json(read_input(o));
  auto r = verify_dm(m);
  out = {{"valid", r.valid}, {"rows", m.rows.size()}};
  if (r.failing_rows) out["failing_rows"] = {r.failing_rows->first, r.failing_rows->second};
  return r.valid ? kOk : kInvalid;
}

int verify_schema_cmd(const Opts& o, json& out) {
  Schema s;
  if (!o.file.empty()) {
    auto j = io::read_json(o.file);
    if (j.is_string()) {
      s = *builtin_schema(j.get<std::string>());
    } else {
      s.name = j.value("name", std::string("custom"));
      s.k = io::detail::get_field<unsigned>(j, "k");
      s.h = io::detail::get_field<unsigned>(j, "h");
      s.lines = io::detail::get_field<std::vector<std::vector<unsigned>>>(j, "lines");
    }
  } else {
    s = *builtin_schema(o.schema);
  }
  auto r = validate_schema(s);
  json v = json::array();
  for (const auto& p : r.violations) v.push_back({{"a", p.a}, {"b", p.b}, {"count", p.count}});
  out = {{"valid", r.valid}, {"name", s.name}, {"k", s.k}, {"h", s.h}, {"structural", r.structural}, {"violations", v}};
  if (r.valid) out["lambda_underlying"] = s.lambda_underlying();
  return r.valid ? kOk : kInvalid;
}

int verify_pbd_cmd(const Opts& o, json& out) {
  if (o.file.empty()) throw Error(Errc::MalformedInput, "--file is required");
  auto d = io::parse_design(io::read_file(o.file));
  auto r = verify_pbd(d);
  out = {{"valid", r.valid}, {"v", d.v}, {"blocks", d.blocks.size()}};
  if (r.first_pair) out["first_pair"] = {{"x", r.first_pair->first}, {"y", r.first_pair->second}, {"count", r.first_count}};
  return r.valid ? kOk : kInvalid;
}

int verify_block_cmd(const Opts& o, json& out) {
  auto f = field_from(o);
  auto t = cubic_table(f);
  auto schema = schema_from(o.schema);
  out = {{"field", io::to_json(f->descriptor())}};
  Block b;
  if (!o.x.empty()) {
    auto form = o.form.empty() ? (o.schema == "hesse" ? ParametricForm::hesse_powers : ParametricForm::fano_affine)
                               : parse_form(o.form);
    schema = form_schema(form);
    auto x = f->parse(o.x);
    out["form"] = to_string(form);
    out["x"] = io::to_json(*f, x);
    auto pb = parametric_block(*f, form, x);
    if (!pb) {
      out["valid"] = false;
      out["reason"] = "entries of B(x) are not distinct";
      return kInvalid;
    }
    b = *pb;
    out["shortcut"] = shortcut_passes(t, form, x);
  } else if (!o.block.empty()) {
    for (const auto& s : split(o.block, ',')) b.push_back(f->parse(s));
  } else if (!o.file.empty()) {
    b = io::elements_from_json(*f, io::read_json(o.file));
  } else {
    throw Error(Errc::MalformedInput, "give --x, --block or --file");
  }
  if (b.size() != schema->k) throw Error(Errc::MalformedInput, "block size does not match the schema");
  out["schema"] = io::to_json(*schema);
  out["block"] = elements(*f, b);
  auto fail = first_failing_line(t, *schema, b);
  out["valid"] = !fail.has_value();
  if (fail) out["failing_line"] = *fail;
  return fail ? kInvalid : kOk;
}

// -- search -------------------------------------------------------------------

SearchBudget budget_of(const Opts& o) {
  SearchBudget b;
  if (o.budget) b.max_candidates = o.budget;
  b.jobs = std::max(1u, o.jobs);
  return b;
}

void save_kdf(const Opts& o, const CyclotomicTable& t, SchemaPtr schema, const Block& b) {
  if (o.save.empty()) return;
  auto kdf = generate_kdf_from_initial_block(t, std::move(schema), b, TransversalMode::canonical);
  io::write_file(o.save, io::dump(io::to_json(kdf)));
}

int search_parametric_cmd(const Opts& o, json& out) {
  auto f = field_from(o);
  auto t = cubic_table(f);
  auto form = parse_form(o.form.empty() ? "fano-affine" : o.form);
  auto r = parametric_search(t, form, budget_of(o));
  out = {{"field", io::to_json(f->descriptor())}, {"form", to_string(form)}};
  if (!r) {
    out["x"] = nullptr;
    out["block"] = nullptr;
    return kInvalid;
  }
  out["x"] = io::to_json(*f, r->x);
  out["block"] = elements(*f, r->block);
  out["transversal"] = transversal_json(t);
  out["primitive"] = io::to_json(*f, t.primitive());
  save_kdf(o, t, form_schema(form), r->block);
  return kOk;
}

int search_asymptotic_cmd(const Opts& o, json& out) {
  auto f = field_from(o);
  auto t = cubic_table(f);
  auto schema = schema_from(o.schema);
  out = {{"field", io::to_json(f->descriptor())}, {"schema", io::to_json(*schema)}};
  std::optional<Block> b;
  std::string method = "constrained-chain";
  if (o.fallback) {
    if (auto r = find_initial_block(t, *schema, budget_of(o))) {
      b = r->block;
      method = r->method;
      if (r->x) out["x"] = io::to_json(*f, *r->x);
    }
  } else {
    b = asymptotic_initial_block(t, *schema);
  }
  out["method"] = method;
  if (!b) {
    out["block"] = nullptr;
    return kInvalid;
  }
  out["block"] = elements(*f, *b);
  out["transversal"] = transversal_json(t);
  out["primitive"] = io::to_json(*f, t.primitive());
  save_kdf(o, t, schema, *b);
  return kOk;
}

// "shift:c" with c an integer, or "shift:2^a+b" / "shift:3^a+b" for a class
// expressed through the class of 2 or 3.
CyclotomicConstraint parse_constraint(const Group& f, const std::string& s) {
  auto colon = s.rfind(':');
  if (colon == std::string::npos) throw Error(Errc::MalformedInput, "constraint must be shift:class");
  auto shift = f.parse(s.substr(0, colon));
  auto cls = s.substr(colon + 1);
  if (cls.size() > 2 && (cls[0] == '2' || cls[0] == '3') && cls[1] == '^') {
    auto rest = cls.substr(2);
    int coef = 0, off = 0;
    auto plus = rest.find('+');
    try {
      coef = std::stoi(rest.substr(0, plus));
      if (plus != std::string::npos) off = std::stoi(rest.substr(plus + 1));
    } catch (const std::exception&) {
      throw Error(Errc::MalformedInput, "bad class '" + cls + "'");
    }
    return {shift, cls[0] == '2' ? ClassExpr::of_two(coef, off) : ClassExpr::of_three(coef, off)};
  }
  auto c = parse_ints(cls);
  if (c.size() != 1) throw Error(Errc::MalformedInput, "bad class '" + cls + "'");
  return {shift, ClassExpr::fixed(static_cast<int>(c[0]))};
}

int search_constrained_cmd(const Opts& o, json& out) {
  auto f = field_from(o);
  auto t = cubic_table(f);
  std::vector<CyclotomicConstraint> cs;
  for (const auto& s : o.constraints) cs.push_back(parse_constraint(*f, s));
  auto r = find_constrained_element(t, cs, budget_of(o));
  json cj = json::array();
  for (const auto& c : cs) cj.push_back({{"shift", io::to_json(*f, c.shift)}, {"class", c.cls.resolve(t)}});
  out = {{"field", io::to_json(f->descriptor())},
         {"constraints", cj},
         {"element", r.element ? io::to_json(*f, *r.element) : json(nullptr)},
         {"candidates", r.candidates},
         {"exhausted", r.exhausted},
         {"contradicts_bound", r.contradicts_bound}};
  if (auto q = QTable::bound(cs.size())) out["bound"] = *q;
  return r.element ? kOk : kInvalid;
}

// -- compose / develop / replicate ------------------------------------------

int compose_dm_cmd(const Opts& o, json& out) {
  auto f = field_from(o);
  if (o.k == 0) throw Error(Errc::MalformedInput, "--k is required");
  auto m = field_dm(f, o.k);
  if (!o.rows.empty()) {
    std::vector<unsigned> rows;
    for (auto r : parse_ints(o.rows)) rows.push_back(static_cast<unsigned>(r));
    m = select_rows(m, rows);
  }
  out = io::to_json(m);
  return kOk;
}

int compose_kdf_cmd(const Opts& o, json& out) {
  if (o.left.empty() || o.right.empty()) throw Error(Errc::MalformedInput, "--left and --right are required");
  auto f = io::kdf_from_json(io::read_json(o.left));
  auto fp = io::kdf_from_json(io::read_json(o.right));
  // Z_p and the additive group of F_p share residues, so a field DM serves a cyclic family.
  auto additive = fp.group;
  if (fp.group->kind() == Group::Kind::cyclic && numth::is_prime(fp.group->order()))
    additive = make_group(GroupDescriptor::prime_field(fp.group->order()));
  auto m = o.dm.empty() ? field_dm(additive, f.schema->k) : io::dm_from_json(io::read_json(o.dm));
  if (m.group->descriptor() == additive->descriptor()) m.group = fp.group;
  auto r = compose_kdf(f, fp, m);
  if (o.flatten) r = flatten_to_cyclic(r);
  out = io::to_json(r);
  return verify_kdf(r).valid ? kOk : kInvalid;
}

int compose_pbd_cmd(const Opts& o, json& out) {
  if (o.file.empty()) throw Error(Errc::MalformedInput, "--file is required");
  auto d = io::parse_design(io::read_file(o.file));
  Catalog cat(Catalog::resolve_root(o.catalog.empty() ? std::nullopt : std::optional<std::string>(o.catalog)),
              !o.no_verify);
  auto K = pbd_compose(d, cat.by_order(o.schema));
  out = io::to_json(K);
  return verify_kaleidoscope(K).valid ? kOk : kInvalid;
}

int develop_cmd(const Opts& o, json& out) {
  auto f = io::kdf_from_json(read_input(o));
  out = io::to_json(develop(f));
  return kOk;
}

int replicate_cmd(const Opts& o, json& out) {
  if (o.file.empty()) throw Error(Errc::MalformedInput, "--file is required");
  auto d = io::parse_design(io::read_file(o.file));
  out = io::to_json(replicate(d, schema_from(o.schema)));
  return kOk;
}

int nonexistence_cmd(const Opts& o, json& out) {
  ExhaustiveOptions opt;
  opt.existence_only = o.existence;
  opt.jobs = std::max(1u, o.jobs);
  opt.split_depth = o.split_depth;
  auto c = exhaustive_nonexistence(o.v, schema_from(o.schema), opt);
  out = io::to_json(c);
  return c.solutions ? kOk : kInvalid;
}

int reproduce_cmd(const Opts& o, json& out) {
  auto r = tables::reproduce(o.table);
  json entries = json::array();
  std::size_t passed = 0;
  for (const auto& e : r.entries) {
    entries.push_back({{"label", e.label}, {"value", e.value}, {"pass", e.pass}});
    passed += e.pass;
  }
  out = {{"table", r.id}, {"entries", entries}, {"passed", passed}, {"total", r.entries.size()}};
  if (r.computed_primes) out["computed_primes"] = *r.computed_primes;
  return r.all_pass() ? kOk : kInvalid;
}

// -- catalog ------------------------------------------------------------------

Catalog open_catalog(const Opts& o) {
  return Catalog(Catalog::resolve_root(o.catalog.empty() ? std::nullopt : std::optional<std::string>(o.catalog)),
                 !o.no_verify);
}

int catalog_add_cmd(const Opts& o, json& out) {
  auto j = read_input(o);
  auto cat = open_catalog(o);
  std::filesystem::path p;
  if (j.contains("planes")) p = cat.add(io::kaleidoscope_from_json(j));
  else p = cat.add(io::kdf_from_json(j));
  out = {{"stored", p.string()}};
  return kOk;
}

int catalog_list_cmd(const Opts& o, json& out) {
  out = json::array();
  for (const auto& e : open_catalog(o).list())
    out.push_back({{"schema", e.schema}, {"order", e.order}, {"key", e.key}, {"type", e.type}, {"path", e.path.string()}});
  return kOk;
}

int catalog_get_cmd(const Opts& o, json& out) {
  auto K = open_catalog(o).get(o.schema, o.order);
  if (!K) {
    out = nullptr;
    return kInvalid;
  }
  out = io::to_json(*K);
  return kOk;
}

std::string summary(const std::string& cmd, int code, const json& out) {
  std::string s = cmd + ": ";
  s += code == kOk ? "ok" : "no";
  if (out.is_object()) {
    if (out.contains("valid")) s += out["valid"].get<bool>() ? " (valid)" : " (invalid)";
    if (out.contains("passed")) s += " " + out["passed"].dump() + "/" + out["total"].dump() + " pass";
    if (out.contains("x") && !out["x"].is_null()) s += " x=" + out["x"].dump();
    if (out.contains("solutions")) s += " solutions=" + out["solutions"].dump() + " nodes=" + out["nodes_visited"].dump();
  }
  return s;
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::InvalidKDF:
    case Errc::NotAUnitalDesign:
    case Errc::IngredientInvalid:
    case Errc::MissingIngredient:
    case Errc::InvalidPBD:
    case Errc::NotAnInitialBlock:
      return kInvalid;
    default:
      return kMalformed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kaleidoscope designs: construction, search and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Opts o;
  std::string command;
  std::function<int(const Opts&, json&)> run;

  auto field_flags = [&](CLI::App* c) {
    c->add_option("--q", o.q, "field order");
    c->add_option("--modulus", o.modulus, "modulus coefficients, low to high (e.g. -3,0,1)");
  };
  auto bind = [&](CLI::App* c, std::string name, std::function<int(const Opts&, json&)> fn) {
    c->callback([&, name = std::move(name), fn = std::move(fn)] {
      command = name;
      run = fn;
    });
  };
  app.add_option("-o,--output", o.output, "write JSON here instead of stdout");

  auto* verify = app.add_subcommand("verify", "check an artifact")->require_subcommand(1);
  for (auto [name, fn] : std::vector<std::pair<std::string, std::function<int(const Opts&, json&)>>>{
           {"df", verify_df_cmd}, {"kdf", verify_kdf_cmd}, {"kaleidoscope", verify_kaleidoscope_cmd},
           {"dm", verify_dm_cmd}, {"schema", verify_schema_cmd}, {"pbd", verify_pbd_cmd}}) {
    auto* c = verify->add_subcommand(name);
    c->add_option("--file", o.file);
    if (name == "df") c->add_option("--lambda", o.lambda);
    if (name == "schema") c->add_option("--schema", o.schema);
    bind(c, "verify " + name, fn);
  }
  {
    auto* c = verify->add_subcommand("block", "initial-block predicate");
    field_flags(c);
    c->add_option("--schema", o.schema);
    c->add_option("--form", o.form, "fano-affine | fano-powers | hesse-powers");
    c->add_option("--x", o.x);
    c->add_option("--block", o.block, "comma-separated elements");
    c->add_option("--file", o.file, "JSON array of elements");
    bind(c, "verify block", verify_block_cmd);
  }

  auto* search = app.add_subcommand("search", "look for an initial block")->require_subcommand(1);
  {
    auto* c = search->add_subcommand("parametric");
    field_flags(c);
    c->add_option("--form", o.form);
    c->add_option("--jobs", o.jobs);
    c->add_option("--budget", o.budget, "max candidates");
    c->add_option("--save", o.save, "write the generated KDF here");
    bind(c, "search parametric", search_parametric_cmd);
  }
  {
    auto* c = search->add_subcommand("asymptotic");
    field_flags(c);
    c->add_option("--schema", o.schema);
    c->add_flag("--fallback", o.fallback, "try the parametric forms first and prefix backtracking last");
    c->add_option("--jobs", o.jobs);
    c->add_option("--budget", o.budget);
    c->add_option("--save", o.save);
    bind(c, "search asymptotic", search_asymptotic_cmd);
  }
  {
    auto* c = search->add_subcommand("constrained");
    field_flags(c);
    c->add_option("--constraint", o.constraints, "shift:class, repeatable");
    c->add_option("--jobs", o.jobs);
    c->add_option("--budget", o.budget);
    bind(c, "search constrained", search_constrained_cmd);
  }

  auto* compose = app.add_subcommand("compose", "product and PBD constructions")->require_subcommand(1);
  {
    auto* c = compose->add_subcommand("dm", "field difference matrix");
    field_flags(c);
    c->add_option("--k", o.k);
    c->add_option("--rows", o.rows, "comma-separated row indices");
    bind(c, "compose dm", compose_dm_cmd);
  }
  {
    auto* c = compose->add_subcommand("kdf");
    c->add_option("--left", o.left)->required();
    c->add_option("--right", o.right)->required();
    c->add_option("--dm", o.dm);
    c->add_flag("--flatten", o.flatten, "relabel onto a cyclic group");
    bind(c, "compose kdf", compose_kdf_cmd);
  }
  {
    auto* c = compose->add_subcommand("pbd");
    c->add_option("--file", o.file);
    c->add_option("--schema", o.schema);
    c->add_option("--catalog", o.catalog);
    c->add_flag("--no-verify", o.no_verify);
    bind(c, "compose pbd", compose_pbd_cmd);
  }

  auto* dev = app.add_subcommand("develop", "KDF to kaleidoscope");
  dev->add_option("--file", o.file);
  bind(dev, "develop", develop_cmd);

  auto* rep = app.add_subcommand("replicate", "2-(v,k,1) design to kaleidoscope");
  rep->add_option("--file", o.file);
  rep->add_option("--schema", o.schema);
  bind(rep, "replicate", replicate_cmd);

  auto* non = app.add_subcommand("nonexistence", "exhaustive search over Z_v");
  non->add_option("--v", o.v)->required();
  non->add_option("--schema", o.schema);
  non->add_option("--jobs", o.jobs);
  non->add_option("--split-depth", o.split_depth);
  non->add_flag("--existence", o.existence, "stop at the first solution");
  bind(non, "nonexistence", nonexistence_cmd);

  auto* repro = app.add_subcommand("reproduce", "re-check an embedded table");
  repro->add_option("table", o.table)->required();
  bind(repro, "reproduce", reproduce_cmd);

  auto* cat = app.add_subcommand("catalog", "stored artifacts")->require_subcommand(1);
  {
    auto* c = cat->add_subcommand("add");
    c->add_option("--file", o.file);
    c->add_option("--catalog", o.catalog);
    bind(c, "catalog add", catalog_add_cmd);
    auto* l = cat->add_subcommand("list");
    l->add_option("--catalog", o.catalog);
    bind(l, "catalog list", catalog_list_cmd);
    auto* g = cat->add_subcommand("get");
    g->add_option("--schema", o.schema);
    g->add_option("--order", o.order)->required();
    g->add_option("--catalog", o.catalog);
    g->add_flag("--no-verify", o.no_verify);
    bind(g, "catalog get", catalog_get_cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  json out;
  int code = kMalformed;
  try {
    code = run(o, out);
  } catch (const Error& e) {
    std::cerr << command << ": " << e.what() << '\n';
    code = exit_code_for(e.code());
    std::cout << json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump() << '\n';
    return code;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << '\n';
    std::cout << json{{"error", "MalformedInput"}, {"message", e.what()}}.dump() << '\n';
    return kMalformed;
  }

  if (o.output.empty()) {
    std::cout << io::dump(out);
  } else {
    try {
      io::write_file(o.output, io::dump(out));
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kMalformed;
    }
  }
  std::cerr << summary(command, code, out) << '\n';
  return code;
}

#ifndef LINCAT_CLI_HPP
#define LINCAT_CLI_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lincat/catalog.hpp"
#include "lincat/equivalence.hpp"
#include "lincat/io.hpp"
#include "lincat/lifting.hpp"
#include "lincat/moduli.hpp"

namespace lincat::cli {

/// Exit codes: 0 success, 1 negative verdict of a check, 2 bad input.
enum Exit : int { Ok = 0, Negative = 1, BadInput = 2 };

struct Options {
  std::string field = "Q";
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  std::uint64_t cap = std::uint64_t{1} << 24;
  std::string format = "json";
};

/// What a subcommand hands back; `violations` nonempty means ok = false.
struct Outcome {
  Json result = Json::object();
  std::vector<Violation> violations;
  int code = Ok;
};

namespace detail {

inline Field field_of(const Options& o) {
  if (o.field == "Q") return Field::rationals();
  if (o.field == "Fp") {
    if (o.p == 0) throw Error(ErrorKind::BadParams, "--field Fp needs --p");
    return Field::prime(o.p);
  }
  throw Error(ErrorKind::BadParams, "unknown field '" + o.field + "'");
}

inline Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A file path if one exists, otherwise a catalog name over `f`.
inline LinCat load_category(const std::string& arg, const Field& f, const std::filesystem::path& base = {}) {
  const std::filesystem::path p = base.empty() ? std::filesystem::path(arg) : base / arg;
  if (std::filesystem::is_regular_file(p)) return category_from_json(read_json(p));
  return catalog(arg, f);
}

/// References inside a file resolve against the file's directory and its
/// "field" key when present.
inline CategoryResolver resolver_for(const std::string& file, const Json& doc, const Field& fallback) {
  const Field f = doc.is_object() && doc.contains("field") ? field_from_json(doc.at("field")) : fallback;
  const std::filesystem::path base = std::filesystem::path(file).parent_path();
  return [f, base](const Json& ref) {
    if (ref.is_object()) return category_from_json(ref);
    if (!ref.is_string()) throw Error(ErrorKind::ParseError, "category references are objects or strings");
    return load_category(ref.get<std::string>(), f, base);
  };
}

inline std::vector<Violation> nonzero_coordinates(const std::string& label, const Vector& v, std::size_t limit = 64) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < v.size() && out.size() < limit; ++i)
    if (!v[i].is_zero()) out.push_back({label, {i + 1}, v[i].to_string()});
  return out;
}

inline std::vector<std::size_t> parse_list(const std::string& s, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParams, std::string("bad entry '") + item + "' in " + what);
    }
  }
  return out;
}

inline long parse_positive(const std::string& s, const char* what) {
  const auto v = parse_list(s, what);
  if (v.size() != 1) throw Error(ErrorKind::BadParams, std::string(what) + " must be a single integer");
  return static_cast<long>(v[0]);
}

struct SystemChoice {
  PolySystem system;
  std::optional<GraphType> graph;  // set when points are categories
  std::optional<Field> field;
};

/// cat <category> | ass <n> | com <n> | bim <B> <C> <m> | fct <C> <D> <x,…>
inline SystemChoice system_from_args(const std::vector<std::string>& args, const Options& o) {
  if (args.empty()) throw Error(ErrorKind::BadParams, "missing system kind");
  const std::string& kind = args[0];
  const Field f = field_of(o);
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1) throw Error(ErrorKind::BadParams, kind + " takes " + std::to_string(n) + " argument(s)");
  };
  if (kind == "cat") {
    need(1);
    const LinCat c = load_category(args[1], f);
    return {cat_system(c.graph(), c.field()), c.graph(), c.field()};
  }
  if (kind == "ass" || kind == "com") {
    need(1);
    const long n = parse_positive(args[1], "dimension");
    auto s = kind == "ass" ? ass_system(n, f) : com_system(n, f);
    return {std::move(s), GraphType({"0"}, {static_cast<std::size_t>(n)}), f};
  }
  if (kind == "bim") {
    need(3);
    return {bim_system(load_category(args[1], f), load_category(args[2], f), parse_positive(args[3], "rank")), std::nullopt, std::nullopt};
  }
  if (kind == "fct") {
    need(3);
    const LinCat c = load_category(args[1], f), d = load_category(args[2], f);
    std::vector<std::size_t> map;
    std::stringstream ss(args[3]);
    std::string name;
    while (std::getline(ss, name, ',')) map.push_back(d.index(name));
    return {fct_system(c, d, map), std::nullopt, std::nullopt};
  }
  throw Error(ErrorKind::BadParams, "unknown system kind '" + kind + "'");
}

inline Json report(const std::string& command, const Outcome& out, const std::optional<Json>& error, double ms) {
  Json r;
  r["ok"] = out.violations.empty() && !error && out.code == Ok;
  r["command"] = command;
  r["result"] = out.result;
  r["violations"] = violations_to_json(out.violations);
  if (error) r["error"] = *error;
  r["timing_ms"] = ms;
  return r;
}

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::AxiomViolation:
    case ErrorKind::NotACocycle:
    case ErrorKind::NotAPoint:
      return Negative;
    default:
      return BadInput;
  }
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes its JSON report (or, for
/// `catalog`, the category file) to `out`. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Exact computations with finite linear categories"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--field", opt.field, "Base field: Q or Fp")->check(CLI::IsMember({"Q", "Fp"}));
  app.add_option("--p", opt.p, "Prime for --field Fp, or the prime searched by enumerate");
  app.add_option("--seed", opt.seed, "Seed for randomized searches");
  app.add_option("--cap", opt.cap, "Bound on exhaustive searches");
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json"}));

  std::string cat_arg, second_arg, system_file, point_arg, output_file, fragment_file;
  std::vector<std::string> kind_args;
  std::size_t max_degree = 2, samples = 4;

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* validate = sub("validate", "Check the category axioms");
  validate->add_option("category", cat_arg, "Category file or catalog name")->required();
  auto* hh = sub("hh", "Hochschild cohomology dimensions");
  hh->add_option("category", cat_arg)->required();
  hh->add_option("--max-degree", max_degree, "Highest degree (at most 4)");
  auto* deform_cmd = sub("deform", "First-order deformation by a 2-cocycle");
  deform_cmd->add_option("category", cat_arg)->required();
  deform_cmd->add_option("cocycle", second_arg, "Cochain file")->required();
  auto* triv = sub("trivialize", "Solve df = mu");
  triv->add_option("category", cat_arg)->required();
  triv->add_option("cocycle", second_arg)->required();
  auto* center_cmd = sub("center", "Center of the category");
  center_cmd->add_option("category", cat_arg)->required();
  auto* der = sub("derivations", "Derivations and inner derivations");
  der->add_option("category", cat_arg)->required();
  auto* morita = sub("morita", "Morita check of a functor");
  morita->add_option("functor", cat_arg, "Functor file")->required();
  auto* bim = sub("bimodule-check", "Validate a bimodule and test invertibility");
  bim->add_option("bimodule", cat_arg, "Bimodule file")->required();
  auto* kar = sub("karoubi", "Karoubi fragment, splitting and embedding");
  kar->add_option("category", cat_arg)->required();
  kar->add_option("--fragment", fragment_file, "File with the fragment's objects");
  kar->add_option("--samples", samples, "Random conjugates per idempotent");
  auto* lift = sub("lift", "Lift idempotents over the dual numbers");
  lift->add_option("file", cat_arg, "Matrix or family file")->required();
  auto* tangent = sub("tangent", "Tangent spaces and the normalized cocycle inclusion");
  tangent->add_option("category", cat_arg);
  tangent->add_option("--system", system_file, "Equation file");
  tangent->add_option("--point", point_arg, "Comma separated coordinates");
  auto* emit = sub("emit-equations", "Write a polynomial system");
  emit->add_option("kind", kind_args, "cat C | ass n | com n | bim B C m | fct C D x,...")->required();
  emit->add_option("--output", output_file, "Also write the equation text here");
  auto* enumerate = sub("enumerate", "Points of a system over F_p");
  enumerate->add_option("kind", kind_args, "As for emit-equations");
  enumerate->add_option("--system", system_file, "Equation file");
  auto* cat_cmd = sub("catalog", "Print a catalog category file");
  cat_cmd->add_option("name", cat_arg)->required();

  std::string command;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  auto emit_report = [&](const Outcome& o, const std::optional<Json>& error) {
    out << detail::report(command, o, error, elapsed()).dump(2) << "\n";
    if (o.code == Ok && (!o.violations.empty() || error)) return static_cast<int>(Negative);
    return o.code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    Outcome o;
    o.code = BadInput;
    return emit_report(o, Json{{"kind", "ParseError"}, {"message", e.what()}});
  }
  command = app.get_subcommands().front()->get_name();

  Outcome o;
  try {
    const Field F = detail::field_of(opt);
    SearchOptions search;
    search.seed = opt.seed;
    search.cap = opt.cap;

    if (command == "catalog") {
      out << dump_category(catalog(cat_arg, F));
      return Ok;
    }
    if (command == "validate") {
      const std::filesystem::path p(cat_arg);
      const LinCat c = std::filesystem::is_regular_file(p) ? category_from_json(detail::read_json(p)) : catalog(cat_arg, F);
      o.result = Json{{"valid", true}, {"objects", c.size()}, {"total_dim", c.total_dim()}};
    } else if (command == "hh") {
      const LinCat c = detail::load_category(cat_arg, F);
      Json dims = Json::array(), cocycles = Json::array(), coboundaries = Json::array(), cochains = Json::array();
      for (std::size_t n = 0; n <= max_degree; ++n) {
        const auto r = cohomology(c, n);
        dims.push_back(r.dim_hh);
        cocycles.push_back(r.dim_cocycles);
        coboundaries.push_back(r.dim_coboundaries);
        cochains.push_back(r.dim_cochains);
      }
      o.result = Json{{"hh", dims}, {"cocycles", cocycles}, {"coboundaries", coboundaries}, {"cochains", cochains}};
    } else if (command == "deform" || command == "trivialize") {
      const LinCat c = detail::load_category(cat_arg, F);
      const Cochain mu = cochain_from_json(c, detail::read_json(second_arg));
      if (mu.degree != 2) throw Error(ErrorKind::ShapeMismatch, "a deformation needs a 2-cochain");
      const Cochain dmu = differential(c, mu);
      const bool cocycle = is_zero(dmu.coords);
      if (!cocycle) {
        o.violations = detail::nonzero_coordinates("dmu", dmu.coords);
        o.result = command == "deform" ? Json{{"cocycle", false}, {"deformed_valid", deformed_law(c, mu.coords).is_valid()}}
                                       : Json{{"cocycle", false}};
      } else if (command == "deform") {
        const DeformedCat d = deform(c, mu);
        Json corr = Json::object();
        for (std::size_t x = 0; x < c.size(); ++x) corr[c.object(x)] = vector_to_json(epsilon_part(d.law.unit(x)));
        o.result = Json{{"cocycle", true}, {"deformed_valid", d.law.is_valid()}, {"unit_correction", corr}};
      } else {
        const Trivialization t = trivialize(c, mu);
        o.result = Json{{"cocycle", true}, {"trivial", t.trivial}, {"f", t.trivial ? cochain_to_json(c, t.f) : Json(nullptr)}};
      }
    } else if (command == "center") {
      const LinCat c = detail::load_category(cat_arg, F);
      const CenterReport r = center(c);
      Json table = Json::array();
      for (const auto& row : r.table) {
        Json jr = Json::array();
        for (const auto& v : row) jr.push_back(vector_to_json(v));
        table.push_back(std::move(jr));
      }
      o.result = Json{{"dim", r.basis.dim()}, {"basis", basis_to_json(r.basis)}, {"table", table}};
    } else if (command == "derivations") {
      const LinCat c = detail::load_category(cat_arg, F);
      const Subspace d = derivations(c), inner = inner_derivations(c);
      o.result = Json{{"dim", d.dim()}, {"inner_dim", inner.dim()}, {"outer_dim", d.dim() - inner.dim()}, {"basis", basis_to_json(d)}};
    } else if (command == "morita") {
      const Json doc = detail::read_json(cat_arg);
      const LinFunctor f = functor_from_json(doc, detail::resolver_for(cat_arg, doc, F));
      const auto r = morita_check(f);
      o.result = Json{{"invertible", r.invertible},
                      {"reason", r.reason},
                      {"fully_faithful", is_fully_faithful(f)},
                      {"bimodule_dim", bimodule_of_functor(f).dim()}};
      if (!r.invertible) o.violations.push_back({"Morita", {}, r.reason});
    } else if (command == "bimodule-check") {
      const Json doc = detail::read_json(cat_arg);
      const Bimodule v = bimodule_from_json(doc, detail::resolver_for(cat_arg, doc, F));
      o.violations = v.violations(64);
      if (o.violations.empty()) {
        const auto r = is_invertible(v);
        o.result = Json{{"valid", true}, {"invertible", r.invertible}, {"reason", r.reason}};
      } else {
        o.result = Json{{"valid", false}};
      }
    } else if (command == "karoubi") {
      const LinCat c = detail::load_category(cat_arg, F);
      std::vector<KaroubiObject> objs;
      if (!fragment_file.empty()) {
        const Json doc = detail::read_json(fragment_file);
        for (const auto& j : lincat::detail::member(doc, "objects")) objs.push_back(karoubi_object_from_json(c, j));
      } else {
        objs.push_back(KaroubiObject::zero());
        for (std::size_t x = 0; x < c.size(); ++x) objs.push_back(KaroubiObject::unit(c, x));
        if (c.size() > 0) objs.push_back(KaroubiObject::power(c, 0, 2));
      }
      const KaroubiFragment frag = build_fragment(c, objs);
      KaroubianOptions kopt;
      kopt.samples = samples;
      kopt.search = search;
      const auto k = is_karoubian_within(frag, kopt);
      Json jo = Json::array();
      for (const auto& ob : frag.objects) jo.push_back(karoubi_object_to_json(c, ob));
      Json dims = Json::array();
      for (std::size_t a = 0; a < frag.objects.size(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < frag.objects.size(); ++b) row.push_back(frag.realized.dim(a, b));
        dims.push_back(std::move(row));
      }
      o.result = Json{{"objects", jo},
                      {"dims", dims},
                      {"karoubian",
                       {{"has_zero", k.has_zero},
                        {"has_biproducts", k.has_biproducts},
                        {"unsplit", k.unsplit.size()},
                        {"tested", k.tested},
                        {"karoubian", k.karoubian}}}};
      try {
        const LinFunctor e = embed(c, frag);
        o.result["embedding"] = Json{{"fully_faithful", is_fully_faithful(e)}, {"morita", morita_check(e).invertible}};
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::MissingUnits) throw;
        o.result["embedding"] = nullptr;
      }
    } else if (command == "lift") {
      const Json doc = detail::read_json(cat_arg);
      const Field lf = doc.contains("field") ? field_from_json(doc.at("field")) : F;
      if (doc.contains("matrix")) {
        o.result = Json{{"matrix", dual_matrix_to_json(lift_idempotent(dual_matrix_from_json(doc.at("matrix"), lf)))}};
      } else {
        std::vector<DualMatrix> fam;
        for (const auto& m : lincat::detail::member(doc, "family")) fam.push_back(dual_matrix_from_json(m, lf));
        Json res = Json::array();
        for (const auto& q : lift_orthogonal_family(fam)) res.push_back(dual_matrix_to_json(q));
        o.result = Json{{"family", res}};
      }
    } else if (command == "tangent") {
      if (!system_file.empty()) {
        const PolySystem s = PolySystem::parse(detail::read_text(system_file), F);
        Vector pt;
        if (!point_arg.empty()) {
          std::stringstream ss(point_arg);
          std::string item;
          while (std::getline(ss, item, ',')) pt.push_back(F.parse(item));
        }
        try {
          const Subspace t = tangent_space(s, pt);
          o.result = Json{{"dim", t.dim()}, {"basis", basis_to_json(t)}};
        } catch (const NotAPoint& e) {
          o.violations = e.residuals();
          o.result = Json{{"point", false}};
        }
      } else {
        if (cat_arg.empty()) throw Error(ErrorKind::BadParams, "tangent needs a category or --system");
        const LinCat c = detail::load_category(cat_arg, F);
        const auto r = check_hz2_inclusion(c);
        o.result = Json{{"dim_hz2", r.dim_hz2},
                        {"dim_normalized", r.dim_normalized},
                        {"dim_tangent", r.dim_tangent},
                        {"inclusion", r.inclusion}};
        for (auto i : r.outside) o.violations.push_back({"Inclusion", {i + 1}, "normalized cocycle outside the tangent space"});
      }
    } else if (command == "emit-equations") {
      const auto choice = detail::system_from_args(kind_args, opt);
      const std::string text = choice.system.to_text();
      if (!output_file.empty()) {
        std::ofstream f(output_file);
        if (!f) throw Error(ErrorKind::BadParams, "cannot write '" + output_file + "'");
        f << text;
      }
      o.result = Json{{"kind", choice.system.kind},
                      {"variables", choice.system.variables.size()},
                      {"equations", choice.system.equations.size()},
                      {"text", text}};
    } else if (command == "enumerate") {
      if (opt.p == 0) throw Error(ErrorKind::BadParams, "enumerate needs --p");
      detail::SystemChoice choice;
      if (!system_file.empty()) choice.system = PolySystem::parse(detail::read_text(system_file), F);
      else choice = detail::system_from_args(kind_args, opt);
      const auto r = enumerate_points(choice.system, opt.p, opt.cap);
      Json pts = Json::array();
      for (const auto& pt : r.points) {
        if (choice.graph) category_from_point(*choice.graph, Field::prime(opt.p), pt);
        Json jp = Json::array();
        for (const auto& s : pt) jp.push_back(s.residue_value());
        pts.push_back(std::move(jp));
      }
      o.result = Json{{"p", opt.p}, {"searched", r.searched}, {"count", r.points.size()}, {"points", pts},
                      {"revalidated", choice.graph.has_value()}};
    }
  } catch (const AxiomViolation& e) {
    o.violations = e.violations();
    o.code = Negative;
    return emit_report(o, Json{{"kind", to_string(e.kind())}, {"message", e.what()}});
  } catch (const Error& e) {
    o.code = detail::exit_code(e.kind());
    return emit_report(o, Json{{"kind", to_string(e.kind())}, {"message", e.what()}});
  } catch (const std::exception& e) {
    o.code = Negative;
    return emit_report(o, Json{{"kind", "InternalError"}, {"message", e.what()}});
  }
  return emit_report(o, std::nullopt);
}

}  // namespace lincat::cli

#endif  // LINCAT_CLI_HPP

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "lincat/cli.hpp"
#include "lincat/lincat.hpp"

using namespace lincat;

namespace {

const Field Q = Field::rationals();

struct Check {
  bool ok = true;
  std::string first_failure;

  void operator()(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

std::vector<std::string> all_names() {
  std::vector<std::string> names = catalog_basic_names();
  for (const auto& n : catalog_composite_names()) names.push_back(n);
  return names;
}

Scalar small(std::mt19937_64& rng) { return Q.from_int(static_cast<long>(rng() % 7) - 3); }

Vector random_vector(std::size_t n, std::mt19937_64& rng) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(small(rng));
  return v;
}

std::vector<std::size_t> hh_dims(const LinCat& c) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= 2; ++n) out.push_back(cohomology(c, n).dim_hh);
  return out;
}

void differentials_square_to_zero(Check& check) {
  for (const auto& name : all_names())
    for (const Field& f : {Q, Field::prime(2), Field::prime(3)}) {
      const LinCat c = catalog(name, f);
      for (std::size_t n = 0; n <= 2; ++n)
        check((differential_sparse(c, n + 1) * differential_sparse(c, n)).is_zero(),
              name + " over " + f.name() + " in degree " + std::to_string(n));
    }
}

void cocycles_are_deformations(Check& check) {
  const Field f = Field::prime(2);
  const LinCat iv = interval(f);
  const SparseMatrix d2 = differential_sparse(iv, 2);
  const std::size_t n = CochainSpace(iv, 2).dim();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector mu;
    for (std::size_t i = 0; i < n; ++i) mu.push_back(f.from_int((mask >> i) & 1));
    check(is_zero(d2.apply(mu)) == deformed_law(iv, mu).is_valid(), "cochain mask " + std::to_string(mask));
  }
}

void hochschild_table(Check& check) {
  using V = std::vector<std::size_t>;
  const std::vector<std::pair<std::string, V>> table{
      {"field", {1, 0, 0}}, {"m2", {1, 0, 0}}, {"interval", {1, 0, 0}}, {"tpoly2", {2, 1, 1}}};
  for (const auto& [name, expected] : table) {
    const LinCat c = catalog(name, Q);
    check(hh_dims(c) == expected, name + " dimensions");
    std::optional<IdempotentFamily> fam;
    if (name == "m2") fam = IdempotentFamily{{unit_vector(Q, 4, 0), unit_vector(Q, 4, 3)}};
    const auto env = enveloping_module(c, fam);
    const ModuleComplex mc(env.module, env.family);
    for (std::size_t n = 0; n <= 2; ++n)
      check(mc.cohomology(n).dim_hh == expected[n], name + " module Ext in degree " + std::to_string(n));
  }
}

void morita_invariance(Check& check) {
  check(hh_dims(field_cat(Q)) == hh_dims(matrix_algebra(Q, 2)), "field and m2 dimensions differ");
  auto k = share(field_cat(Q));
  auto i2 = share(indiscrete(Q, 2));
  const LinFunctor inc = LinFunctor::make(k, i2, {0}, {Vector{Q.one()}});
  check(morita_check(inc).invertible, "field into indiscrete2 is not invertible");
}

void coboundaries_trivialize(Check& check) {
  std::mt19937_64 rng(20240917);
  for (const auto& name : all_names()) {
    const LinCat c = catalog(name, Q);
    const std::size_t dim1 = CochainSpace(c, 1).dim();
    for (int t = 0; t < 20; ++t) {
      const Cochain mu = differential(c, {1, random_vector(dim1, rng)});
      const auto tr = trivialize(c, mu);
      check(tr.trivial, name + " coboundary rejected");
      if (!tr.trivial) continue;
      check(differential(c, tr.f).coords == mu.coords, name + " df' differs from mu");
      check(tr.iso.is_valid() && tr.inverse.is_valid(), name + " iso or inverse invalid");
    }
  }
  const LinCat t2 = truncated_poly(Q, 2);
  Vector xx = zeros(Q, CochainSpace(t2, 2).dim());
  xx[(1 * 2 + 1) * 2] = Q.one();
  check(!trivialize(t2, {2, xx}).trivial, "x·x ↦ ε on tpoly2 trivialized");
}

Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = small(rng);
    if (rank(m) == n) return m;
  }
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(*solve(m, unit_vector(Q, n, j)));
  return Matrix::from_columns(Q, n, cols);
}

void idempotents_lift(Check& check) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const Matrix s = random_invertible(n, rng);
    Matrix diag(Q, n, n), eps(Q, n, n);
    const std::size_t r = rng() % (n + 1);
    for (std::size_t i = 0; i < r; ++i) diag(i, i) = Q.one();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) eps(i, j) = small(rng);
    const DualMatrix p = DualMatrix::from_parts(s * diag * inverse(s), eps);
    const DualMatrix q = lift_idempotent(p);
    const DualMatrix k = q - p;
    check(q * q == q && q.constant_part() == p.constant_part() && k * p == p * k, "random matrix " + std::to_string(t));
  }

  IdempotentFamily units;
  for (std::size_t i = 0; i < 2; ++i) units.elements.push_back(unit_vector(Q, 4, i * 2 + i));
  const DualLinCat m2 = extend_to_duals(matrix_algebra(Q, 2));
  const MatrixRing ring = matrix_ring(interval(Q));
  const DualLinCat iv = extend_to_duals(ring.algebra);
  for (int t = 0; t < 20; ++t)
    for (const auto& [alg, fam] : {std::pair{&m2, units}, std::pair{&iv, ring.family}}) {
      BasicIdempotentFamily<Dual> lifts;
      for (const auto& p : fam.elements) lifts.elements.push_back(to_dual(p, random_vector(p.size(), rng)));
      const auto q = lift_orthogonal_family(*alg, lifts);
      check(dual_family_violations(DualAlgebraRing{alg}, q.elements).empty(), "family perturbation " + std::to_string(t));
      for (std::size_t i = 0; i < q.elements.size(); ++i)
        check(constant_part(q.elements[i]) == fam.elements[i], "family reduction " + std::to_string(t));
    }
}

void karoubi_embeddings(Check& check) {
  for (const auto& name : all_names()) {
    const LinCat c = catalog(name, Q);
    std::vector<KaroubiObject> objs;
    for (std::size_t x = 0; x < c.size(); ++x) objs.push_back(KaroubiObject::unit(c, x));
    objs.push_back(KaroubiObject::power(c, 0, 2));
    const auto frag = build_fragment(c, objs);
    check(morita_check(embed(c, frag)).invertible, name + " embedding");
    // diag(1, 0) on the square of the first object
    const std::size_t o = c.size();
    KaroubiObject half = objs[o];
    half.projector[3] = c.zeros(c.dim(0, 0));
    const Vector p = frag.homs[o * objs.size() + o].coordinates_or_throw(
        BlockSpace(c, objs[o].tuple, objs[o].tuple).flatten(half.projector));
    const auto s = split_projector(frag, o, p);
    check(s.split, name + " diag(1,0) does not split");
    if (!s.split) continue;
    const LinCat& R = frag.realized;
    check(R.compose(*s.image, o, *s.image, s.image_r, s.image_s) == R.unit(*s.image) &&
              R.compose(o, *s.image, o, s.image_s, s.image_r) == p,
          name + " split witnesses");
  }
}

void tangent_spaces(Check& check) {
  for (const auto& name : {"field", "tpoly2", "interval"}) {
    const auto r = check_hz2_inclusion(catalog(name, Q));
    check(r.inclusion, std::string(name) + " inclusion");
  }
  const auto c1 = cat_system(GraphType({"0"}, {1}));
  check(tangent_space(c1, Vector{Q.one(), Q.one()}).dim() == 1, "tangent of cat(1) at (1,1)");
}

void point_counts(Check& check) {
  const GraphType one({"0"}, {1});
  const auto sys = cat_system(one);
  for (const auto& [p, count] : {std::pair<std::uint64_t, std::size_t>{2, 1}, {3, 2}}) {
    const auto r = enumerate_points(sys, p);
    check(r.points.size() == count, "count over F_" + std::to_string(p));
    for (const auto& pt : r.points)
      check(category_from_point(one, Field::prime(p), pt).is_valid(), "point over F_" + std::to_string(p));
  }
}

struct CliRun {
  int code;
  std::string text;
};

CliRun cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "lincat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out);
  return {code, out.str()};
}

Json without_timing(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("timing_ms");
  return j;
}

void command_line(Check& check) {
  const auto dir = std::filesystem::temp_directory_path() / "lincat_acceptance";
  std::filesystem::create_directories(dir);
  for (const auto& name : all_names())
    for (const Field& f : {Q, Field::prime(3)}) {
      const LinCat c = catalog(name, f);
      const auto dumped = cli_run({"catalog", name, "--field", f.is_rational() ? "Q" : "Fp", "--p", "3"});
      const LinCat back = category_from_json(Json::parse(dumped.text));
      check(dumped.code == 0 && back.graph() == c.graph() && back.tensors() == c.tensors() && back.units() == c.units(),
            name + " round-trip over " + f.name());
      const auto path = dir / "cat.json";
      std::ofstream(path) << dumped.text;
      check(cli_run({"validate", path.string()}).code == 0, name + " file validates");
    }

  const auto iv = dir / "interval.json";
  std::ofstream(iv) << dump_category(interval(Q));
  const auto hh = cli_run({"hh", iv.string()});
  const Json report = Json::parse(hh.text);
  check(hh.code == 0 && report["result"]["hh"] == Json::array({1, 0, 0}), "hh interval");
  for (const char* key : {"ok", "command", "result", "violations", "timing_ms"})
    check(report.contains(key), std::string("report lacks ") + key);

  for (const auto& args : std::vector<std::vector<std::string>>{
           {"hh", iv.string()}, {"karoubi", "tpoly2", "--seed", "7"}, {"enumerate", "ass", "1", "--p", "3"}}) {
    check(without_timing(cli_run(args).text) == without_timing(cli_run(args).text), "determinism of " + args[0]);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"d∘d = 0 in degrees 0..2 on the catalog", differentials_square_to_zero},
      {"interval over F_2: cocycle iff deformed law is a category", cocycles_are_deformations},
      {"Hochschild dimensions match the enveloping module Ext", hochschild_table},
      {"HH(field) = HH(m2) and field into indiscrete2 is Morita", morita_invariance},
      {"coboundaries trivialize, x·x does not", coboundaries_trivialize},
      {"idempotents and complete families lift exactly", idempotents_lift},
      {"Karoubi embeddings are Morita and projectors split", karoubi_embeddings},
      {"normalized cocycles lie in the tangent space", tangent_spaces},
      {"point counts of cat(1) over F_2 and F_3", point_counts},
      {"command line round-trips and reports", command_line},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    std::cout << (check.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
    if (!check.ok) std::cout << " (" << check.first_failure << ")";
    std::cout << "\n";
    all = all && check.ok;
  }
  return all ? 0 : 1;
}

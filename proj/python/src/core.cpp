#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "betahull/bounds.hpp"
#include "betahull/driver.hpp"
#include "betahull/errors.hpp"
#include "betahull/grassmann.hpp"

namespace py = pybind11;
using namespace betahull;

namespace {

// Numbers arrive as "p/q" strings; the Python layer converts ints and
// Fractions before calling in.
using RationalRows = std::vector<std::vector<std::string>>;

Vector<Rational> to_vector(const std::vector<std::string>& v) {
  Vector<Rational> out;
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

QuadraticSpace to_space(const RationalRows& gram) {
  std::vector<Vector<Rational>> rows;
  for (const auto& r : gram) rows.push_back(to_vector(r));
  if (rows.empty()) throw InputError("gram matrix must be square with dim >= 1");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw InputError("gram matrix must be square with dim >= 1");
  return QuadraticSpace(DenseMatrix<Rational>::from_rows(rows));
}

MonopoleConfiguration to_configuration(const RationalRows& gram, const RationalRows& classes, bool zonotope) {
  QuadraticSpace space = to_space(gram);
  std::vector<CohomologyClass> cs;
  for (const auto& c : classes) cs.emplace_back(to_vector(c));
  if (zonotope) return MonopoleConfiguration::zonotope(std::move(space), std::move(cs));
  if (cs.empty()) return MonopoleConfiguration::empty(std::move(space));
  return MonopoleConfiguration::explicit_set(std::move(space), std::move(cs));
}

std::vector<std::string> strings(const Vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

py::dict beta(const RationalRows& gram, const RationalRows& classes, bool zonotope, std::size_t cap,
              bool exact_only, std::uint64_t seed) {
  const MonopoleConfiguration cfg = to_configuration(gram, classes, zonotope);
  BetaOptions opt;
  opt.generator_cap = cap ? cap : opt.generator_cap;
  opt.vertex_cap = cap ? cap : opt.vertex_cap;
  opt.allow_heuristic = !exact_only;
  opt.seed = seed;
  BetaResult r;
  {
    py::gil_scoped_release release;
    r = beta_squared(cfg, opt);
  }
  py::list bary;
  for (const auto& t : r.witness.barycentric) bary.append(py::make_tuple(t.label, to_string(t.weight)));
  py::dict d;
  d["value"] = to_string(r.value);
  d["mode"] = to_string(r.mode);
  d["point"] = strings(r.witness.point.coords);
  d["barycentric"] = bary;
  d["attaining"] = r.attaining;
  d["oracle_gap"] = r.oracle_gap ? py::cast(*r.oracle_gap) : py::none();
  return d;
}

py::dict alpha(const RationalRows& gram, const RationalRows& classes, bool zonotope, std::size_t starts,
               std::uint64_t seed, unsigned threads) {
  const MonopoleConfiguration cfg = to_configuration(gram, classes, zonotope);
  AlphaOptions opt;
  opt.starts = starts;
  opt.seed = seed;
  opt.threads = threads;
  AlphaResult r;
  {
    py::gil_scoped_release release;
    r = alpha_squared(cfg, opt);
  }
  py::dict d;
  d["value"] = r.value;
  d["boundary_flag"] = r.boundary_flag;
  d["chart_norm"] = r.chart_norm;
  d["trace"] = r.trace;
  d["classes_attaining"] = r.classes_attaining;
  d["best_start"] = r.best_start;
  d["basis"] = r.achieving_subspace ? py::cast(r.achieving_subspace->basis()) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact hull and Grassmannian invariants of monopole-class configurations";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  (void)input_error;

  m.def(
      "run",
      [](const std::string& command, const std::string& text, std::optional<std::string> mode,
         std::optional<std::uint64_t> samples, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> starts,
         std::optional<std::uint64_t> cap, std::optional<double> tol, bool exact_only, bool allow_asymmetric) {
        RunFlags f;
        f.mode = std::move(mode);
        f.samples = samples;
        f.seed = seed;
        f.starts = starts;
        f.cap = cap;
        f.tol = tol;
        f.exact_only = exact_only;
        f.allow_asymmetric = allow_asymmetric;
        const InputDocument doc = parse_input_text(text, {allow_asymmetric});
        py::gil_scoped_release release;
        RunOutput out = run(parse_command(command), doc, f);
        py::gil_scoped_acquire acquire;
        return py::make_tuple(out.machine, out.text, out.warnings);
      },
      py::arg("command"), py::arg("text"), py::arg("mode") = py::none(), py::arg("samples") = py::none(),
      py::arg("seed") = py::none(), py::arg("starts") = py::none(), py::arg("cap") = py::none(),
      py::arg("tol") = py::none(), py::arg("exact_only") = false, py::arg("allow_asymmetric") = false);

  m.def("canonical", [](const std::string& text) { return serialize_input(parse_input_text(text)); });

  m.def("pairing", [](const RationalRows& gram, const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return to_string(pairing(to_space(gram), CohomologyClass(to_vector(a)), CohomologyClass(to_vector(b))));
  });

  m.def("signature", [](const RationalRows& gram) {
    const Signature s = signature(to_space(gram));
    return py::make_tuple(s.positive, s.negative, s.null);
  });

  m.def("project_onto", [](const RationalRows& gram, const std::vector<std::string>& a, const RationalRows& basis) {
    const QuadraticSpace space = to_space(gram);
    std::vector<Vector<Rational>> cols;
    for (const auto& c : basis) cols.push_back(to_vector(c));
    const Subspace h(DenseMatrix<Rational>::from_columns(cols, space.dim()));
    return strings(project_onto(space, CohomologyClass(to_vector(a)), h).coords);
  });

  m.def("beta_squared", &beta, py::arg("gram"), py::arg("classes"), py::arg("zonotope") = false, py::arg("cap") = 0,
        py::arg("exact_only") = false, py::arg("seed") = 0);
  m.def("alpha_squared", &alpha, py::arg("gram"), py::arg("classes"), py::arg("zonotope") = false,
        py::arg("starts") = 20, py::arg("seed") = 0, py::arg("threads") = 0);
  m.def(
      "monte_carlo_oracle",
      [](const RationalRows& gram, const RationalRows& classes, bool zonotope, std::size_t samples, std::uint64_t seed) {
        const MonopoleConfiguration cfg = to_configuration(gram, classes, zonotope);
        py::gil_scoped_release release;
        return monte_carlo_oracle(cfg, samples, seed);
      },
      py::arg("gram"), py::arg("classes"), py::arg("zonotope") = false, py::arg("samples") = 100000,
      py::arg("seed") = 0);
  m.def("curvature_bounds", [](const std::string& beta_sq) {
    const CurvatureBounds c = curvature_bounds(parse_rational(beta_sq));
    py::dict d;
    d["scalar_coefficient"] = to_string(c.scalar_coefficient);
    d["weyl_coefficient"] = to_string(c.weyl_coefficient);
    d["scalar_L2_lower"] = c.scalar_L2_lower;
    d["weyl_mixed_lower"] = c.weyl_mixed_lower;
    d["yamabe_upper"] = c.yamabe_upper;
    return d;
  });
}

#include "betahull/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "betahull/bounds.hpp"
#include "betahull/errors.hpp"
#include "betahull/grassmann.hpp"
#include "json.hpp"

namespace betahull {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultSamples = 100000;
constexpr std::uint64_t kDefaultStarts = 20;
constexpr double kDefaultTol = 1e-8;

json exact(const Rational& r) { return json{{"value", to_string(r)}, {"mode", "exact"}}; }
json tagged(const Rational& r, BetaMode mode) { return json{{"value", to_string(r)}, {"mode", to_string(mode)}}; }
json numeric(double v) { return json{{"value", v}, {"mode", "numeric"}}; }

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Settings {
  std::string mode;
  std::uint64_t samples;
  std::uint64_t seed;
  std::uint64_t starts;
  std::optional<std::uint64_t> cap;
  double tol;
};

Settings resolve(Command command, const InputDocument& doc, const RunFlags& flags) {
  const auto& o = doc.options;
  Settings s;
  s.mode = flags.mode ? *flags.mode : o.mode ? *o.mode : (command == Command::Report ? "both" : "beta");
  if (s.mode != "beta" && s.mode != "alpha" && s.mode != "both") throw InputError("--mode must be beta, alpha or both");
  s.samples = flags.samples ? *flags.samples : o.samples.value_or(kDefaultSamples);
  s.seed = flags.seed ? *flags.seed : o.seed.value_or(0);
  s.starts = flags.starts ? *flags.starts : o.starts.value_or(kDefaultStarts);
  s.cap = flags.cap ? flags.cap : o.cap;
  s.tol = flags.tol ? *flags.tol : o.tol ? to_double(*o.tol) : kDefaultTol;
  if (!(s.tol > 0)) throw InputError("--tol must be positive");
  if (s.starts == 0) throw InputError("--starts must be positive");
  return s;
}

struct Built {
  MonopoleConfiguration cfg = MonopoleConfiguration::empty(QuadraticSpace::diagonal({Rational(1)}));
  std::optional<ManifoldModel> model;
  std::optional<GeneratedConfiguration> generated;
};

Built build(const InputDocument& doc, const RunFlags& flags, std::vector<std::string>& warnings) {
  Built b;
  if (const auto* e = std::get_if<ExplicitInput>(&doc.body)) {
    std::vector<CohomologyClass> classes;
    for (const auto& c : e->classes) classes.emplace_back(c);
    b.cfg = MonopoleConfiguration::explicit_set(QuadraticSpace(e->gram), std::move(classes),
                                                flags.allow_asymmetric ? SymmetryPolicy::Symmetrize : SymmetryPolicy::Strict,
                                                &warnings);
  } else if (const auto* z = std::get_if<ZonotopeInput>(&doc.body)) {
    std::vector<CohomologyClass> base;
    for (const auto& c : z->base) base.emplace_back(c);
    b.cfg = MonopoleConfiguration::zonotope(QuadraticSpace(z->gram), std::move(base));
  } else {
    const auto& m = std::get<ManifoldInput>(doc.body);
    b.model = connected_sum(m.sum);
    for (const auto& w : b.model->hypothesis_warnings) warnings.push_back(w);
    b.generated = monopole_configuration(*b.model, m.ambient_extension.value_or(AmbientExtension{}));
    b.cfg = b.generated->cfg;
  }
  return b;
}

json vector_json(const Vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::string vector_text(const Vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

json configuration_json(const Built& b) {
  const auto& cfg = b.cfg;
  json j{{"representation", cfg.is_zonotope() ? "zonotope" : "explicit"},
         {"dim", cfg.space().dim()},
         {"empty", cfg.empty()}};
  const Signature sig = signature(cfg.space());
  j["signature"] = json{{"positive", sig.positive}, {"negative", sig.negative}, {"null", sig.null}};
  if (cfg.is_zonotope()) j["generators"] = cfg.generators().size();
  else j["class_count"] = cfg.classes().size();
  if (b.generated) {
    j["provenance"] = b.generated->provenance;
    j["ambient"] = b.generated->ambient;
    if (b.generated->known_beta) j["known_beta"] = exact(*b.generated->known_beta);
  }
  return j;
}

json beta_json(const MonopoleConfiguration& cfg, const BetaResult& r) {
  json bary = json::array();
  for (const auto& t : r.witness.barycentric) bary.push_back(json{{"class", t.label}, {"weight", to_string(t.weight)}});
  json j{{"value", tagged(r.value, r.mode)},
         {"witness",
          json{{"point", vector_json(r.witness.point.coords)},
               {"barycentric", bary},
               {"value", tagged(r.witness.value, r.mode)}}},
         {"attaining", r.attaining},
         {"attaining_count", r.attaining_count},
         {"representation", cfg.is_zonotope() ? "zonotope" : "explicit"}};
  if (r.oracle_gap) j["oracle_gap"] = numeric(*r.oracle_gap);
  return j;
}

std::string beta_text(const BetaResult& r) {
  std::ostringstream os;
  os << "beta^2        " << r.value.get_str() << "  (" << to_string(r.mode) << ", " << fmt(to_double(r.value)) << ")\n";
  os << "  witness     " << vector_text(r.witness.point.coords) << "\n";
  for (const auto& t : r.witness.barycentric) os << "    " << t.label << "  weight " << t.weight.get_str() << "\n";
  os << "  attaining   " << r.attaining_count << " optimal face(s)\n";
  if (r.oracle_gap) os << "  oracle gap  " << fmt(*r.oracle_gap, 9) << "\n";
  return os.str();
}

json alpha_json(const MonopoleConfiguration& cfg, const AlphaResult& r, std::uint64_t starts) {
  json labels = json::array();
  for (std::size_t i : r.classes_attaining) labels.push_back(cfg.class_label(i));
  json trace = json::array();
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    if (i == 0 || r.trace[i] < r.trace[i - 1]) trace.push_back(r.trace[i]);
  json basis = json::array();
  if (r.achieving_subspace) {
    const auto& m = r.achieving_subspace->basis();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      json col = json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) col.push_back(m(i, c));
      basis.push_back(col);
    }
  }
  return json{{"value", numeric(r.value)},
              {"boundary_flag", r.boundary_flag},
              {"chart_norm", numeric(r.chart_norm)},
              {"classes_attaining", labels},
              {"best_start", r.best_start},
              {"starts", starts},
              {"trace", trace},
              {"subspace_basis", basis}};
}

std::string alpha_text(const AlphaResult& r) {
  std::ostringstream os;
  os << "alpha^2       " << fmt(r.value, 8) << "  (numeric, best of start " << r.best_start << ")\n";
  os << "  chart norm  " << fmt(r.chart_norm) << (r.boundary_flag ? "  [boundary: infimum not attained]" : "") << "\n";
  return os.str();
}

json check_json(const EinsteinCheck& c) {
  json j{{"lhs", exact(Rational(c.lhs))}, {"rhs", exact(c.rhs)}, {"verdict", to_string(c.verdict)}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json bounds_json(const ManifoldModel& model, const BoundsReport& r, BetaMode beta_mode) {
  json j{{"beta_sq", tagged(r.beta_sq, beta_mode)},
         {"model",
          json{{"chi", exact(Rational(model.chi))},
               {"tau", exact(Rational(model.tau))},
               {"b_plus", exact(Rational(model.b_plus))}}},
         {"scalar_L2_lower",
          json{{"value", r.curvature.scalar_L2_lower}, {"mode", "numeric"},
               {"pi_sq_coefficient", to_string(r.curvature.scalar_coefficient)}}},
         {"weyl_mixed_lower",
          json{{"value", r.curvature.weyl_mixed_lower}, {"mode", "numeric"},
               {"pi_sq_coefficient", to_string(r.curvature.weyl_coefficient)}}},
         {"yamabe_upper", numeric(r.curvature.yamabe_upper)},
         {"einstein_2chi_minus_3tau", check_json(r.einstein.minus)},
         {"einstein_2chi_plus_3tau", check_json(r.einstein.plus)},
         {"einstein_verdict", to_string(r.einstein.overall)},
         {"ricci_L2_lower",
          json{{"value", r.ricci.value}, {"mode", "numeric"}, {"pi_sq_coefficient", to_string(r.ricci.coefficient)},
               {"note", r.ricci.note}}},
         {"notes", r.notes}};
  if (r.alpha_sq) j["alpha_sq"] = numeric(*r.alpha_sq);
  return j;
}

std::string bounds_text(const ManifoldModel& model, const BoundsReport& r) {
  std::ostringstream os;
  os << "model         chi " << model.chi << ", tau " << model.tau << ", b+ " << model.b_plus << "\n";
  os << "int s^2       >= " << fmt(r.curvature.scalar_L2_lower) << "  (" << r.curvature.scalar_coefficient.get_str()
     << " pi^2)\n";
  os << "int (s-sqrt6|W+|)^2 >= " << fmt(r.curvature.weyl_mixed_lower) << "  ("
     << r.curvature.weyl_coefficient.get_str() << " pi^2)\n";
  os << "int |r|^2     >= " << fmt(r.ricci.value) << "  (" << r.ricci.note << ")\n";
  os << "Yamabe        <= " << fmt(r.curvature.yamabe_upper) << "\n";
  auto line = [&](const char* name, const EinsteinCheck& c) {
    os << name << c.lhs << " vs " << c.rhs.get_str() << "  " << to_string(c.verdict);
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  };
  line("2chi-3tau     ", r.einstein.minus);
  line("2chi+3tau     ", r.einstein.plus);
  os << "Einstein      " << to_string(r.einstein.overall) << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "beta") return Command::Beta;
  if (name == "alpha") return Command::Alpha;
  if (name == "bounds") return Command::Bounds;
  if (name == "oracle") return Command::Oracle;
  if (name == "report") return Command::Report;
  throw InputError("unknown command '" + name + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Beta: return "beta";
    case Command::Alpha: return "alpha";
    case Command::Bounds: return "bounds";
    case Command::Oracle: return "oracle";
    case Command::Report: return "report";
  }
  return "report";
}

RunOutput run(Command command, const InputDocument& doc, const RunFlags& flags) {
  if (command == Command::Bounds && !doc.is_manifold()) throw InputError("bounds requires a manifold document");
  const Settings s = resolve(command, doc, flags);
  RunOutput out;
  json timing = json::object();
  auto t0 = Clock::now();
  const Built b = build(doc, flags, out.warnings);
  timing["build_ms"] = elapsed_ms(t0);

  json root{{"command", to_string(command)},
            {"input_digest", "sha256:" + input_digest(doc)},
            {"configuration", configuration_json(b)},
            {"parameters",
             json{{"mode", s.mode}, {"samples", s.samples}, {"seed", s.seed}, {"starts", s.starts}, {"tol", s.tol},
                  {"exact_only", flags.exact_only}}}};
  if (s.cap) root["parameters"]["cap"] = *s.cap;
  std::ostringstream text;
  text << "betahull " << to_string(command) << "\n";
  text << "configuration " << (b.cfg.is_zonotope() ? "zonotope" : "explicit") << ", dim " << b.cfg.space().dim();
  if (b.cfg.is_zonotope()) text << ", " << b.cfg.generators().size() << " generator(s)\n";
  else text << ", " << b.cfg.classes().size() << " class(es)\n";
  if (b.generated) text << "provenance    " << b.generated->provenance << "\nambient       " << b.generated->ambient << "\n";

  // beta^2 is always computed next to alpha^2 for the sandwich check.
  const bool want_beta = command != Command::Oracle;
  const bool want_alpha = command == Command::Alpha ||
                          ((command == Command::Report || command == Command::Bounds) && s.mode != "beta");

  std::optional<BetaResult> beta;
  if (want_beta) {
    BetaOptions bo;
    if (s.cap) {
      bo.generator_cap = *s.cap;
      bo.vertex_cap = *s.cap;
    }
    bo.allow_heuristic = !flags.exact_only;
    bo.seed = s.seed;
    bo.oracle_samples = s.samples;
    t0 = Clock::now();
    beta = beta_squared(b.cfg, bo);
    timing["beta_ms"] = elapsed_ms(t0);
    root["beta"] = beta_json(b.cfg, *beta);
    text << beta_text(*beta);
    if (beta->mode == BetaMode::Heuristic)
      out.warnings.push_back("beta^2 is a certified lower bound from heuristic search, not an exact maximum");
  }

  std::optional<AlphaResult> alpha;
  if (want_alpha) {
    AlphaOptions ao;
    ao.starts = s.starts;
    ao.seed = s.seed;
    ao.tolerance = s.tol;
    ao.threads = flags.threads;
    t0 = Clock::now();
    alpha = alpha_squared(b.cfg, ao);
    timing["alpha_ms"] = elapsed_ms(t0);
    root["alpha"] = alpha_json(b.cfg, *alpha, s.starts);
    text << alpha_text(*alpha);
    const bool holds = alpha->value >= to_double(beta->value) - 1e-6;
    root["sandwich"] = json{{"beta_sq_le_alpha_sq", holds}};
    if (!holds) out.warnings.push_back("alpha^2 estimate below beta^2: optimizer result is unreliable");
    if (alpha->boundary_flag) out.warnings.push_back("alpha^2 search ran to the chart boundary; infimum not attained");
  }

  if (command == Command::Oracle || (command == Command::Report && !b.cfg.empty())) {
    t0 = Clock::now();
    const double v = monte_carlo_oracle(b.cfg, s.samples, s.seed);
    timing["oracle_ms"] = elapsed_ms(t0);
    root["oracle"] = json{{"value", numeric(v)}, {"samples", s.samples}, {"seed", s.seed}};
    text << "oracle        " << fmt(v, 9) << "  (" << s.samples << " samples, seed " << s.seed << ")\n";
  }

  if (b.model && (command == Command::Bounds || command == Command::Report)) {
    BoundsReport report = bounds_report(*b.model, beta->value, alpha ? std::optional<double>(alpha->value) : std::nullopt);
    if (beta->mode == BetaMode::Heuristic) report.notes.push_back("beta^2 is a lower bound; BORDERLINE verdicts are not certified");
    root["bounds"] = bounds_json(*b.model, report, beta->mode);
    text << bounds_text(*b.model, report);
  }

  root["warnings"] = out.warnings;
  if (flags.timing) {
    root["timing"] = timing;
    for (const auto& [k, v] : timing.items()) text << "timing " << k << " " << fmt(v.get<double>(), 3) << "\n";
  }
  out.machine = root.dump(2) + "\n";
  out.text = text.str();
  return out;
}

}  // namespace betahull

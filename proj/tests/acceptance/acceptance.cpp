// Acceptance criteria AC1-AC10. One PASS/FAIL line each; the exit status is
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "generators.hpp"

#include "betahull/bounds.hpp"
#include "betahull/grassmann.hpp"
#include "betahull/manifold.hpp"
#include "betahull/polytope.hpp"
#include "betahull/surd.hpp"

using namespace betahull;
namespace bt = betahull::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    if (!ok) ++failures;
    pass = pass && ok;
  }
  int failures = 0;
};

BuildingBlock surface(long c1sq) { return BuildingBlock::general_type(c1sq, 24 - c1sq, c1sq - 16, 3); }

MonopoleConfiguration null_triple() {
  return MonopoleConfiguration::explicit_set(
      QuadraticSpace(DenseMatrix<Rational>::from_rows({{1, 0, 0}, {0, Rational(3, 4), 0}, {0, 0, -1}})),
      {{1, 0, 1}, {-1, 0, -1}, {Rational(-1, 2), 1, 1}, {Rational(1, 2), -1, -1}, {Rational(-1, 2), -1, 1},
       {Rational(1, 2), 1, -1}});
}

void ac1(Outcome& o) {
  double slowest = 0;
  int count = 0;
  for (long c = 1; c <= 9; ++c)
    for (std::size_t k = 0; k <= 6; ++k) {
      const auto t0 = Clock::now();
      const GeneratedConfiguration g = monopole_configuration(connected_sum(bt::with_blowups({surface(c)}, k)));
      const BetaResult r = beta_squared(g.cfg);
      const double dt = seconds_since(t0);
      slowest = std::max(slowest, dt);
      ++count;
      const std::string id = "c1^2=" + std::to_string(c) + " k=" + std::to_string(k);
      o.require(r.value == c && r.mode == BetaMode::Exact, id + " beta " + to_string(r.value));
      o.require(dt < 1.0, id + " took " + std::to_string(dt) + " s");
    }
  o.detail << count << " blow-ups, slowest " << slowest << " s";
}

void ac2(Outcome& o) {
  for (std::size_t k = 0; k <= 4; ++k) {
    const GeneratedConfiguration g =
        monopole_configuration(connected_sum(bt::with_blowups({surface(2), surface(3), surface(5)}, k)));
    const BetaResult r = beta_squared(g.cfg);
    o.require(r.value == 10 && r.mode == BetaMode::Exact, "k=" + std::to_string(k) + " beta " + to_string(r.value));
  }
  o.detail << "k = 0..4 all give 10";
}

void ac3(Outcome& o) {
  const auto t0 = Clock::now();
  const MonopoleConfiguration cfg = null_triple();
  const BetaResult beta = beta_squared(cfg);
  const AlphaResult alpha = alpha_squared(cfg);
  const double dt = seconds_since(t0);
  o.require(beta.value == Rational(3, 4), "beta " + to_string(beta.value));
  o.require(std::abs(alpha.value - 1.0) <= 1e-3, "alpha " + std::to_string(alpha.value));
  o.require(alpha.value >= to_double(beta.value) - 1e-6, "sandwich");
  o.require(dt < 30.0, "runtime " + std::to_string(dt));

  using S = QuadraticSurd<3>;
  const S h(Rational(1, 2));
  const S r(Rational(0), Rational(1, 2));
  DenseMatrix<S> g(3, 3);
  g(0, 0) = 1;
  g(1, 1) = 1;
  g(2, 2) = -1;
  const std::vector<Vector<S>> skewed = {{1, 0, 1}, {-1, 0, -1}, {r, -h, 1}, {-r, h, -1}, {-r, -h, 1}, {r, h, -1}};
  const S exact = maximize_quadratic_on_polytope(g, skewed).witness.value;
  o.require(exact == (S(2) + S::root()) / S(4), "skewed variant exact value " + exact.to_string());
  Eigen::MatrixXd gd = Eigen::Vector3d(1, 1, -1).asDiagonal();
  std::vector<Eigen::VectorXd> v;
  for (const auto& p : skewed) v.emplace_back(Eigen::Vector3d(to_double(p[0]), to_double(p[1]), to_double(p[2])));
  const double oracle = monte_carlo_oracle(gd, v, 1000000, 0);
  o.require(std::abs(oracle - exact.to_double()) <= 1e-6, "skewed variant oracle " + std::to_string(oracle));
  o.detail << "beta 3/4, alpha " << alpha.value << " (boundary " << alpha.boundary_flag << "), " << dt
           << " s; skewed variant (2+sqrt3)/4 = " << exact.to_double() << ", oracle gap "
           << exact.to_double() - oracle;
}

QuadraticSpace random_nondegenerate(Rng& rng, std::size_t max_dim) {
  const std::size_t dim = 1 + rng.below(max_dim);
  const std::size_t plus = 1 + rng.below(dim);
  std::vector<Rational> d;
  for (std::size_t i = 0; i < dim; ++i) {
    Rational r(static_cast<long>(1 + rng.below(3)), 1 + rng.below(2));
    r.canonicalize();
    d.push_back(i < plus ? r : Rational(-r));
  }
  const auto s = bt::random_invertible(rng, dim);
  return MonopoleConfiguration::empty(QuadraticSpace::diagonal(d)).transformed(s).space();
}

void ac4(Outcome& o) {
  Rng rng(1000);
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const QuadraticSpace space = random_nondegenerate(rng, 6);
    const bool zero = rng.below(4) == 0;
    const std::size_t pairs = 1 + rng.below(zero ? 4 : 5);
    const auto cfg = bt::random_configuration(rng, space, pairs, zero);
    const std::string id = "case " + std::to_string(trial);
    const BetaResult r = beta_squared(cfg);
    o.require(r.mode == BetaMode::Exact && sgn(r.value) >= 0, id + " nonnegative");
    o.require(beta_squared(cfg.scaled(2)).value == 4 * r.value, id + " scaling 2");
    o.require(beta_squared(cfg.scaled(3)).value == 9 * r.value, id + " scaling 3");
    o.require(monte_carlo_oracle(cfg, 1000, trial) <= to_double(r.value) + 1e-12, id + " oracle");
    o.require(beta_squared(cfg.transformed(bt::random_invertible(rng, space.dim()))).value == r.value, id + " isometry");
    const double beta = to_double(r.value);
    for (int k = 0; k < 10; ++k) {
      const Eigen::MatrixXd t = random_graph_map(space, rng.uniform(0.0, 0.99), stream_seed(trial, k));
      const double w = worst_case(cfg, subspace_from_graph(space, t)).value;
      worst_margin = std::min(worst_margin, w - beta);
      o.require(w >= beta - 1e-9, id + " worst case below beta");
    }
  }
  o.detail << "1000 cases, min worst_case - beta = " << worst_margin;
}

AlphaResult alpha_of(const MonopoleConfiguration& cfg, std::uint64_t seed) {
  AlphaOptions opt;
  opt.seed = seed;
  return alpha_squared(cfg, opt);
}

void ac5(Outcome& o) {
  Rng rng(500);
  double worst_zero = 0;
  for (int i = 0; i < 50; ++i) {
    const auto cfg = bt::negative_span_configuration(rng, i % 2 == 1);
    o.require(beta_squared(cfg).value == 0, "negative span " + std::to_string(i) + " beta");
    const double a = alpha_of(cfg, i).value;
    worst_zero = std::max(worst_zero, a);
    o.require(a <= 1e-4, "negative span " + std::to_string(i) + " alpha " + std::to_string(a));
  }
  double worst_ratio = std::numeric_limits<double>::infinity();
  int positive = 0;
  while (positive < 50) {
    const QuadraticSpace space = random_nondegenerate(rng, 4);
    const auto cfg = bt::random_configuration(rng, space, 1 + rng.below(3));
    const BetaResult b = beta_squared(cfg);
    if (sgn(b.value) <= 0) continue;
    const double a = alpha_of(cfg, positive).value;
    worst_ratio = std::min(worst_ratio, a / to_double(b.value));
    o.require(a >= to_double(b.value) / 2, "positive " + std::to_string(positive));
    ++positive;
  }
  o.detail << "max alpha on negative spans " << worst_zero << ", min alpha/beta " << worst_ratio;
}

void ac6(Outcome& o) {
  Rng rng(600);
  double worst_l = 0;
  for (int i = 0; i < 30; ++i) {
    const auto cfg = bt::lorentzian_configuration(rng);
    const double beta = to_double(beta_squared(cfg).value);
    const double err = std::abs(alpha_of(cfg, i).value - beta) / std::max(1.0, beta);
    worst_l = std::max(worst_l, err);
    o.require(err <= 1e-4, "lorentzian " + std::to_string(i));
  }
  double worst_p = 0;
  for (int i = 0; i < 20; ++i) {
    MonopoleConfiguration a = bt::lorentzian_configuration(rng), b = bt::lorentzian_configuration(rng);
    while (a.class_count() * b.class_count() > 12) {
      a = bt::lorentzian_configuration(rng);
      b = bt::lorentzian_configuration(rng);
    }
    const double sum = to_double(beta_squared(a).value + beta_squared(b).value);
    const auto product = bt::product_configuration(a, b);
    const double err = std::abs(alpha_of(product, i).value - sum) / std::max(1.0, sum);
    worst_p = std::max(worst_p, err);
    o.require(err <= 1e-3, "product " + std::to_string(i));
  }
  o.detail << "worst relative error: lorentzian " << worst_l << ", product " << worst_p;
}

void ac7(Outcome& o) {
  for (std::size_t k = 0; k <= 9; ++k) {
    const ManifoldModel m = connected_sum(bt::with_blowups({BuildingBlock::general_type(9, 9, -3, 2)}, k));
    const Rational beta = beta_squared(monopole_configuration(m).cfg).value;
    const EinsteinObstruction e = einstein_obstruction(m, beta);
    const bool obstructed = e.overall == Verdict::Obstructed;
    o.require(obstructed == (k >= 4), "k=" + std::to_string(k) + " verdict " + to_string(e.overall));
    o.require(e.plus.lhs == 9 - static_cast<long>(k) && e.plus.rhs == 6, "k=" + std::to_string(k) + " arithmetic");
  }
  const ManifoldModel k3 = connected_sum({BuildingBlock::k3()});
  const EinsteinObstruction e = einstein_obstruction(k3, beta_squared(monopole_configuration(k3).cfg).value);
  o.require(e.overall == Verdict::Borderline, "K3 verdict " + to_string(e.overall));
  o.detail << "obstructed exactly for k >= 4; K3 " << to_string(e.overall);
}

void ac8(Outcome& o) {
  for (long n = 1; n <= 50; ++n)
    for (unsigned long d = 1; d <= 4; ++d) {
      Rational b(n, d);
      b.canonicalize();
      const CurvatureBounds c = curvature_bounds(b);
      o.require(c.weyl_coefficient / c.scalar_coefficient == Rational(9, 4), "ratio");
    }
  const double y = curvature_bounds(1).yamabe_upper;
  const double want = -4 * std::numbers::sqrt2 * std::numbers::pi;
  o.require(std::abs(y - want) <= 1e-9, "yamabe");
  o.detail << "ratio 9/4 on 200 values; yamabe(1) - (-4 sqrt2 pi) = " << y - want;
}

void ac9(Outcome& o) {
  Rng rng(900);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = 1 + rng.below(3);
    const DenseMatrix<Rational> u = bt::random_symmetric(rng, m);
    const double exact = to_double(max_quadratic_on_box(u).value);
    const double grid = bt::grid_box_max(bt::to_eigen(u), 1e-2);
    worst = std::max(worst, std::abs(exact - grid));
    o.require(std::abs(exact - grid) <= 1e-3, "grid case " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = 1 + rng.below(3);
    const QuadraticSpace space = random_nondegenerate(rng, 4);
    std::vector<CohomologyClass> base;
    for (std::size_t j = 0; j < m; ++j) base.push_back(bt::random_class(rng, space.dim(), 2));
    const auto z = MonopoleConfiguration::zonotope(space, base);
    o.require(beta_squared(z).value == beta_squared(z.expanded()).value, "expansion case " + std::to_string(i));
  }
  o.detail << "max |box - grid| " << worst << "; 100 expansions agree exactly";
}

#ifdef BETAHULL_CLI_PATH
int run_cli(const std::string& args, std::string* out) {
  const std::string cmd = std::string("\"") + BETAHULL_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  const int status = pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void ac10(Outcome& o) {
  const std::string data = BETAHULL_CLI_DATA;
  for (const char* f : {"blowup_8_2.json", "null_triple.json", "lorentzian.json", "k3.json"}) {
    const std::string args = "report \"" + data + "/" + f + "\" --format machine --seed 11 --samples 20000 --starts 6";
    std::string a, b;
    const int ca = run_cli(args, &a), cb = run_cli(args, &b);
    o.require(ca == 0 && cb == 0, std::string(f) + " exit");
    o.require(!a.empty() && a == b, std::string(f) + " output differs");
  }
  const std::vector<std::pair<std::string, int>> codes = {
      {"beta \"" + data + "/lorentzian.json\"", 0},
      {"beta \"" + data + "/malformed.json\"", 2},
      {"beta \"" + data + "/asymmetric.json\"", 2},
      {"beta \"" + data + "/unknown_key.json\"", 2},
      {"bounds \"" + data + "/lorentzian.json\"", 2},
      {"beta \"" + data + "/missing.json\"", 2},
      {"gamma \"" + data + "/lorentzian.json\"", 2},
      {"beta \"" + data + "/wide_explicit.json\" --exact-only", 3},
  };
  for (const auto& [args, want] : codes) {
    const int got = run_cli(args, nullptr);
    o.require(got == want, args + " exited " + std::to_string(got));
  }
  o.detail << "4 byte-identical report pairs, " << codes.size() << " exit codes";
}
#else
void ac10(Outcome& o) { o.require(false, "CLI not built"); }
#endif

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what() << "; ";
    }
    if (o.failures > 1) o.detail << "; " << o.failures << " failed checks";
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " " << o.detail.str() << " [" << seconds_since(t0) << " s]"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

#include "betahull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <limits>
#include <numeric>
#include <set>

#include "betahull/errors.hpp"
#include "betahull/polytope.hpp"
#include "betahull/random.hpp"

namespace betahull {

namespace {

constexpr std::size_t kListedMaximisers = 64;
constexpr std::size_t kMaxExpandedGenerators = 20;

void check_dims(const QuadraticSpace& space, const std::vector<CohomologyClass>& classes, const char* what) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].size() != space.dim()) {
      throw InputError(std::string(what) + " " + std::to_string(i) + " has length " +
                       std::to_string(classes[i].size()) + ", expected " + std::to_string(space.dim()));
    }
  }
}

Rational sum_of(const Vector<Rational>& v) {
  Rational total = 0;
  for (const auto& x : v) total += x;
  return total;
}

// Decomposes a box point into box vertices: with t_i = (1 + s_i) / 2 sorted
// in decreasing order, the staircase vertices v_j (first j sorted free
// coordinates at +1, the rest at -1) carry weights t_(j) - t_(j+1).
std::vector<BarycentricTerm> box_barycentric(const MonopoleConfiguration& cfg, const Vector<Rational>& s) {
  const std::size_t m = s.size();
  std::vector<std::size_t> free_coords;
  std::size_t fixed_negative = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (s[i] == 1) continue;
    if (s[i] == -1) {
      fixed_negative |= std::size_t{1} << i;
      continue;
    }
    free_coords.push_back(i);
  }
  std::vector<Rational> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = (1 + s[i]) / 2;
  std::stable_sort(free_coords.begin(), free_coords.end(),
                   [&](std::size_t a, std::size_t b) { return t[a] > t[b]; });

  std::vector<BarycentricTerm> terms;
  const std::size_t f = free_coords.size();
  std::size_t mask = fixed_negative;
  for (std::size_t c : free_coords) mask |= std::size_t{1} << c;  // all free at -1
  for (std::size_t j = 0; j <= f; ++j) {
    Rational upper = j == 0 ? Rational(1) : t[free_coords[j - 1]];
    Rational lower = j == f ? Rational(0) : t[free_coords[j]];
    Rational w = upper - lower;
    if (j > 0) mask &= ~(std::size_t{1} << free_coords[j - 1]);
    if (sgn(w) == 0) continue;
    terms.push_back({mask, cfg.class_label(mask), w});
  }
  return terms;
}

CohomologyClass combine(const MonopoleConfiguration& cfg, const Vector<Rational>& s) {
  CohomologyClass point(Vector<Rational>(cfg.space().dim(), Rational(0)));
  const auto& gens = cfg.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t c = 0; c < point.size(); ++c) point.coords[c] += s[i] * gens[i].coords[c];
  return point;
}

Eigen::MatrixXd to_eigen(const DenseMatrix<Rational>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

double spectral_bound(const Eigen::MatrixXd& k) {
  if (k.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Euclidean projection onto the probability simplex (sort-based).
void project_to_simplex(Eigen::VectorXd& w) {
  std::vector<double> u(w.data(), w.data() + w.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0) theta = candidate;
  }
  w = (w.array() - theta).cwiseMax(0.0);
}

Eigen::VectorXd dirichlet(Rng& rng, std::size_t n) {
  Eigen::VectorXd w(n);
  for (std::size_t i = 0; i < n; ++i) w(static_cast<Eigen::Index>(i)) = rng.exponential();
  return w / w.sum();
}

struct HeuristicPoint {
  Eigen::VectorXd x;
  double value = -std::numeric_limits<double>::infinity();
};

// Multi-start projected gradient ascent of x^T K x over the simplex
// (simplex = true) or over the box [-1, 1]^n.
HeuristicPoint projected_ascent(const Eigen::MatrixXd& k, bool simplex, std::size_t starts, std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(k.rows());
  const double lipschitz = 2.0 * spectral_bound(k);
  const double step = lipschitz > 0 ? 1.0 / lipschitz : 1.0;
  HeuristicPoint best;
  for (std::size_t start = 0; start < starts; ++start) {
    Rng rng(stream_seed(seed, start));
    Eigen::VectorXd x(n);
    if (simplex) {
      x = dirichlet(rng, n);
    } else {
      for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = rng.uniform(-1.0, 1.0);
    }
    for (int iter = 0; iter < 5000; ++iter) {
      Eigen::VectorXd next = x + step * 2.0 * (k * x);
      if (simplex)
        project_to_simplex(next);
      else
        next = next.cwiseMax(-1.0).cwiseMin(1.0);
      const double moved = (next - x).lpNorm<Eigen::Infinity>();
      x = std::move(next);
      if (moved < 1e-14) break;
    }
    const double value = x.dot(k * x);
    if (value > best.value) best = {x, value};
  }
  return best;
}

double hull_sampler(const Eigen::MatrixXd& k, std::size_t dim, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(k.rows());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
  if (n < 2) return best;
  Rng rng(seed);
  const std::size_t max_support = std::min(n, dim + 1);
  std::vector<std::size_t> perm(n);
  std::vector<double> w;
  for (std::size_t t = 0; t < samples; ++t) {
    // Half the draws are Dirichlet over all vertices; the other half are
    // Dirichlet on a random face of at most dim+1 vertices, so that maxima
    // on low-dimensional faces are reached by sampling as well.
    std::size_t support = n;
    if (max_support >= 2 && rng.uniform() < 0.5) support = 2 + rng.below(max_support - 1);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < support && support < n; ++i) {
      const std::size_t j = i + rng.below(n - i);
      std::swap(perm[i], perm[j]);
    }
    w.resize(support);
    double total = 0.0;
    for (std::size_t i = 0; i < support; ++i) total += (w[i] = rng.exponential());
    double value = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
      const auto pi = static_cast<Eigen::Index>(perm[i]);
      double row = 0.0;
      for (std::size_t j = 0; j < support; ++j) row += k(pi, static_cast<Eigen::Index>(perm[j])) * w[j];
      value += w[i] * row;
    }
    best = std::max(best, value / (total * total));
  }
  return best;
}

double box_sampler(const Eigen::MatrixXd& u, std::size_t samples, std::uint64_t seed) {
  const std::size_t m = static_cast<std::size_t>(u.rows());
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd s = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
  if (m <= kMaxExpandedGenerators) {
    // All vertices by Gray code: flipping coordinate j updates U s by -2 s_j U e_j.
    Eigen::VectorXd us = u * s;
    double value = s.dot(us);
    best = value;
    const std::size_t total = std::size_t{1} << m;
    for (std::size_t g = 1; g < total; ++g) {
      const auto j = static_cast<Eigen::Index>(std::countr_zero(g));
      const double sj = s(j);
      value += -4.0 * sj * (us(j) - u(j, j) * sj);
      us -= 2.0 * sj * u.col(j);
      s(j) = -sj;
      best = std::max(best, value);
    }
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    const std::size_t free_count = rng.below(m + 1);
    for (std::size_t i = 0; i < m; ++i) s(static_cast<Eigen::Index>(i)) = rng.uniform() < 0.5 ? 1.0 : -1.0;
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < free_count; ++i) {
      const std::size_t j = i + rng.below(m - i);
      std::swap(idx[i], idx[j]);
      s(static_cast<Eigen::Index>(idx[i])) = rng.uniform(-1.0, 1.0);
    }
    best = std::max(best, s.dot(u * s));
  }
  return best;
}

std::string join_labels(const MonopoleConfiguration& cfg, const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ",";
    out += cfg.class_label(indices[i]);
  }
  return out;
}

BetaResult zero_result(const QuadraticSpace& space) {
  BetaResult r;
  r.value = 0;
  r.witness.point = CohomologyClass(Vector<Rational>(space.dim(), Rational(0)));
  r.witness.value = 0;
  r.mode = BetaMode::Exact;
  return r;
}

BetaResult beta_zonotope_exact(const MonopoleConfiguration& cfg, const BetaOptions& options) {
  const BoxMaximum box = max_quadratic_on_box(generator_gram(cfg), options.generator_cap);
  BetaResult r;
  r.value = box.value;
  r.mode = BetaMode::Exact;
  r.witness.point = combine(cfg, box.point);
  r.witness.barycentric = box_barycentric(cfg, box.point);
  r.witness.value = square(cfg.space(), r.witness.point);
  r.attaining = box.attaining_patterns;
  r.attaining_count = box.attaining_count;
  return r;
}

BetaResult beta_explicit_exact(const MonopoleConfiguration& cfg, const std::vector<std::size_t>& vertex_ids) {
  std::vector<Vector<Rational>> vertices;
  for (std::size_t id : vertex_ids) vertices.push_back(cfg.classes()[id].coords);
  const PolytopeMaximum<Rational> best =
      maximize_quadratic_on_polytope(cfg.space().gram(), vertices, kListedMaximisers);
  BetaResult r;
  r.value = best.witness.value;
  r.mode = BetaMode::Exact;
  r.witness.point = CohomologyClass(best.witness.point);
  r.witness.value = best.witness.value;
  for (std::size_t i = 0; i < best.witness.support.size(); ++i) {
    const std::size_t id = vertex_ids[best.witness.support[i]];
    r.witness.barycentric.push_back({id, cfg.class_label(id), best.witness.weights[i]});
  }
  for (const auto& support : best.attaining_supports) {
    std::vector<std::size_t> ids;
    for (std::size_t v : support) ids.push_back(vertex_ids[v]);
    r.attaining.push_back(join_labels(cfg, ids));
  }
  r.attaining_count = best.attaining_count;
  return r;
}

BetaResult beta_explicit_heuristic(const MonopoleConfiguration& cfg, const std::vector<std::size_t>& vertex_ids,
                                   const BetaOptions& options) {
  const std::size_t n = vertex_ids.size();
  Eigen::MatrixXd k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          to_double(pairing(cfg.space(), cfg.classes()[vertex_ids[i]], cfg.classes()[vertex_ids[j]]));
  const HeuristicPoint hp = projected_ascent(k, true, options.heuristic_starts, options.seed);

  // Certify: the floating weights are exact dyadic rationals; renormalising
  // them exactly yields a genuine hull point whose value is a lower bound.
  Vector<Rational> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = from_double(std::max(0.0, hp.x(static_cast<Eigen::Index>(i))));
  const Rational total = sum_of(w);
  BetaResult r;
  r.mode = BetaMode::Heuristic;
  r.witness.point = CohomologyClass(Vector<Rational>(cfg.space().dim(), Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(w[i]) == 0) continue;
    Rational weight = w[i] / total;
    const auto& a = cfg.classes()[vertex_ids[i]];
    for (std::size_t c = 0; c < a.size(); ++c) r.witness.point.coords[c] += weight * a.coords[c];
    r.witness.barycentric.push_back({vertex_ids[i], cfg.class_label(vertex_ids[i]), weight});
  }
  r.witness.value = square(cfg.space(), r.witness.point);
  r.value = r.witness.value;
  return r;
}

BetaResult beta_zonotope_heuristic(const MonopoleConfiguration& cfg, const BetaOptions& options) {
  const Eigen::MatrixXd u = to_eigen(generator_gram(cfg));
  const HeuristicPoint hp = projected_ascent(u, false, options.heuristic_starts, options.seed);
  Vector<Rational> s(static_cast<std::size_t>(u.rows()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = std::clamp(hp.x(static_cast<Eigen::Index>(i)), -1.0, 1.0);
    s[i] = from_double(x);
  }
  BetaResult r;
  r.mode = BetaMode::Heuristic;
  r.witness.point = combine(cfg, s);
  r.witness.barycentric = box_barycentric(cfg, s);
  r.witness.value = square(cfg.space(), r.witness.point);
  r.value = r.witness.value;
  return r;
}

}  // namespace

std::string sign_pattern_label(std::size_t index, std::size_t generators) {
  if (generators == 0) return "0";  // the empty sign sum
  std::string label(generators, '+');
  for (std::size_t i = 0; i < generators; ++i)
    if (index >> i & 1U) label[i] = '-';
  return label;
}

std::string to_string(BetaMode mode) { return mode == BetaMode::Exact ? "exact" : "heuristic"; }

MonopoleConfiguration MonopoleConfiguration::explicit_set(QuadraticSpace space, std::vector<CohomologyClass> classes,
                                                          SymmetryPolicy policy, std::vector<std::string>* warnings) {
  check_dims(space, classes, "class");
  std::set<CohomologyClass> present(classes.begin(), classes.end());
  const std::size_t listed = classes.size();
  for (std::size_t i = 0; i < listed; ++i) {
    CohomologyClass neg = -classes[i];
    if (present.count(neg)) continue;
    if (policy == SymmetryPolicy::Strict) {
      throw InputError("configuration not centrally symmetric: class " + std::to_string(i) +
                       " has no negative in the list");
    }
    if (warnings) warnings->push_back("added missing negative of class " + std::to_string(i));
    present.insert(neg);
    classes.push_back(std::move(neg));
  }
  return MonopoleConfiguration(std::move(space), Explicit{std::move(classes)});
}

MonopoleConfiguration MonopoleConfiguration::zonotope(QuadraticSpace space, std::vector<CohomologyClass> base) {
  check_dims(space, base, "generator");
  if (base.size() >= 64) throw ResourceError("zonotope with 64 or more generators is not indexable");
  return MonopoleConfiguration(std::move(space), Zonotope{std::move(base)});
}

MonopoleConfiguration MonopoleConfiguration::empty(QuadraticSpace space) {
  return MonopoleConfiguration(std::move(space), Explicit{});
}

bool MonopoleConfiguration::empty() const {
  return !is_zonotope() && std::get<Explicit>(rep_).classes.empty();
}

const std::vector<CohomologyClass>& MonopoleConfiguration::classes() const {
  if (is_zonotope()) throw std::logic_error("classes() called on a zonotope configuration");
  return std::get<Explicit>(rep_).classes;
}

const std::vector<CohomologyClass>& MonopoleConfiguration::generators() const {
  if (!is_zonotope()) throw std::logic_error("generators() called on an explicit configuration");
  return std::get<Zonotope>(rep_).base;
}

std::size_t MonopoleConfiguration::class_count() const {
  if (is_zonotope()) return std::size_t{1} << generators().size();
  return classes().size();
}

CohomologyClass MonopoleConfiguration::class_at(std::size_t index) const {
  if (!is_zonotope()) return classes().at(index);
  const auto& gens = generators();
  CohomologyClass out(Vector<Rational>(space_.dim(), Rational(0)));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const bool negative = index >> i & 1U;
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (negative)
        out.coords[c] -= gens[i].coords[c];
      else
        out.coords[c] += gens[i].coords[c];
    }
  }
  return out;
}

std::string MonopoleConfiguration::class_label(std::size_t index) const {
  if (is_zonotope()) return sign_pattern_label(index, generators().size());
  return std::to_string(index);
}

MonopoleConfiguration MonopoleConfiguration::expanded() const {
  if (!is_zonotope()) return *this;
  if (generators().size() > kMaxExpandedGenerators) throw ResourceError("zonotope too large to expand");
  std::vector<CohomologyClass> all;
  for (std::size_t j = 0; j < class_count(); ++j) all.push_back(class_at(j));
  return MonopoleConfiguration(space_, Explicit{std::move(all)});
}

MonopoleConfiguration MonopoleConfiguration::scaled(const Rational& factor) const {
  MonopoleConfiguration out = *this;
  if (auto* z = std::get_if<Zonotope>(&out.rep_)) {
    for (auto& g : z->base) g = g.scaled(factor);
  } else {
    for (auto& a : std::get<Explicit>(out.rep_).classes) a = a.scaled(factor);
  }
  return out;
}

MonopoleConfiguration MonopoleConfiguration::transformed(const DenseMatrix<Rational>& s) const {
  auto s_inv = inverse(s);
  if (!s_inv) throw InputError("basis change is singular");
  QuadraticSpace image(multiply(transpose(*s_inv), multiply(space_.gram(), *s_inv)));
  auto map = [&](const CohomologyClass& a) { return CohomologyClass(multiply(s, a.coords)); };
  MonopoleConfiguration out = *this;
  out.space_ = std::move(image);
  if (auto* z = std::get_if<Zonotope>(&out.rep_)) {
    for (auto& g : z->base) g = map(g);
  } else {
    for (auto& a : std::get<Explicit>(out.rep_).classes) a = map(a);
  }
  return out;
}

DenseMatrix<Rational> generator_gram(const MonopoleConfiguration& cfg) {
  const auto& vecs = cfg.is_zonotope() ? cfg.generators() : cfg.classes();
  DenseMatrix<Rational> u(vecs.size(), vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i; j < vecs.size(); ++j) {
      u(i, j) = pairing(cfg.space(), vecs[i], vecs[j]);
      u(j, i) = u(i, j);
    }
  return u;
}

bool span_is_negative_semidefinite(const MonopoleConfiguration& cfg) {
  if (cfg.empty()) return true;
  return is_negative_semidefinite(generator_gram(cfg));
}

ExtremePointFilter filter_extreme_points(const MonopoleConfiguration& cfg) {
  const auto& classes = cfg.classes();
  ExtremePointFilter out;
  // Drop later duplicates first.
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    bool seen = false;
    for (std::size_t j : distinct) {
      if (classes[j] == classes[i]) {
        out.removed.push_back({i, {{j, Rational(1)}}});
        seen = true;
        break;
      }
    }
    if (!seen) distinct.push_back(i);
  }
  // A distinct point is extreme iff it is not in the hull of the others.
  std::vector<std::size_t> interior;
  for (std::size_t i : distinct) {
    std::vector<Vector<Rational>> others;
    for (std::size_t j : distinct)
      if (j != i) others.push_back(classes[j].coords);
    if (convex_combination(others, classes[i].coords))
      interior.push_back(i);
    else
      out.retained.push_back(i);
  }
  std::vector<Vector<Rational>> kept;
  for (std::size_t j : out.retained) kept.push_back(classes[j].coords);
  for (std::size_t i : interior) {
    auto w = convex_combination(kept, classes[i].coords);
    if (!w) throw std::logic_error("interior point lost its certificate");
    RemovedPoint rp{i, {}};
    for (std::size_t k = 0; k < kept.size(); ++k)
      if (sgn((*w)[k]) != 0) rp.certificate.push_back({out.retained[k], (*w)[k]});
    out.removed.push_back(std::move(rp));
  }
  std::sort(out.removed.begin(), out.removed.end(),
            [](const RemovedPoint& a, const RemovedPoint& b) { return a.index < b.index; });
  return out;
}

std::vector<CohomologyClass> extreme_points(const MonopoleConfiguration& cfg) {
  std::vector<CohomologyClass> out;
  for (std::size_t i : filter_extreme_points(cfg).retained) out.push_back(cfg.classes()[i]);
  return out;
}

BoxMaximum max_quadratic_on_box(const DenseMatrix<Rational>& u, std::size_t cap) {
  const std::size_t m = u.rows();
  if (u.cols() != m || !u.is_symmetric()) throw InputError("generator Gram must be square and symmetric");
  if (m > cap) {
    throw ResourceError("box maximisation over " + std::to_string(m) + " generators exceeds cap " +
                        std::to_string(cap));
  }
  BoxMaximum best;
  bool have_best = false;
  const std::size_t full = std::size_t{1} << m;

  // Pattern order '+' < '-' < 'f' makes the tie-break independent of the
  // enumeration order.
  auto offer = [&](const Rational& value, const Vector<Rational>& s, const std::string& pattern) {
    if (!have_best || value > best.value) {
      have_best = true;
      best.value = value;
      best.point = s;
      best.pattern = pattern;
      best.attaining_patterns.assign(1, pattern);
      best.attaining_count = 1;
    } else if (value == best.value) {
      ++best.attaining_count;
      if (best.attaining_patterns.size() < kListedMaximisers) best.attaining_patterns.push_back(pattern);
      if (pattern < best.pattern) {
        best.point = s;
        best.pattern = pattern;
      }
    }
  };
  auto encode = [](char c) { return c == '+' ? 'a' : (c == '-' ? 'b' : 'c'); };
  auto decode = [](char c) { return c == 'a' ? '+' : (c == 'b' ? '-' : 'f'); };

  // Free-coordinate sets whose block U_FF is negative definite; closed
  // under taking subsets, so a set is only tested when F minus its top
  // element passed.
  std::vector<char> definite(full, 0);
  definite[0] = 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    const std::size_t top = std::bit_width(mask) - 1;
    if (!definite[mask & ~(std::size_t{1} << top)]) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) idx.push_back(i);
    DenseMatrix<Rational> block(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = u(idx[a], idx[b]);
    definite[mask] = is_negative_definite(block) ? 1 : 0;
  }

  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!definite[mask]) continue;
    // Faces with a negative semidefinite but singular block carry no
    // isolated interior maximum; their maximum sits on a lower face.
    std::vector<std::size_t> freev, fixedv;
    for (std::size_t i = 0; i < m; ++i) (mask >> i & 1U ? freev : fixedv).push_back(i);
    const std::size_t nf = freev.size(), nx = fixedv.size();
    ++best.faces_examined;

    // Critical point on the face: s_F = K s_X with K = -U_FF^{-1} U_FX.
    DenseMatrix<Rational> k(nf, nx);
    if (nf > 0) {
      DenseMatrix<Rational> uff(nf, nf), ufx(nf, nx);
      for (std::size_t a = 0; a < nf; ++a) {
        for (std::size_t b = 0; b < nf; ++b) uff(a, b) = u(freev[a], freev[b]);
        for (std::size_t b = 0; b < nx; ++b) ufx(a, b) = -u(freev[a], fixedv[b]);
      }
      auto solved = solve(uff, ufx);
      if (!solved) throw std::logic_error("negative definite block reported singular");
      k = std::move(*solved);
    }
    // Value on the face at the critical point is sigma^T S sigma, with the
    // Schur complement S = U_XX + U_XF K.
    DenseMatrix<Rational> schur(nx, nx);
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < nx; ++b) {
        Rational v = u(fixedv[a], fixedv[b]);
        for (std::size_t c = 0; c < nf; ++c) v += u(fixedv[a], freev[c]) * k(c, b);
        schur(a, b) = v;
      }

    // Gray-code walk over sign vectors on the fixed coordinates, starting
    // from all +1.
    Vector<Rational> sigma(nx, Rational(1));
    Vector<Rational> sf(nf, Rational(0));
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = 0; b < nx; ++b) sf[a] += k(a, b);
    Vector<Rational> ss(nx, Rational(0));  // S sigma
    Rational value = 0;
    for (std::size_t a = 0; a < nx; ++a) {
      for (std::size_t b = 0; b < nx; ++b) ss[a] += schur(a, b);
      value += ss[a];
    }
    const std::size_t patterns = std::size_t{1} << nx;
    for (std::size_t g = 0; g < patterns; ++g) {
      if (g > 0) {
        const std::size_t j = static_cast<std::size_t>(std::countr_zero(g));
        const bool was_plus = sgn(sigma[j]) > 0;
        // value' = value - 4 sigma_j ((S sigma)_j - S_jj sigma_j)
        Rational delta = ss[j] - schur(j, j) * sigma[j];
        if (was_plus)
          value -= 4 * delta;
        else
          value += 4 * delta;
        for (std::size_t a = 0; a < nx; ++a) {
          if (was_plus)
            ss[a] -= 2 * schur(a, j);
          else
            ss[a] += 2 * schur(a, j);
        }
        for (std::size_t a = 0; a < nf; ++a) {
          if (was_plus)
            sf[a] -= 2 * k(a, j);
          else
            sf[a] += 2 * k(a, j);
        }
        sigma[j] = was_plus ? -1 : 1;
      }
      bool interior = true;
      for (const auto& x : sf) {
        if (!(x < 1 && x > -1)) {
          interior = false;
          break;
        }
      }
      if (!interior) continue;
      if (have_best && value < best.value) continue;
      Vector<Rational> s(m);
      std::string pattern(m, 'c');
      for (std::size_t a = 0; a < nx; ++a) {
        s[fixedv[a]] = sigma[a];
        pattern[fixedv[a]] = sgn(sigma[a]) > 0 ? 'a' : 'b';
      }
      for (std::size_t a = 0; a < nf; ++a) s[freev[a]] = sf[a];
      offer(value, s, pattern);
    }
  }
  for (auto& p : best.attaining_patterns) std::transform(p.begin(), p.end(), p.begin(), decode);
  std::transform(best.pattern.begin(), best.pattern.end(), best.pattern.begin(), decode);
  std::sort(best.attaining_patterns.begin(), best.attaining_patterns.end(), [&](std::string a, std::string b) {
    std::transform(a.begin(), a.end(), a.begin(), encode);
    std::transform(b.begin(), b.end(), b.begin(), encode);
    return a < b;
  });
  if (m == 0) best.value = 0;
  return best;
}

BetaResult beta_squared(const MonopoleConfiguration& cfg, const BetaOptions& options) {
  if (cfg.empty()) return zero_result(cfg.space());
  BetaResult result;
  if (cfg.is_zonotope()) {
    if (cfg.generators().size() <= options.generator_cap) return beta_zonotope_exact(cfg, options);
    if (!options.allow_heuristic) {
      throw ResourceError("zonotope has " + std::to_string(cfg.generators().size()) +
                          " generators, above the exact cap " + std::to_string(options.generator_cap) +
                          "; heuristics are disabled");
    }
    result = beta_zonotope_heuristic(cfg, options);
  } else {
    const ExtremePointFilter filter = filter_extreme_points(cfg);
    if (filter.retained.size() <= options.vertex_cap) return beta_explicit_exact(cfg, filter.retained);
    if (!options.allow_heuristic) {
      throw ResourceError("hull has " + std::to_string(filter.retained.size()) +
                          " vertices, above the exact cap " + std::to_string(options.vertex_cap) +
                          "; heuristics are disabled");
    }
    result = beta_explicit_heuristic(cfg, filter.retained, options);
  }
  result.oracle_gap = to_double(result.value) - monte_carlo_oracle(cfg, options.oracle_samples, options.seed);
  return result;
}

double monte_carlo_oracle(const MonopoleConfiguration& cfg, std::size_t samples, std::uint64_t seed) {
  if (cfg.empty()) throw InputError("monte_carlo_oracle requires a non-empty configuration");
  if (cfg.is_zonotope()) {
    if (cfg.generators().empty()) return 0.0;
    return box_sampler(to_eigen(generator_gram(cfg)), samples, seed);
  }
  return hull_sampler(to_eigen(generator_gram(cfg)), cfg.space().dim(), samples, seed);
}

double monte_carlo_oracle(const Eigen::MatrixXd& gram, const std::vector<Eigen::VectorXd>& vertices,
                          std::size_t samples, std::uint64_t seed) {
  if (vertices.empty()) throw InputError("monte_carlo_oracle requires a non-empty configuration");
  const auto n = static_cast<Eigen::Index>(vertices.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      k(i, j) = vertices[static_cast<std::size_t>(i)].dot(gram * vertices[static_cast<std::size_t>(j)]);
  return hull_sampler(k, static_cast<std::size_t>(gram.rows()), samples, seed);
}

}  // namespace betahull

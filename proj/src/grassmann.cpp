#include "betahull/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "betahull/errors.hpp"
#include "betahull/random.hpp"
#include "optimize.hpp"

namespace betahull {

namespace {

constexpr std::size_t kMaxListed = 64;
constexpr std::size_t kMaxZonotopeGenerators = 24;

bool near_max(double v, double best) { return v >= best - 1e-9 * std::max(1.0, std::abs(best)); }

// Sylvester coordinates of the classes (explicit) or generators (zonotope),
// one column each.
struct ChartData {
  Eigen::MatrixXd yp;
  Eigen::MatrixXd yq;
  bool zonotope = false;
};

ChartData chart_data(const GraphChart& chart, const MonopoleConfiguration& cfg) {
  const auto& vectors = cfg.is_zonotope() ? cfg.generators() : cfg.classes();
  ChartData d;
  d.zonotope = cfg.is_zonotope();
  d.yp.resize(chart.positive_dim(), vectors.size());
  d.yq.resize(chart.negative_dim(), vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    auto [p, q] = chart.coordinates(vectors[j]);
    d.yp.col(j) = p;
    d.yq.col(j) = q;
  }
  return d;
}

// Visits every sign vector with e_0 = +1 in Gray-code order, passing the
// class index (bit i set: e_i = -1) and |sum e_i z_i|^2.
template <class Visit>
void gray_walk(const Eigen::MatrixXd& z, Visit&& visit) {
  const std::size_t m = z.cols();
  Eigen::VectorXd v = z.rowwise().sum();
  std::size_t mask = 0;
  const std::size_t half = std::size_t{1} << (m - 1);
  for (std::size_t g = 0; g < half; ++g) {
    if (g > 0) {
      const std::size_t bit = static_cast<std::size_t>(std::countr_zero(g)) + 1;
      mask ^= std::size_t{1} << bit;
      if (mask >> bit & 1) v -= 2.0 * z.col(bit);
      else v += 2.0 * z.col(bit);
    }
    visit(mask, v.squaredNorm());
  }
}

// max over sign vectors e of |sum e_i z_i|^2, with z_i the columns of z.
WorstCase sign_max(const Eigen::MatrixXd& z, bool collect) {
  const std::size_t m = z.cols();
  WorstCase out;
  if (m == 0) {
    if (collect) out.attaining.push_back(0);
    return out;
  }
  if (m > kMaxZonotopeGenerators) throw ResourceError("too many zonotope generators for the projected maximum");
  if (z.rows() == 1 && !collect) {
    out.value = z.row(0).cwiseAbs().sum();
    out.value *= out.value;
    return out;
  }
  double best = 0.0;
  gray_walk(z, [&](std::size_t, double val) { best = std::max(best, val); });
  out.value = best;
  if (!collect) return out;
  const std::size_t full = (std::size_t{1} << m) - 1;
  gray_walk(z, [&](std::size_t mask, double val) {
    if (near_max(val, best)) {
      out.attaining.push_back(mask);
      out.attaining.push_back(full ^ mask);
    }
  });
  std::sort(out.attaining.begin(), out.attaining.end());
  return out;
}

// Columns z with (a+)^2 = |z|^2 at chart point T:
// (a+)^2 = c^T (I - T^T T)^{-1} c with c = yp - T^T yq, and z = L^{-1} c.
Eigen::MatrixXd chart_projection(const ChartData& d, const Eigen::MatrixXd& t) {
  const Eigen::Index p = d.yp.rows();
  Eigen::MatrixXd c = d.yp;
  if (t.size() > 0) c.noalias() -= t.transpose() * d.yq;
  const Eigen::MatrixXd metric = Eigen::MatrixXd::Identity(p, p) - t.transpose() * t;
  Eigen::LLT<Eigen::MatrixXd> llt(metric);
  if (llt.info() != Eigen::Success) throw ChartBoundaryError("graph map has spectral norm >= 1");
  return llt.matrixL().solve(c);
}

double chart_value(const ChartData& d, const Eigen::MatrixXd& t) {
  const Eigen::MatrixXd z = chart_projection(d, t);
  if (d.zonotope) return sign_max(z, false).value;
  double best = 0.0;
  for (Eigen::Index j = 0; j < z.cols(); ++j) best = std::max(best, z.col(j).squaredNorm());
  return best;
}

// T = tanh(|W|) W / |W|. The norm is capped just below 1 so that far-out
// iterates stay valid chart points; the cap lies above the boundary flag.
constexpr double kMaxChartNorm = 1.0 - 1e-10;

Eigen::MatrixXd squash(const Eigen::MatrixXd& w) {
  if (w.size() == 0) return w;
  const double n = spectral_norm(w);
  if (n == 0.0) return w;
  return (std::min(std::tanh(n), kMaxChartNorm) / n) * w;
}

// Sylvester coordinates of every class (zonotope: one of each +- pair).
struct ClassColumns {
  Eigen::MatrixXd yp;
  Eigen::MatrixXd yq;
};

std::optional<ClassColumns> class_columns(const ChartData& d) {
  if (!d.zonotope) return ClassColumns{d.yp, d.yq};
  const std::size_t m = d.yp.cols();
  if (m == 0) return ClassColumns{Eigen::MatrixXd::Zero(d.yp.rows(), 1), Eigen::MatrixXd::Zero(d.yq.rows(), 1)};
  if (m > 16) return std::nullopt;
  const std::size_t half = std::size_t{1} << (m - 1);
  ClassColumns out{Eigen::MatrixXd(d.yp.rows(), half), Eigen::MatrixXd(d.yq.rows(), half)};
  for (std::size_t mask = 0; mask < half; ++mask) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d.yp.rows()), q = Eigen::VectorXd::Zero(d.yq.rows());
    for (std::size_t i = 0; i < m; ++i) {
      const double e = (mask << 1 >> i & 1) ? -1.0 : 1.0;  // bit 0 fixed at +1
      p += e * d.yp.col(i);
      q += e * d.yq.col(i);
    }
    out.yp.col(mask) = p;
    out.yq.col(mask) = q;
  }
  return out;
}

// mu log sum exp(f_j / mu) over the classes, with its gradient in T, where
// f_j(T) = c_j^T (I - T^T T)^{-1} c_j and grad f_j = 2 (T u_j - yq_j) u_j^T,
// u_j = (I - T^T T)^{-1} c_j. Each f_j is convex on the unit ball of T
// (matrix-fractional function of an affine and a concave argument), so the
// smoothed worst case is convex too. Returns +inf outside the chart.
double smoothed_worst_case(const ClassColumns& cc, const Eigen::MatrixXd& t, double mu, Eigen::MatrixXd* grad) {
  const Eigen::Index p = cc.yp.rows();
  const Eigen::MatrixXd metric = Eigen::MatrixXd::Identity(p, p) - t.transpose() * t;
  Eigen::LLT<Eigen::MatrixXd> llt(metric);
  if (llt.info() != Eigen::Success || spectral_norm(t) > kMaxChartNorm) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd c = cc.yp - t.transpose() * cc.yq;
  const Eigen::MatrixXd u = llt.solve(c);
  const Eigen::VectorXd f = (c.array() * u.array()).colwise().sum().transpose();
  const double top = f.maxCoeff();
  const Eigen::ArrayXd w = ((f.array() - top) / mu).exp();
  const double total = w.sum();
  if (grad) {
    const Eigen::VectorXd weights = (w / total).matrix();
    *grad = 2.0 * (t * u - cc.yq) * weights.asDiagonal() * u.transpose();
  }
  return top + mu * std::log(total);
}

// Quasi-Newton descent on a decreasing smoothing schedule, from a chart
// point produced by the simplex search.
Eigen::MatrixXd polish(const ClassColumns& cc, Eigen::MatrixXd t, double scale) {
  const Eigen::Index n = t.size();
  auto flat = [](const Eigen::MatrixXd& m) { return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size()); };
  for (double mu = 1e-3 * scale; mu >= 1e-11 * scale; mu *= 0.1) {
    Eigen::MatrixXd g;
    double f = smoothed_worst_case(cc, t, mu, &g);
    if (!std::isfinite(f)) break;
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    for (int iter = 0; iter < 400; ++iter) {
      const Eigen::VectorXd gv = flat(g);
      if (gv.norm() <= 1e-14 * scale) break;
      Eigen::VectorXd dir = -h * gv;
      if (dir.dot(gv) >= 0) {
        h.setIdentity();
        dir = -gv;
      }
      double step = 1.0;
      Eigen::MatrixXd t_new, g_new;
      double f_new = f;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
        t_new = t + step * Eigen::Map<const Eigen::MatrixXd>(dir.data(), t.rows(), t.cols());
        f_new = smoothed_worst_case(cc, t_new, mu, &g_new);
        if (f_new <= f + 1e-4 * step * dir.dot(gv)) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      const Eigen::VectorXd s = flat(t_new) - flat(t);
      const Eigen::VectorXd y = flat(g_new) - gv;
      const double sy = s.dot(y);
      if (sy > 1e-18) {
        const double rho = 1.0 / sy;
        const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
        h = left * h * left.transpose() + rho * s * s.transpose();
      }
      const double decrease = f - f_new;
      t = std::move(t_new);
      g = std::move(g_new);
      f = f_new;
      if (decrease <= 1e-16 * scale) break;
    }
  }
  return t;
}

struct StartOutcome {
  detail::MinimizeResult run;
  Eigen::MatrixXd t;
};

}  // namespace

PositiveSubspace::PositiveSubspace(QuadraticSpace space, Eigen::MatrixXd basis, std::optional<Eigen::MatrixXd> graph_map)
    : space_(std::move(space)), basis_(std::move(basis)), graph_map_(std::move(graph_map)) {
  if (static_cast<std::size_t>(basis_.rows()) != space_.dim()) throw InputError("subspace basis has the wrong row count");
  if (static_cast<std::size_t>(basis_.cols()) != signature(space_).positive)
    throw InputError("positive subspace must have dimension b+");
  if (basis_.cols() > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(restricted_gram());
    if (llt.info() != Eigen::Success) throw DegenerateSubspaceError("form is not positive definite on the subspace");
  }
}

Eigen::MatrixXd PositiveSubspace::restricted_gram() const {
  return basis_.transpose() * space_.gram_double() * basis_;
}

GraphChart::GraphChart(const QuadraticSpace& space) : space_(space) {
  const SylvesterBasis sb = signature_decompose(space);
  const Eigen::MatrixXd s = sb.float_basis();
  const Eigen::MatrixXd c = sb.float_coordinates();
  const auto p = static_cast<Eigen::Index>(sb.signature.positive);
  const auto q = static_cast<Eigen::Index>(sb.signature.negative);
  plus_ = s.leftCols(p);
  minus_ = s.middleCols(p, q);
  coords_plus_ = c.topRows(p);
  coords_minus_ = c.middleRows(p, q);
  null_ = sb.signature.null;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> GraphChart::coordinates(const CohomologyClass& a) const {
  if (a.size() != space_.dim()) throw InputError("class dimension does not match the space");
  const Eigen::VectorXd v = a.to_double();
  return {coords_plus_ * v, coords_minus_ * v};
}

Eigen::MatrixXd GraphChart::basis_for(const Eigen::MatrixXd& t) const {
  if (t.rows() != minus_.cols() || t.cols() != plus_.cols()) throw InputError("graph map must be b- x b+");
  Eigen::MatrixXd b = plus_;
  if (t.size() > 0) b += minus_ * t;
  return b;
}

PositiveSubspace GraphChart::subspace(const Eigen::MatrixXd& t) const {
  if (t.size() > 0 && spectral_norm(t) >= 1.0) throw ChartBoundaryError("graph map has spectral norm >= 1");
  return PositiveSubspace(space_, basis_for(t), t);
}

double spectral_norm(const Eigen::MatrixXd& t) {
  if (t.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
  return svd.singularValues()(0);
}

PositiveSubspace subspace_from_graph(const QuadraticSpace& space, const Eigen::MatrixXd& t) {
  GraphChart chart(space);
  if (chart.null_dim() > 0) throw InputError("graph chart needs a nondegenerate form");
  return chart.subspace(t);
}

Eigen::MatrixXd random_graph_map(const QuadraticSpace& space, double radius, std::uint64_t seed) {
  const Signature sig = signature(space);
  Rng rng(seed);
  Eigen::MatrixXd t(sig.negative, sig.positive);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = rng.normal();
  const double n = spectral_norm(t);
  if (n > 0) t *= radius / n;
  return t;
}

WorstCase worst_case(const MonopoleConfiguration& cfg, const PositiveSubspace& h) {
  if (cfg.empty()) throw InputError("worst_case requires a non-empty configuration");
  if (!(cfg.space() == h.space())) throw InputError("subspace and configuration live in different spaces");
  const Eigen::MatrixXd g = cfg.space().gram_double();
  const Eigen::MatrixXd& b = h.basis();
  const auto& vectors = cfg.is_zonotope() ? cfg.generators() : cfg.classes();
  Eigen::MatrixXd w(b.cols(), vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) w.col(j) = b.transpose() * (g * vectors[j].to_double());
  Eigen::MatrixXd z = w;
  if (b.cols() > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(h.restricted_gram());
    if (llt.info() != Eigen::Success) throw DegenerateSubspaceError("form is not positive definite on the subspace");
    z = llt.matrixL().solve(w);
  }
  if (cfg.is_zonotope()) {
    WorstCase out = sign_max(z, true);
    if (out.attaining.size() > kMaxListed) out.attaining.resize(kMaxListed);
    return out;
  }
  WorstCase out;
  out.value = -1.0;
  for (Eigen::Index j = 0; j < z.cols(); ++j) out.value = std::max(out.value, z.col(j).squaredNorm());
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    if (near_max(z.col(j).squaredNorm(), out.value)) out.attaining.push_back(static_cast<std::size_t>(j));
  return out;
}

AlphaResult alpha_squared(const MonopoleConfiguration& cfg, const AlphaOptions& options) {
  const GraphChart chart(cfg.space());
  const std::size_t p = chart.positive_dim();
  const std::size_t q = chart.negative_dim();
  AlphaResult result;
  const Eigen::MatrixXd origin = Eigen::MatrixXd::Zero(q, p);
  if (cfg.empty()) {
    result.achieving_subspace = chart.subspace(origin);
    result.trace = {0.0};
    return result;
  }

  const ChartData data = chart_data(chart, cfg);
  const std::size_t n = p * q;
  auto finish = [&](const Eigen::MatrixXd& t, std::vector<double> trace, std::size_t start) {
    PositiveSubspace h = chart.subspace(t);
    const WorstCase wc = worst_case(cfg, h);
    result.value = std::max(wc.value, 0.0);
    result.classes_attaining = wc.attaining;
    result.achieving_subspace = std::move(h);
    result.trace = std::move(trace);
    result.best_start = start;
    result.chart_norm = spectral_norm(t);
    result.boundary_flag = result.chart_norm > options.boundary_threshold;
    return result;
  };
  if (n == 0) {
    // Gr+ is a single point: b+ = 0 or b- = 0.
    const double v = chart_value(data, origin);
    return finish(origin, {v}, 0);
  }

  detail::NelderMeadOptions nm;
  nm.tolerance = options.tolerance;
  nm.window = options.window;
  nm.max_evaluations = options.max_evaluations_per_start;

  const std::size_t starts = std::max<std::size_t>(options.starts, 1);
  std::vector<StartOutcome> outcomes(starts);
  auto to_t = [&](std::span<const double> v) {
    Eigen::Map<const Eigen::MatrixXd> w(v.data(), static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p));
    return squash(w);
  };
  auto run_start = [&](std::size_t k) {
    std::vector<double> x0(n, 0.0);
    if (k > 0) {
      Rng rng(stream_seed(options.seed, k));
      for (double& v : x0) v = rng.normal();
    }
    auto objective = [&](std::span<const double> v) { return chart_value(data, to_t(v)); };
    outcomes[k].run = detail::nelder_mead(objective, std::move(x0), nm);
    outcomes[k].t = to_t(outcomes[k].run.x);
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, starts));
  if (threads <= 1) {
    for (std::size_t k = 0; k < starts; ++k) run_start(k);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < starts; k += threads) run_start(k);
      });
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < starts; ++k)
    if (outcomes[k].run.value < outcomes[best].run.value) best = k;
  Eigen::MatrixXd t = outcomes[best].t;
  std::vector<double> trace = std::move(outcomes[best].run.trace);
  if (const auto cc = class_columns(data)) {
    const Eigen::MatrixXd polished = polish(*cc, t, std::max(1.0, trace.back()));
    const double v = chart_value(data, polished);
    if (v < trace.back()) {
      t = polished;
      trace.push_back(v);
    }
  }
  return finish(t, std::move(trace), best);
}

}  // namespace betahull

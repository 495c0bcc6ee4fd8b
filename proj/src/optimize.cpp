#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace betahull::detail {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  MinimizeResult out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  out.x = x0;
  out.value = eval(x0);
  out.trace.push_back(out.value);
  if (n == 0) return out;

  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  double step = options.initial_step;
  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    const double value_at_restart = out.value;
    std::vector<Vertex> simplex;
    simplex.push_back({out.x, out.value});
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = out.x;
      x[i] += step;
      simplex.push_back({x, eval(x)});
    }

    std::vector<double> history;
    for (;;) {
      std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      if (simplex.front().f < out.value) {
        out.value = simplex.front().f;
        out.x = simplex.front().x;
      }
      out.trace.push_back(out.value);
      history.push_back(out.value);
      if (history.size() > options.window &&
          history[history.size() - 1 - options.window] - history.back() < options.tolerance)
        break;
      if (out.evaluations >= options.max_evaluations) break;
      double diameter = 0.0;
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          diameter = std::max(diameter, std::abs(simplex[i].x[j] - simplex[0].x[j]));
      if (diameter < 1e-13) break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].x[j] / dn;
      auto along = [&](double t) {
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + t * (simplex[n].x[j] - centroid[j]);
        return x;
      };

      std::vector<double> xr = along(-alpha);
      const double fr = eval(xr);
      if (fr < simplex[0].f) {
        std::vector<double> xe = along(-alpha * beta);
        const double fe = eval(xe);
        simplex[n] = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
        continue;
      }
      if (fr < simplex[n - 1].f) {
        simplex[n] = {std::move(xr), fr};
        continue;
      }
      const bool outside = fr < simplex[n].f;
      std::vector<double> xc = along(outside ? -alpha * gamma : gamma);
      const double fc = eval(xc);
      if (fc < std::min(fr, simplex[n].f)) {
        simplex[n] = {std::move(xc), fc};
        continue;
      }
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
          simplex[i].x[j] = simplex[0].x[j] + delta * (simplex[i].x[j] - simplex[0].x[j]);
        simplex[i].f = eval(simplex[i].x);
      }
    }
    if (out.evaluations >= options.max_evaluations) break;
    if (restart > 0 && value_at_restart - out.value < options.tolerance) break;
    step = std::max(step * 0.5, 1e-4);
  }
  return out;
}

}  // namespace betahull::detail

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace betahull::detail {

struct NelderMeadOptions {
  double initial_step = 0.5;
  // Converged when the best value improved by less than `tolerance` over the
  // last `window` iterations.
  double tolerance = 1e-8;
  std::size_t window = 50;
  std::size_t max_evaluations = 200000;
  std::size_t max_restarts = 25;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<double> trace;  // best value after each iteration, non-increasing
  std::size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Adaptive Nelder-Mead (dimension-dependent coefficients) with restarts.
/// After each convergence the simplex is rebuilt around the incumbent;
/// the run ends once a restart fails to improve on it by `tolerance`.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& options);

}  // namespace betahull::detail

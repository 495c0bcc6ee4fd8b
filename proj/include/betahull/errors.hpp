#pragma once

#include <stdexcept>
#include <string>

namespace betahull {

// Malformed or inconsistent input. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed a configured cap. Exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The intersection form restricted to a subspace is singular.
class DegenerateSubspaceError : public InputError {
 public:
  using InputError::InputError;
};

// Graph-chart matrix with spectral norm >= 1.
class ChartBoundaryError : public InputError {
 public:
  using InputError::InputError;
};

// Manifold model for which no monopole-class rule is known.
class UnsupportedModelError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace betahull

#pragma once

#include <stdexcept>
#include <string>

namespace collig {

// Bad arguments: shape mismatches, unsupported mode/flavor combinations,
// malformed input documents. The CLI maps this to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A requested computation exceeds a configured work cap (e.g. symbolic
// determinant side, word length).
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Characteristic-function evaluation at a pole: 1 - d*S~ is singular at the
// requested point. `residual` carries the detected magnitude (smallest
// singular value in float mode, 0.0 for an exact zero determinant).
struct PoleError : std::runtime_error {
  double residual;
  PoleError(const std::string& msg, double res)
      : std::runtime_error(msg), residual(res) {}
};

// Inversion / solve on a matrix that is singular (or numerically singular).
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace collig

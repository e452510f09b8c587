#pragma once

#include <stdexcept>
#include <string>

namespace cvc {

/// Shapes that do not line up (non-square QR input, length mismatches).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Out-of-range or otherwise invalid parameters and inputs.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// symmetric_eig received a matrix that is not symmetric within tolerance.
struct SymmetryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Back-substitution hit a pivot below the floor. The Fiedler solver treats
/// this as the eigen-shift colliding with an eigenvalue.
struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shifted inverse iteration stayed singular through all eta restarts.
struct ShiftCollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Graph with an isolated vertex; the normalized Laplacian is undefined.
struct DegenerateGraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every eigenvalue of the Gram matrix fell below the truncation cutoff.
struct DegenerateDictionaryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A per-point coding failure inside proximity matrix assembly.
struct CodingError : std::runtime_error {
  CodingError(int point, const std::string& what)
      : std::runtime_error("coding failed at point " + std::to_string(point) +
                           ": " + what),
        point_index(point) {}
  int point_index;
};

/// Probe shares no cluster with any gallery class: all distances infinite.
struct NoOverlapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries the offending line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cvc

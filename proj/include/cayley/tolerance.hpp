#pragma once

#include <cmath>
#include <stdexcept>

namespace cayley {

/// Absolute/relative tolerance pair used throughout the library. All checked
/// formulas are low-degree polynomials in inputs of magnitude O(1), so the
/// defaults are tight.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;

  void validate() const {
    if (!(std::isfinite(abs_tol) && std::isfinite(rel_tol)) || abs_tol < 0.0 ||
        rel_tol < 0.0) {
      throw std::invalid_argument("Tolerance: both bounds must be finite and non-negative");
    }
  }
};

}  // namespace cayley

#pragma once

#include "stogram/system.hpp"

namespace stogram {

/// Time direction of a stacked-measurement object.
enum class Direction {
  FromInitial,  // measurements stacked forward from k = 0, anchored at x_0
  FromFinal,    // measurements stacked backward from k = N, anchored at x_N
};

/// Symmetric nonnegative-definite n x n information matrix (Gramian / FIM)
/// together with the window it was computed over.
struct InfoMatrix {
  Matrix m;
  int window = 0;        // number of measurements w
  int anchor = 0;        // state index the information is taken with respect to
  Direction dir = Direction::FromInitial;
  double raw_sym_err = 0.0;  // asymmetry of the raw result before symmetrization
  long long wall_ns = 0;     // wall time of the dominating solve, if measured
};

/// Minimum eigenvalue of the symmetrized matrix.
double min_eigenvalue(const Matrix& m);

/// min eig of (a - b) >= -slack * max(1, ||a||_F): Loewner a >= b up to rounding.
bool loewner_geq(const Matrix& a, const Matrix& b, double slack = 1e-9);

}  // namespace stogram

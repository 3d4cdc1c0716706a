#pragma once

#include "stogram/info.hpp"

namespace stogram {

/// Stacked output matrix: rows C_tau Phi_{tau,0} (FromInitial) or
/// C_{N-tau} Phi_{N-tau,N} (FromFinal), tau = 0..w-1.
struct StackedOutputMatrix {
  Matrix m;  // (w*p) x n
  Direction dir = Direction::FromInitial;
  int window = 0;
};

StackedOutputMatrix observability_matrix(const TimeVaryingLinearSystem& sys, int w);
StackedOutputMatrix constructability_matrix(const TimeVaryingLinearSystem& sys, int w);

/// Deterministic Gramian O^T O of a stacked output matrix.
InfoMatrix deterministic_gramian(const StackedOutputMatrix& stacked);

struct UnobservabilityMeasures {
  double condition_number;         // lambda_max / lambda_min, inf if lambda_min <= 0
  double inverse_min_eigenvalue;   // 1 / lambda_min, inf if lambda_min <= 0
};

UnobservabilityMeasures unobservability_measures(const InfoMatrix& g);

/// Numerical rank by singular values above 1e-10 * sigma_max.
int numerical_rank(const Matrix& m);

}  // namespace stogram

#pragma once

#include <random>

#include "stogram/system.hpp"

namespace stogram::testing {

/// Random rotation-times-scaling matrix with singular values in [0.6, 1.8];
/// well conditioned and invertible.
inline Matrix random_well_conditioned(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  std::uniform_real_distribution<double> scale(0.6, 1.8);
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = scale(rng);
  return q * d * q.transpose();
}

/// Random SPD matrix A A^T + eps I.
inline Matrix random_spd(std::mt19937& rng, int n, double eps = 0.1) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  return a * a.transpose() + eps * Matrix::Identity(n, n);
}

inline Matrix random_dense(std::mt19937& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = gauss(rng);
  return a;
}

inline TimeVaryingLinearSystem random_system(std::mt19937& rng, int n, int p,
                                             int N) {
  TimeVaryingLinearSystem sys;
  sys.horizon = N;
  sys.state_dim = n;
  sys.meas_dim = p;
  for (int k = 0; k < N; ++k) {
    sys.phi.push_back(random_well_conditioned(rng, n));
    sys.q.push_back(random_spd(rng, n));
  }
  for (int k = 0; k <= N; ++k) {
    sys.c.push_back(random_dense(rng, p, n));
    sys.r.push_back(random_spd(rng, p));
  }
  return sys;
}

inline TimeVaryingLinearSystem random_system(std::mt19937& rng, int max_dim = 3,
                                             int max_horizon = 8) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<int> hor(1, max_horizon);
  return random_system(rng, dim(rng), dim(rng), hor(rng));
}

/// Scalar system with phi = c = q = r = 1 over the given horizon.
inline TimeVaryingLinearSystem scalar_unit_system(int N) {
  TimeVaryingLinearSystem sys;
  sys.horizon = N;
  sys.state_dim = 1;
  sys.meas_dim = 1;
  const Matrix one = Matrix::Constant(1, 1, 1.0);
  sys.phi.assign(static_cast<size_t>(N), one);
  sys.q.assign(static_cast<size_t>(N), one);
  sys.c.assign(static_cast<size_t>(N) + 1, one);
  sys.r.assign(static_cast<size_t>(N) + 1, one);
  return sys;
}

inline double rel_err(const Matrix& actual, const Matrix& expected) {
  const double scale = std::max(1e-300, expected.norm());
  return (actual - expected).norm() / scale;
}

}  // namespace stogram::testing

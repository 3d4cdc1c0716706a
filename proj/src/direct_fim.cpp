#include "stogram/direct_fim.hpp"

#include <Eigen/Cholesky>
#include <chrono>
#include <sstream>
#include <vector>

namespace stogram {

namespace {

void check_window(const TimeVaryingLinearSystem& sys, int w) {
  if (w < 1 || w > sys.horizon + 1) {
    std::ostringstream os;
    os << "window " << w << " outside [1, " << sys.horizon + 1 << "]";
    throw RangeError(os.str());
  }
}

/// Size of the first leading principal minor whose Cholesky fails (1-based).
int failing_pivot(const Matrix& m) {
  for (int k = 1; k <= m.rows(); ++k) {
    Eigen::LLT<Matrix> llt(m.topLeftCorner(k, k));
    if (llt.info() != Eigen::Success) return k;
  }
  return -1;
}

}  // namespace

InfoMatrix fim_linear_gaussian(const Matrix& H, const MeasurementCovariance& cov) {
  if (H.rows() != cov.m.rows())
    throw UnsupportedError("fim_linear_gaussian: dimension mismatch");
  const auto start = std::chrono::steady_clock::now();
  Eigen::LLT<Matrix> llt(symmetrized(cov.m));
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    const int pivot = failing_pivot(symmetrized(cov.m));
    os << "measurement covariance not positive definite (pivot " << pivot << ")";
    throw FactorizationError(os.str(), pivot);
  }
  Matrix raw = H.transpose() * llt.solve(H);
  const auto stop = std::chrono::steady_clock::now();

  InfoMatrix out;
  out.raw_sym_err = symmetry_error(raw);
  out.m = symmetrized(raw);
  out.window = cov.window;
  out.dir = cov.dir;
  out.wall_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return out;
}

namespace {

MeasurementCovariance blkdiag_noise(const TimeVaryingLinearSystem& sys, int w,
                                    Direction dir) {
  const int p = sys.meas_dim;
  const int N = sys.horizon;
  Matrix cov = Matrix::Zero(w * p, w * p);
  for (int i = 0; i < w; ++i) {
    const int k = dir == Direction::FromInitial ? i : N - i;
    cov.block(i * p, i * p, p, p) = sys.r[static_cast<size_t>(k)];
  }
  return {cov, w, dir, CovConstruction::MForm};
}

}  // namespace

InfoMatrix obs_fim_no_process_noise(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  auto out = fim_linear_gaussian(observability_matrix(sys, w).m,
                                 blkdiag_noise(sys, w, Direction::FromInitial));
  out.anchor = 0;
  return out;
}

InfoMatrix cons_fim_no_process_noise(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  auto out = fim_linear_gaussian(constructability_matrix(sys, w).m,
                                 blkdiag_noise(sys, w, Direction::FromFinal));
  out.anchor = sys.horizon;
  return out;
}

MeasurementCovariance meas_cov_theorem1(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  const int p = sys.meas_dim;
  Matrix cov = Matrix::Zero(w * p, w * p);

  // stacked[j][i] = C_j Phi_{j,i} for i <= j, built by backward accumulation.
  std::vector<std::vector<Matrix>> stacked(static_cast<size_t>(w));
  for (int j = 0; j < w; ++j) {
    auto& row = stacked[static_cast<size_t>(j)];
    row.resize(static_cast<size_t>(j) + 1);
    row[static_cast<size_t>(j)] = sys.c[static_cast<size_t>(j)];
    for (int i = j - 1; i >= 0; --i)
      row[static_cast<size_t>(i)] =
          row[static_cast<size_t>(i) + 1] * sys.phi[static_cast<size_t>(i)];
  }

  cov.block(0, 0, p, p) = sys.r[0];
  for (int j = 1; j < w; ++j) {
    for (int k = 1; k <= j; ++k) {
      Matrix block = Matrix::Zero(p, p);
      for (int i = 1; i <= k; ++i)
        block += stacked[static_cast<size_t>(j)][static_cast<size_t>(i)] *
                 sys.q[static_cast<size_t>(i) - 1] *
                 stacked[static_cast<size_t>(k)][static_cast<size_t>(i)].transpose();
      if (j == k) block += sys.r[static_cast<size_t>(j)];
      cov.block(j * p, k * p, p, p) = block;
      if (j != k) cov.block(k * p, j * p, p, p) = block.transpose();
    }
  }
  return {cov, w, Direction::FromInitial, CovConstruction::BlockSum};
}

namespace detail {

MeasurementCovariance meas_cov_m_form_filled(const TimeVaryingLinearSystem& sys,
                                             int w, Direction dir,
                                             double trailing_fill) {
  const int n = sys.state_dim;
  const int p = sys.meas_dim;
  const int N = sys.horizon;

  Matrix prop = Matrix::Zero(w * p, w * n);  // M, strictly block lower triangular
  for (int i = 2; i <= w; ++i) {
    for (int j = 1; j < i; ++j) {
      if (dir == Direction::FromInitial) {
        prop.block((i - 1) * p, (j - 1) * n, p, n) =
            sys.c[static_cast<size_t>(i) - 1] * state_transition(sys, i - 1, j);
      } else {
        prop.block((i - 1) * p, (j - 1) * n, p, n) =
            sys.c[static_cast<size_t>(N - i + 1)] *
            state_transition(sys, N - i + 1, N - j + 1);
      }
    }
  }

  Matrix qblk = Matrix::Zero(w * n, w * n);
  for (int j = 0; j < w - 1; ++j) {
    const int k = dir == Direction::FromInitial ? j : N - 1 - j;
    qblk.block(j * n, j * n, n, n) = sys.q[static_cast<size_t>(k)];
  }
  // Trailing n x n block multiplies only zero columns of M; any fill is inert.
  qblk.block((w - 1) * n, (w - 1) * n, n, n) =
      trailing_fill * Matrix::Identity(n, n);

  Matrix cov = blkdiag_noise(sys, w, dir).m + prop * qblk * prop.transpose();
  return {cov, w, dir, CovConstruction::MForm};
}

}  // namespace detail

MeasurementCovariance meas_cov_m_form(const TimeVaryingLinearSystem& sys, int w,
                                      Direction dir) {
  check_window(sys, w);
  return detail::meas_cov_m_form_filled(sys, w, dir, 0.0);
}

InfoMatrix obs_fim_direct(const TimeVaryingLinearSystem& sys, int w,
                          CovConstruction construction) {
  check_window(sys, w);
  MeasurementCovariance cov = construction == CovConstruction::BlockSum
                                  ? meas_cov_theorem1(sys, w)
                                  : meas_cov_m_form(sys, w, Direction::FromInitial);
  auto out = fim_linear_gaussian(observability_matrix(sys, w).m, cov);
  out.anchor = 0;
  return out;
}

InfoMatrix cons_fim_direct(const TimeVaryingLinearSystem& sys, int w,
                           CovConstruction construction) {
  check_window(sys, w);
  if (construction == CovConstruction::BlockSum)
    throw UnsupportedError(
        "block-sum covariance is defined for the forward stack only");
  auto out = fim_linear_gaussian(constructability_matrix(sys, w).m,
                                 meas_cov_m_form(sys, w, Direction::FromFinal));
  out.anchor = sys.horizon;
  return out;
}

}  // namespace stogram

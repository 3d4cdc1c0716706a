#pragma once

#include "stogram/deterministic.hpp"
#include "stogram/info.hpp"

namespace stogram {

/// How a stacked-measurement covariance was assembled.
enum class CovConstruction {
  BlockSum,  // per-block covariance sums (forward direction only)
  MForm,     // R + M Q M^T propagation-of-uncertainty form
};

/// wp x wp covariance of a stacked measurement window.
struct MeasurementCovariance {
  Matrix m;
  int window = 0;
  Direction dir = Direction::FromInitial;
  CovConstruction construction = CovConstruction::MForm;
};

/// H^T cov^{-1} H via Cholesky solve, then symmetrized. raw_sym_err records the
/// asymmetry of the product before symmetrization; wall_ns times the solve.
InfoMatrix fim_linear_gaussian(const Matrix& H, const MeasurementCovariance& cov);

/// FIM with respect to x_0 / x_N for the measurement-noise-only model
/// (process noise ignored): O^T blkdiag(R)^{-1} O.
InfoMatrix obs_fim_no_process_noise(const TimeVaryingLinearSystem& sys, int w);
InfoMatrix cons_fim_no_process_noise(const TimeVaryingLinearSystem& sys, int w);

/// Forward stacked-measurement covariance assembled block by block from the
/// per-pair covariance sums. Block (0,0) is R_0 with zero first block
/// row/column; the strict lower triangle is filled and mirrored.
MeasurementCovariance meas_cov_theorem1(const TimeVaryingLinearSystem& sys, int w);

/// Covariance as R + M Q M^T with the strictly-lower block propagation matrix M.
MeasurementCovariance meas_cov_m_form(const TimeVaryingLinearSystem& sys, int w,
                                      Direction dir);

/// Direct (non-recursive) stochastic observability / constructability Gramians.
/// These deliberately form and solve against the full wp x wp covariance.
InfoMatrix obs_fim_direct(const TimeVaryingLinearSystem& sys, int w,
                          CovConstruction construction = CovConstruction::MForm);
InfoMatrix cons_fim_direct(const TimeVaryingLinearSystem& sys, int w,
                           CovConstruction construction = CovConstruction::MForm);

namespace detail {
/// m_form covariance with an explicit value for the inert trailing block of
/// the process-noise block diagonal (tests verify the fill does not matter).
MeasurementCovariance meas_cov_m_form_filled(const TimeVaryingLinearSystem& sys,
                                             int w, Direction dir,
                                             double trailing_fill);
}  // namespace detail

}  // namespace stogram

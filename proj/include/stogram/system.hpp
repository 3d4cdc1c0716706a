#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "stogram/errors.hpp"

namespace stogram {

using Matrix = Eigen::MatrixXd;

/// Relative tolerance for symmetry checks on covariance/information matrices.
inline constexpr double kSymmetryTol = 1e-10;
/// Condition-number cap beyond which a transition matrix is treated as singular.
inline constexpr double kConditionCap = 1e12;

/// Autonomous discrete-time LTI system with process and measurement noise:
///   x_{k+1} = Phi x_k + w_k,  y_k = C x_k + v_k,  w ~ N(0,Q), v ~ N(0,R).
struct TimeInvariantLinearSystem {
  int state_dim = 0;
  int meas_dim = 0;
  Matrix phi;  // n x n, invertible
  Matrix c;    // p x n
  Matrix q;    // n x n, SPD
  Matrix r;    // p x p, SPD
};

/// Autonomous discrete-time LTV system over a finite horizon k = 0..N:
///   x_{k+1} = Phi_{k+1,k} x_k + w_k,  y_k = C_k x_k + v_k.
/// phi and q are indexed k = 0..N-1, c and r are indexed k = 0..N.
struct TimeVaryingLinearSystem {
  int horizon = 0;  // N
  int state_dim = 0;
  int meas_dim = 0;
  std::vector<Matrix> phi;
  std::vector<Matrix> c;
  std::vector<Matrix> q;
  std::vector<Matrix> r;
};

struct ValidationIssue {
  std::string message;
  int index = -1;  // horizon index the issue refers to, -1 if global
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

/// (M + M^T)/2.
Matrix symmetrized(const Matrix& m);

/// Relative Frobenius asymmetry ||M - M^T||_F / ||M||_F (0 for the zero matrix).
double symmetry_error(const Matrix& m);

/// SPD test: symmetric to kSymmetryTol relative and Cholesky succeeds.
bool is_spd(const Matrix& m);

/// 2-norm condition number estimate via SVD.
double condition_number(const Matrix& m);

/// State transition matrix Phi_{ell,k}. Identity for ell == k, the ordered
/// product Phi_{ell,ell-1}...Phi_{k+1,k} for ell > k, and the inverse of
/// Phi_{k,ell} for ell < k (obtained by solving, never by forming an inverse).
Matrix state_transition(const TimeVaryingLinearSystem& sys, int ell, int k);

/// Checks all structural invariants: SPD Q_k/R_k, symmetry, Phi conditioning,
/// and dimension consistency. Returns a report rather than throwing.
ValidationReport validate(const TimeVaryingLinearSystem& sys);
ValidationReport validate(const TimeInvariantLinearSystem& sys);

/// Expands an LTI system to a horizon-N LTV system with constant sequences.
TimeVaryingLinearSystem lift_lti(const TimeInvariantLinearSystem& sys, int N);

/// Restriction of sys to the inclusive index window [first, last], re-indexed
/// from zero. phi/q keep indices first..last-1, c/r keep first..last.
TimeVaryingLinearSystem subhorizon(const TimeVaryingLinearSystem& sys, int first,
                                   int last);

}  // namespace stogram

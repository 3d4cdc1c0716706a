#include "stogram/recursive_fim.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <sstream>

namespace stogram {

namespace {

void check_window(const TimeVaryingLinearSystem& sys, int w) {
  if (w < 1 || w > sys.horizon + 1) {
    std::ostringstream os;
    os << "window " << w << " outside [1, " << sys.horizon + 1 << "]";
    throw RangeError(os.str());
  }
}

/// X^{-1} B via Cholesky of the symmetrized X; `what` names X in errors.
Matrix spd_solve(const Matrix& x, const Matrix& b, const char* what, int index) {
  Eigen::LLT<Matrix> llt(symmetrized(x));
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << what << " not positive definite at step " << index;
    throw FactorizationError(os.str(), index);
  }
  return llt.solve(b);
}

Matrix spd_inverse(const Matrix& x, const char* what, int index) {
  return symmetrized(
      spd_solve(x, Matrix::Identity(x.rows(), x.cols()), what, index));
}

Matrix measurement_info(const TimeVaryingLinearSystem& sys, int k) {
  const Matrix& c = sys.c[static_cast<size_t>(k)];
  return symmetrized(c.transpose() *
                     spd_solve(sys.r[static_cast<size_t>(k)], c, "R", k));
}

}  // namespace

RecursionTrace obs_recursion_no_noise(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  RecursionTrace trace;
  trace.method = "obs_no_noise";
  trace.steps.reserve(static_cast<size_t>(w));
  Matrix f = measurement_info(sys, 0);
  trace.steps.push_back({f, 1, 0, Direction::FromInitial});
  Matrix trans = Matrix::Identity(sys.state_dim, sys.state_dim);  // Phi_{k+1,0}
  for (int k = 0; k + 1 < w; ++k) {
    trans = sys.phi[static_cast<size_t>(k)] * trans;
    const Matrix h = sys.c[static_cast<size_t>(k) + 1] * trans;
    f = symmetrized(f + h.transpose() *
                            spd_solve(sys.r[static_cast<size_t>(k) + 1], h, "R", k + 1));
    trace.steps.push_back({f, k + 2, 0, Direction::FromInitial});
  }
  return trace;
}

RecursionTrace cons_recursion_no_noise(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  const int start = sys.horizon - w + 1;
  const TimeVaryingLinearSystem win = subhorizon(sys, start, sys.horizon);
  RecursionTrace trace;
  trace.method = "cons_no_noise";
  trace.steps.reserve(static_cast<size_t>(w));
  Matrix f = measurement_info(win, 0);
  trace.steps.push_back({f, 1, start, Direction::FromFinal});
  for (int k = 0; k + 1 < w; ++k) {
    // Phi^{-T} F Phi^{-1} through two solves against Phi^T.
    const Matrix& phi = win.phi[static_cast<size_t>(k)];
    Eigen::FullPivLU<Matrix> lu(phi.transpose());
    if (!lu.isInvertible()) {
      std::ostringstream os;
      os << "phi at step " << k << " numerically singular";
      throw SingularMatrixError(os.str());
    }
    const Matrix half = lu.solve(f);
    f = symmetrized(lu.solve(half.transpose()).transpose() +
                    measurement_info(win, k + 1));
    trace.steps.push_back({f, k + 2, start + k + 1, Direction::FromFinal});
  }
  return trace;
}

RecursionTrace cons_recursion(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  const int start = sys.horizon - w + 1;
  const TimeVaryingLinearSystem win = subhorizon(sys, start, sys.horizon);
  RecursionTrace trace;
  trace.method = "cons_recursive";
  trace.steps.reserve(static_cast<size_t>(w));
  Matrix f = measurement_info(win, 0);
  trace.steps.push_back({f, 1, start, Direction::FromFinal});
  for (int k = 0; k + 1 < w; ++k) {
    const Matrix& phi = win.phi[static_cast<size_t>(k)];
    const Matrix q_inv = spd_inverse(win.q[static_cast<size_t>(k)], "Q", k);
    const Matrix b = q_inv * phi;  // Q^{-1} Phi
    const Matrix inner = symmetrized(f + phi.transpose() * b);
    f = symmetrized(-b * spd_solve(inner, b.transpose(), "inner matrix", k) +
                    q_inv + measurement_info(win, k + 1));
    trace.steps.push_back({f, k + 2, start + k + 1, Direction::FromFinal});
  }
  return trace;
}

RecursionTrace obs_recursion_dual(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  const TimeVaryingLinearSystem win = subhorizon(sys, 0, w - 1);
  const int tail = win.horizon;  // w - 1
  RecursionTrace trace;
  trace.method = "obs_recursive_dual";
  trace.steps.reserve(static_cast<size_t>(w));
  Matrix f = measurement_info(win, tail);
  trace.steps.push_back({f, 1, tail, Direction::FromInitial});
  for (int k = 0; k + 1 < w; ++k) {
    const int m = tail - k - 1;
    const Matrix& phi = win.phi[static_cast<size_t>(m)];
    const Matrix q_inv = spd_inverse(win.q[static_cast<size_t>(m)], "Q", k);
    const Matrix b = q_inv * phi;  // Q^{-1} Phi
    const Matrix inner = symmetrized(f + q_inv);
    f = symmetrized(
        -b.transpose() * spd_solve(inner, b, "inner matrix", k) +
        phi.transpose() * b + measurement_info(win, m));
    trace.steps.push_back({f, k + 2, m, Direction::FromInitial});
  }
  return trace;
}

LtiObservabilityStepper::LtiObservabilityStepper(
    const TimeInvariantLinearSystem& sys) {
  q_inv_ = spd_inverse(sys.q, "Q", 0);
  phi_ = sys.phi;
  phi_t_qinv_ = sys.phi.transpose() * q_inv_;
  dyn_info_ = symmetrized(phi_t_qinv_ * sys.phi);
  meas_info_ = symmetrized(sys.c.transpose() * spd_solve(sys.r, sys.c, "R", 0));
}

Matrix LtiObservabilityStepper::step(const Matrix& f) const {
  const Matrix b = q_inv_ * phi_;
  const Matrix inner = symmetrized(f + q_inv_);
  return symmetrized(-b.transpose() * spd_solve(inner, b, "inner matrix", 0) +
                     dyn_info_ + meas_info_);
}

RecursionTrace obs_recursion_lti(const TimeInvariantLinearSystem& sys, int w) {
  if (w < 1) throw RangeError("window must be >= 1");
  LtiObservabilityStepper stepper(sys);
  RecursionTrace trace;
  trace.method = "obs_recursive_lti";
  trace.steps.reserve(static_cast<size_t>(w));
  Matrix f = stepper.initial();
  trace.steps.push_back({f, 1, 0, Direction::FromInitial});
  for (int k = 1; k < w; ++k) {
    f = stepper.step(f);
    trace.steps.push_back({f, k + 1, 0, Direction::FromInitial});
  }
  return trace;
}

}  // namespace stogram

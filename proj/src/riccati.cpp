#include "stogram/riccati.hpp"

#include <Eigen/Cholesky>

#include "stogram/recursive_fim.hpp"

namespace stogram {

namespace {

Matrix spd_inverse(const Matrix& m, const char* what) {
  Eigen::LLT<Matrix> llt(symmetrized(m));
  if (llt.info() != Eigen::Success)
    throw FactorizationError(std::string(what) + " not positive definite");
  return symmetrized(llt.solve(Matrix::Identity(m.rows(), m.cols())));
}

}  // namespace

Matrix riccati_rhs_recursion_form(const TimeInvariantLinearSystem& sys,
                                  const Matrix& f) {
  LtiObservabilityStepper stepper(sys);
  return stepper.step(f);
}

Matrix riccati_rhs_quadratic_form(const TimeInvariantLinearSystem& sys,
                                  const Matrix& f) {
  const Matrix q_inv = spd_inverse(sys.q, "Q");
  const Matrix r_inv = spd_inverse(sys.r, "R");
  const Matrix inner = symmetrized(f + q_inv);
  Eigen::LLT<Matrix> llt(inner);
  if (llt.info() != Eigen::Success)
    throw FactorizationError("F + Q^{-1} not positive definite");
  const Matrix pf = sys.phi.transpose() * f;  // Phi^T F
  return symmetrized(pf * sys.phi - pf * llt.solve(pf.transpose()) +
                     sys.c.transpose() * r_inv * sys.c);
}

double riccati_residual(const TimeInvariantLinearSystem& sys, const Matrix& f) {
  return (riccati_rhs_quadratic_form(sys, symmetrized(f)) - symmetrized(f)).norm();
}

DareSolution solve_dare_fixed_point(const TimeInvariantLinearSystem& sys,
                                    double tol, int max_iter) {
  if (tol <= 0.0) throw UnsupportedError("tolerance must be positive");
  LtiObservabilityStepper stepper(sys);
  DareSolution sol;
  Matrix f = stepper.initial();
  int iter = 1;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    const Matrix next = stepper.step(f);
    const double delta = (next - f).norm();
    f = next;
    if (delta <= tol * std::max(1.0, f.norm())) {
      converged = true;
      ++iter;
      break;
    }
  }
  sol.f_inf = {f, iter, 0, Direction::FromInitial};
  sol.iterations = iter;
  sol.converged = converged;
  sol.residual = riccati_residual(sys, f);
  return sol;
}

}  // namespace stogram

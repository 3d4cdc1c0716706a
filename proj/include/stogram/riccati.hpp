#pragma once

#include "stogram/info.hpp"

namespace stogram {

/// Steady-state LTI observability Gramian obtained as the recursion limit.
struct DareSolution {
  InfoMatrix f_inf;
  int iterations = 0;
  double residual = 0.0;  // Frobenius norm of the Riccati defect at f_inf
  bool converged = false;
};

/// Iterates the LTI observability recursion from C^T R^{-1} C until
/// ||F_{k+1} - F_k||_F <= tol * max(1, ||F_k||_F) or max_iter. Non-convergence
/// returns converged = false with the best iterate rather than throwing.
DareSolution solve_dare_fixed_point(const TimeInvariantLinearSystem& sys,
                                    double tol = 1e-10, int max_iter = 100000);

/// Riccati defect ||rhs(F) - F||_F using the Phi^T F Phi - ... form.
double riccati_residual(const TimeInvariantLinearSystem& sys, const Matrix& f);

/// Both displayed right-hand sides of the Riccati equation; they agree
/// algebraically and are compared in tests.
Matrix riccati_rhs_recursion_form(const TimeInvariantLinearSystem& sys,
                                  const Matrix& f);
Matrix riccati_rhs_quadratic_form(const TimeInvariantLinearSystem& sys,
                                  const Matrix& f);

}  // namespace stogram

#pragma once

#include <string>
#include <vector>

#include "stogram/info.hpp"

namespace stogram {

/// Per-step iterates of a recursive Gramian computation.
struct RecursionTrace {
  std::vector<InfoMatrix> steps;  // steps[k] holds the (k+1)-measurement iterate
  std::string method;
  const InfoMatrix& final() const { return steps.back(); }
};

/// Observability recursion without process noise:
///   F_1 = C_0^T R_0^{-1} C_0,
///   F_{k+2} = F_{k+1} + (C_{k+1} Phi_{k+1,0})^T R_{k+1}^{-1} C_{k+1} Phi_{k+1,0}.
RecursionTrace obs_recursion_no_noise(const TimeVaryingLinearSystem& sys, int w);

/// Constructability recursion without process noise over the trailing window
/// of length w. Iterate k is anchored at the state the window has reached:
///   F_1 = C^T R^{-1} C at the window start,
///   F_{k+2} = Phi^{-T} F_{k+1} Phi^{-1} + C^T R^{-1} C.
RecursionTrace cons_recursion_no_noise(const TimeVaryingLinearSystem& sys, int w);

/// Constructability recursion with process noise over the trailing window of
/// length w (window = whole horizon when w = N+1):
///   F_{k+2} = -Q^{-1} Phi (F_{k+1} + Phi^T Q^{-1} Phi)^{-1} Phi^T Q^{-1}
///             + Q^{-1} + C^T R^{-1} C,
/// with every iterate symmetrized.
RecursionTrace cons_recursion(const TimeVaryingLinearSystem& sys, int w);

/// Duality-derived observability recursion over the leading window of length w.
/// Runs backward from the window's last measurement toward x_0; the iterates
/// are the dual system's constructability iterates, and the final element
/// equals the direct observability FIM. Only n x n objects are formed.
RecursionTrace obs_recursion_dual(const TimeVaryingLinearSystem& sys, int w);

/// Single step of the LTI observability recursion, with factorizations of Q
/// and R done once at construction.
class LtiObservabilityStepper {
 public:
  explicit LtiObservabilityStepper(const TimeInvariantLinearSystem& sys);
  Matrix initial() const { return meas_info_; }
  Matrix step(const Matrix& f) const;

 private:
  Matrix q_inv_;        // Q^{-1}, symmetrized
  Matrix phi_;          // Phi
  Matrix phi_t_qinv_;   // Phi^T Q^{-1}
  Matrix dyn_info_;     // Phi^T Q^{-1} Phi
  Matrix meas_info_;    // C^T R^{-1} C
};

/// LTI observability recursion; w may exceed any horizon (used for the
/// Riccati fixed point).
RecursionTrace obs_recursion_lti(const TimeInvariantLinearSystem& sys, int w);

}  // namespace stogram

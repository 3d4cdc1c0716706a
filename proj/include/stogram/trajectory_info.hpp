#pragma once

#include <string>

#include "stogram/info.hpp"

namespace stogram {

/// FIM of the measurement window with respect to the stacked state trajectory
/// x_0..x_{w-1}; block-tridiagonal with n x n blocks.
struct TrajectoryFim {
  Matrix m;  // (w*n) x (w*n)
  int window = 0;
  int block_dim = 0;  // n
};

/// Dense-inversion cap: corner_check refuses windows with w*n above this.
inline constexpr int kTrajectoryDenseCap = 512;

TrajectoryFim assemble_trajectory_fim(const TimeVaryingLinearSystem& sys, int w);

struct CornerCheckReport {
  bool ok = false;
  double obs_corner_rel_err = 0.0;   // top-left block vs (obs FIM)^{-1}
  double cons_corner_rel_err = 0.0;  // bottom-right block vs (cons FIM)^{-1}
  std::string message;
};

/// Inverts the trajectory FIM densely and compares its corner blocks with the
/// inverses of the window observability and constructability Gramians.
CornerCheckReport corner_check(const TimeVaryingLinearSystem& sys, int w,
                               double rel_tol = 1e-7);

/// Information of the window's measurements about the intermediate state x_k:
/// obs FIM of measurements k..w-1 anchored at x_k, plus cons FIM of
/// measurements 0..k anchored at x_k, minus the doubly counted C_k^T R_k^{-1} C_k.
InfoMatrix intermediate_state_info(const TimeVaryingLinearSystem& sys, int w, int k);

}  // namespace stogram

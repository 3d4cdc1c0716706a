#pragma once

#include "stogram/system.hpp"

namespace stogram {

/// Index-reversed, inverted-dynamics system whose constructability Gramian
/// equals the original's observability Gramian (and vice versa) at w = N+1.
struct DualSystemMap {
  TimeVaryingLinearSystem dual;
  int window = 0;  // N + 1, fixed by the horizon
};

/// Dual of an LTV system over its full horizon:
///   Phi'_{N-k,N-k-1} = Phi_{k+1,k}^{-1},  C'_{N-k} = C_k,
///   Q'_{N-k-1} = Phi_{k+1,k}^{-1} Q_k Phi_{k+1,k}^{-T},  R'_{N-k} = R_k.
DualSystemMap dual_ltv(const TimeVaryingLinearSystem& sys);

/// LTI dual: Phi' = Phi^{-1}, C' = C, Q' = Phi^{-1} Q Phi^{-T}, R' = R.
TimeInvariantLinearSystem dual_lti(const TimeInvariantLinearSystem& sys);

}  // namespace stogram

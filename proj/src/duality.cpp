#include "stogram/duality.hpp"

#include <Eigen/LU>
#include <sstream>

namespace stogram {

namespace {

Eigen::FullPivLU<Matrix> factor_or_throw(const Matrix& phi, int k) {
  Eigen::FullPivLU<Matrix> lu(phi);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "phi_" << k << " numerically singular in dual construction";
    throw SingularMatrixError(os.str());
  }
  return lu;
}

}  // namespace

DualSystemMap dual_ltv(const TimeVaryingLinearSystem& sys) {
  const int N = sys.horizon;
  TimeVaryingLinearSystem dual;
  dual.horizon = N;
  dual.state_dim = sys.state_dim;
  dual.meas_dim = sys.meas_dim;
  dual.phi.resize(static_cast<size_t>(N));
  dual.q.resize(static_cast<size_t>(N));
  dual.c.resize(static_cast<size_t>(N) + 1);
  dual.r.resize(static_cast<size_t>(N) + 1);

  const Matrix eye = Matrix::Identity(sys.state_dim, sys.state_dim);
  for (int k = 0; k < N; ++k) {
    auto lu = factor_or_throw(sys.phi[static_cast<size_t>(k)], k);
    // Phi'_{N-k,N-k-1} = Phi_{k+1,k}^{-1}; Q'_{N-k-1} = Phi^{-1} Q_k Phi^{-T},
    // computed as nested solves and symmetrized to preserve definiteness.
    const Matrix phi_inv = lu.solve(eye);
    dual.phi[static_cast<size_t>(N - k - 1)] = phi_inv;
    const Matrix half = lu.solve(sys.q[static_cast<size_t>(k)].transpose());
    dual.q[static_cast<size_t>(N - k - 1)] = symmetrized(lu.solve(half.transpose()));
  }
  for (int k = 0; k <= N; ++k) {
    dual.c[static_cast<size_t>(N - k)] = sys.c[static_cast<size_t>(k)];
    dual.r[static_cast<size_t>(N - k)] = sys.r[static_cast<size_t>(k)];
  }
  return {std::move(dual), N + 1};
}

TimeInvariantLinearSystem dual_lti(const TimeInvariantLinearSystem& sys) {
  auto lu = factor_or_throw(sys.phi, 0);
  const Matrix eye = Matrix::Identity(sys.state_dim, sys.state_dim);
  TimeInvariantLinearSystem dual;
  dual.state_dim = sys.state_dim;
  dual.meas_dim = sys.meas_dim;
  dual.phi = lu.solve(eye);
  dual.c = sys.c;
  const Matrix half = lu.solve(sys.q.transpose());
  dual.q = symmetrized(lu.solve(half.transpose()));
  dual.r = sys.r;
  return dual;
}

}  // namespace stogram

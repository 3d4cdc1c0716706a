#include "stogram/deterministic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <limits>
#include <sstream>

namespace stogram {

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool loewner_geq(const Matrix& a, const Matrix& b, double slack) {
  const double scale = std::max(1.0, a.norm());
  return min_eigenvalue(a - b) >= -slack * scale;
}

namespace {

void check_window(const TimeVaryingLinearSystem& sys, int w) {
  if (w < 1 || w > sys.horizon + 1) {
    std::ostringstream os;
    os << "window " << w << " outside [1, " << sys.horizon + 1 << "]";
    throw RangeError(os.str());
  }
}

}  // namespace

StackedOutputMatrix observability_matrix(const TimeVaryingLinearSystem& sys, int w) {
  check_window(sys, w);
  const int n = sys.state_dim;
  const int p = sys.meas_dim;
  StackedOutputMatrix out{Matrix(w * p, n), Direction::FromInitial, w};
  Matrix trans = Matrix::Identity(n, n);  // Phi_{tau,0}
  for (int tau = 0; tau < w; ++tau) {
    if (tau > 0) trans = sys.phi[static_cast<size_t>(tau - 1)] * trans;
    out.m.middleRows(tau * p, p) = sys.c[static_cast<size_t>(tau)] * trans;
  }
  return out;
}

StackedOutputMatrix constructability_matrix(const TimeVaryingLinearSystem& sys,
                                            int w) {
  check_window(sys, w);
  const int n = sys.state_dim;
  const int p = sys.meas_dim;
  const int N = sys.horizon;
  StackedOutputMatrix out{Matrix(w * p, n), Direction::FromFinal, w};
  for (int tau = 0; tau < w; ++tau) {
    // C_{N-tau} Phi_{N-tau,N}; the backward transition is solved, not inverted.
    out.m.middleRows(tau * p, p) =
        sys.c[static_cast<size_t>(N - tau)] * state_transition(sys, N - tau, N);
  }
  return out;
}

InfoMatrix deterministic_gramian(const StackedOutputMatrix& stacked) {
  InfoMatrix out;
  out.m = stacked.m.transpose() * stacked.m;
  out.raw_sym_err = symmetry_error(out.m);
  out.m = symmetrized(out.m);
  out.window = stacked.window;
  out.dir = stacked.dir;
  return out;
}

UnobservabilityMeasures unobservability_measures(const InfoMatrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(g.m),
                                           Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
  const double inf = std::numeric_limits<double>::infinity();
  if (lmin <= 0.0) return {inf, inf};
  return {lmax / lmin, 1.0 / lmin};
}

int numerical_rank(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = 1e-10 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++rank;
  return rank;
}

}  // namespace stogram

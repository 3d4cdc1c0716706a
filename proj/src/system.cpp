#include "stogram/system.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <limits>
#include <sstream>

namespace stogram {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double symmetry_error(const Matrix& m) {
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  return (m - m.transpose()).norm() / norm;
}

bool is_spd(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (symmetry_error(m) > kSymmetryTol) return false;
  Eigen::LLT<Matrix> llt(symmetrized(m));
  return llt.info() == Eigen::Success;
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

namespace {

void check_index(const TimeVaryingLinearSystem& sys, int idx, const char* what) {
  if (idx < 0 || idx > sys.horizon) {
    std::ostringstream os;
    os << what << " index " << idx << " outside horizon [0, " << sys.horizon << "]";
    throw RangeError(os.str());
  }
}

/// Ordered product Phi_{ell,ell-1}...Phi_{k+1,k}, ell > k.
Matrix forward_product(const TimeVaryingLinearSystem& sys, int ell, int k) {
  Matrix acc = sys.phi[static_cast<size_t>(k)];
  for (int j = k + 1; j < ell; ++j) acc = sys.phi[static_cast<size_t>(j)] * acc;
  return acc;
}

}  // namespace

Matrix state_transition(const TimeVaryingLinearSystem& sys, int ell, int k) {
  check_index(sys, ell, "transition");
  check_index(sys, k, "transition");
  const int n = sys.state_dim;
  if (ell == k) return Matrix::Identity(n, n);
  if (ell > k) return forward_product(sys, ell, k);
  // Phi_{ell,k} = Phi_{k,ell}^{-1}, obtained by solving against the identity.
  Matrix fwd = forward_product(sys, k, ell);
  Eigen::FullPivLU<Matrix> lu(fwd);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "transition product Phi_{" << k << "," << ell << "} numerically singular";
    throw SingularMatrixError(os.str());
  }
  return lu.solve(Matrix::Identity(n, n));
}

namespace {

void check_spd_sequence(const std::vector<Matrix>& seq, int dim, const char* name,
                        ValidationReport& report) {
  for (size_t k = 0; k < seq.size(); ++k) {
    const Matrix& m = seq[k];
    std::ostringstream os;
    if (m.rows() != dim || m.cols() != dim) {
      os << name << "_" << k << " has shape " << m.rows() << "x" << m.cols()
         << ", expected " << dim << "x" << dim;
      report.issues.push_back({os.str(), static_cast<int>(k)});
      continue;
    }
    if (symmetry_error(m) > kSymmetryTol) {
      os << name << "_" << k << " asymmetric beyond tolerance";
      report.issues.push_back({os.str(), static_cast<int>(k)});
      continue;
    }
    Eigen::LLT<Matrix> llt(symmetrized(m));
    if (llt.info() != Eigen::Success) {
      os << name << "_" << k << " not positive definite";
      report.issues.push_back({os.str(), static_cast<int>(k)});
    }
  }
}

}  // namespace

ValidationReport validate(const TimeVaryingLinearSystem& sys) {
  ValidationReport report;
  const int n = sys.state_dim;
  const int p = sys.meas_dim;
  const int N = sys.horizon;
  if (N < 0 || n < 1 || p < 1) {
    report.issues.push_back({"dimensions must satisfy N >= 0, n >= 1, p >= 1", -1});
    return report;
  }
  if (static_cast<int>(sys.phi.size()) != N || static_cast<int>(sys.q.size()) != N ||
      static_cast<int>(sys.c.size()) != N + 1 ||
      static_cast<int>(sys.r.size()) != N + 1) {
    report.issues.push_back({"sequence lengths inconsistent with horizon", -1});
    return report;
  }
  for (size_t k = 0; k < sys.phi.size(); ++k) {
    const Matrix& f = sys.phi[k];
    std::ostringstream os;
    if (f.rows() != n || f.cols() != n) {
      os << "phi_" << k << " has wrong shape";
      report.issues.push_back({os.str(), static_cast<int>(k)});
      continue;
    }
    if (condition_number(f) > kConditionCap) {
      os << "phi_" << k << " condition number exceeds " << kConditionCap;
      report.issues.push_back({os.str(), static_cast<int>(k)});
    }
  }
  for (size_t k = 0; k < sys.c.size(); ++k) {
    if (sys.c[k].rows() != p || sys.c[k].cols() != n) {
      std::ostringstream os;
      os << "c_" << k << " has wrong shape";
      report.issues.push_back({os.str(), static_cast<int>(k)});
    }
  }
  check_spd_sequence(sys.q, n, "q", report);
  check_spd_sequence(sys.r, p, "r", report);
  return report;
}

ValidationReport validate(const TimeInvariantLinearSystem& sys) {
  return validate(lift_lti(sys, 1));
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "ok";
  std::ostringstream os;
  for (const auto& issue : issues) os << issue.message << "\n";
  return os.str();
}

TimeVaryingLinearSystem lift_lti(const TimeInvariantLinearSystem& sys, int N) {
  if (N < 0) throw RangeError("lift_lti: horizon must be >= 0");
  TimeVaryingLinearSystem out;
  out.horizon = N;
  out.state_dim = sys.state_dim;
  out.meas_dim = sys.meas_dim;
  out.phi.assign(static_cast<size_t>(N), sys.phi);
  out.q.assign(static_cast<size_t>(N), sys.q);
  out.c.assign(static_cast<size_t>(N) + 1, sys.c);
  out.r.assign(static_cast<size_t>(N) + 1, sys.r);
  return out;
}

TimeVaryingLinearSystem subhorizon(const TimeVaryingLinearSystem& sys, int first,
                                   int last) {
  if (first < 0 || last > sys.horizon || first > last)
    throw RangeError("subhorizon: window outside horizon");
  TimeVaryingLinearSystem out;
  out.horizon = last - first;
  out.state_dim = sys.state_dim;
  out.meas_dim = sys.meas_dim;
  out.phi.assign(sys.phi.begin() + first, sys.phi.begin() + last);
  out.q.assign(sys.q.begin() + first, sys.q.begin() + last);
  out.c.assign(sys.c.begin() + first, sys.c.begin() + last + 1);
  out.r.assign(sys.r.begin() + first, sys.r.begin() + last + 1);
  return out;
}

}  // namespace stogram

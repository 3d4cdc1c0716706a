#include "stogram/trajectory_info.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <sstream>

#include "stogram/direct_fim.hpp"
#include "stogram/recursive_fim.hpp"

namespace stogram {

namespace {

Matrix spd_solve(const Matrix& x, const Matrix& b, const char* what, int index) {
  Eigen::LLT<Matrix> llt(symmetrized(x));
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << what << "_" << index << " not positive definite";
    throw FactorizationError(os.str(), index);
  }
  return llt.solve(b);
}

}  // namespace

TrajectoryFim assemble_trajectory_fim(const TimeVaryingLinearSystem& sys, int w) {
  if (w < 1 || w > sys.horizon + 1) {
    std::ostringstream os;
    os << "trajectory window " << w << " outside [1, " << sys.horizon + 1 << "]";
    throw RangeError(os.str());
  }
  const int n = sys.state_dim;
  TrajectoryFim out{Matrix::Zero(w * n, w * n), w, n};
  const Matrix eye = Matrix::Identity(n, n);
  for (int k = 0; k < w; ++k) {
    const Matrix& c = sys.c[static_cast<size_t>(k)];
    Matrix diag = c.transpose() * spd_solve(sys.r[static_cast<size_t>(k)], c, "r", k);
    if (k > 0)
      diag += spd_solve(sys.q[static_cast<size_t>(k) - 1], eye, "q", k - 1);
    if (k < w - 1) {
      const Matrix& phi = sys.phi[static_cast<size_t>(k)];
      const Matrix qinv_phi = spd_solve(sys.q[static_cast<size_t>(k)], phi, "q", k);
      diag += phi.transpose() * qinv_phi;
      const Matrix off = -phi.transpose() *
                         spd_solve(sys.q[static_cast<size_t>(k)], eye, "q", k);
      out.m.block(k * n, (k + 1) * n, n, n) = off;
      out.m.block((k + 1) * n, k * n, n, n) = off.transpose();
    }
    out.m.block(k * n, k * n, n, n) = symmetrized(diag);
  }
  out.m = symmetrized(out.m);
  return out;
}

CornerCheckReport corner_check(const TimeVaryingLinearSystem& sys, int w,
                               double rel_tol) {
  CornerCheckReport report;
  if (w * sys.state_dim > kTrajectoryDenseCap) {
    report.message = "window exceeds dense-inversion cap";
    return report;
  }
  const TrajectoryFim traj = assemble_trajectory_fim(sys, w);
  Eigen::FullPivLU<Matrix> lu(traj.m);
  if (!lu.isInvertible()) {
    report.message = "trajectory FIM numerically singular";
    return report;
  }
  const Matrix inv = lu.solve(Matrix::Identity(traj.m.rows(), traj.m.cols()));
  const int n = sys.state_dim;
  const TimeVaryingLinearSystem win = subhorizon(sys, 0, w - 1);

  const Matrix obs = obs_fim_direct(win, w).m;
  const Matrix cons = cons_fim_direct(win, w).m;
  const Matrix obs_inv =
      Eigen::FullPivLU<Matrix>(obs).solve(Matrix::Identity(n, n));
  const Matrix cons_inv =
      Eigen::FullPivLU<Matrix>(cons).solve(Matrix::Identity(n, n));

  report.obs_corner_rel_err =
      (inv.topLeftCorner(n, n) - obs_inv).norm() / obs_inv.norm();
  report.cons_corner_rel_err =
      (inv.bottomRightCorner(n, n) - cons_inv).norm() / cons_inv.norm();
  report.ok = report.obs_corner_rel_err <= rel_tol &&
              report.cons_corner_rel_err <= rel_tol;
  if (!report.ok) report.message = "corner blocks disagree with window Gramians";
  return report;
}

InfoMatrix intermediate_state_info(const TimeVaryingLinearSystem& sys, int w,
                                   int k) {
  if (w < 1 || w > sys.horizon + 1) throw RangeError("window outside horizon");
  if (k < 0 || k > w - 1) throw RangeError("state index outside window");

  // Future + present measurements, anchored at x_k.
  const TimeVaryingLinearSystem ahead = subhorizon(sys, k, w - 1);
  const Matrix obs = obs_recursion_dual(ahead, w - k).final().m;
  // Past + present measurements, anchored at x_k.
  const TimeVaryingLinearSystem behind = subhorizon(sys, 0, k);
  const Matrix cons = cons_recursion(behind, k + 1).final().m;

  const Matrix& c = sys.c[static_cast<size_t>(k)];
  const Matrix present =
      c.transpose() * spd_solve(sys.r[static_cast<size_t>(k)], c, "r", k);

  InfoMatrix out;
  out.m = symmetrized(obs + cons - present);
  out.window = w;
  out.anchor = k;
  out.dir = Direction::FromInitial;
  return out;
}

}  // namespace stogram

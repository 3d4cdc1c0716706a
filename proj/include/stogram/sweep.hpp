#pragma once

#include <string>
#include <vector>

#include "stogram/model_io.hpp"
#include "stogram/system.hpp"

namespace stogram {

inline const char* kMethodDirectThm1 = "direct_thm1";
inline const char* kMethodDirectMForm = "direct_mform";
inline const char* kMethodRecursiveDual = "recursive_dual";
inline const char* kMethodNoNoise = "no_noise";

struct SweepOptions {
  int w_max = 1;
  std::vector<std::string> methods;  // defaults to the three process-noise methods
  int threads = 1;
};

/// Runs every (method, w) pair for w = 1..w_max. Per-item failures become
/// sentinel rows carrying an error message instead of aborting the sweep.
/// Output is ordered by (method, w) regardless of thread count.
std::vector<GramianSweepRecord> run_sweep(const TimeVaryingLinearSystem& sys,
                                          const SweepOptions& opts);

/// Computes one observability-Gramian record for a named method.
GramianSweepRecord gramian_record(const TimeVaryingLinearSystem& sys,
                                  const std::string& method, int w);

struct SweepSummaryRow {
  std::string method;
  double max_sym_err = 0.0;
  int first_monotonicity_break_w = -1;  // -1 when diagonals never decrease
};

/// Per-method max symmetry violation and the first w at which any diagonal
/// FIM entry decreases.
std::vector<SweepSummaryRow> summarize_sweep(
    const std::vector<GramianSweepRecord>& records, int state_dim);

void write_summary_csv(std::ostream& out, const std::vector<SweepSummaryRow>& rows);

// Embedded example systems.
TimeVaryingLinearSystem example_sweep_system();        // 2-state LTV, N = 30
TimeInvariantLinearSystem example_total_info_system(); // 2-state LTI

/// Stability-comparison experiment: writes sweep.csv (three methods, w = 1..31)
/// and summary.csv into out_dir.
void reproduce_fig2(const std::string& out_dir, int threads = 1);

/// Total-information experiment: writes per-k total/observability/
/// constructability first-diagonal entries plus a plateau summary into out_dir.
void reproduce_fig1(const std::string& out_dir, int horizon = 60);

}  // namespace stogram

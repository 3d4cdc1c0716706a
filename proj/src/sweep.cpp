#include "stogram/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "stogram/direct_fim.hpp"
#include "stogram/recursive_fim.hpp"
#include "stogram/trajectory_info.hpp"

namespace stogram {

namespace {

std::vector<double> flatten(const Matrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

GramianSweepRecord to_record(const std::string& method, const InfoMatrix& info,
                             long long wall_ns) {
  GramianSweepRecord rec;
  rec.method = method;
  rec.w = info.window;
  rec.fim = flatten(info.m);
  rec.sym_err = info.raw_sym_err;
  rec.min_eig = min_eigenvalue(info.m);
  rec.wall_ns = wall_ns;
  return rec;
}

}  // namespace

GramianSweepRecord gramian_record(const TimeVaryingLinearSystem& sys,
                                  const std::string& method, int w) {
  if (method == kMethodDirectThm1) {
    const auto info = obs_fim_direct(sys, w, CovConstruction::BlockSum);
    return to_record(method, info, info.wall_ns);
  }
  if (method == kMethodDirectMForm) {
    const auto info = obs_fim_direct(sys, w, CovConstruction::MForm);
    return to_record(method, info, info.wall_ns);
  }
  if (method == kMethodRecursiveDual) {
    const auto start = std::chrono::steady_clock::now();
    const auto trace = obs_recursion_dual(sys, w);
    const auto stop = std::chrono::steady_clock::now();
    return to_record(
        method, trace.final(),
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  }
  if (method == kMethodNoNoise) {
    const auto info = obs_fim_no_process_noise(sys, w);
    return to_record(method, info, info.wall_ns);
  }
  throw UnsupportedError("unknown method '" + method + "'");
}

std::vector<GramianSweepRecord> run_sweep(const TimeVaryingLinearSystem& sys,
                                          const SweepOptions& opts) {
  std::vector<std::string> methods = opts.methods;
  if (methods.empty())
    methods = {kMethodDirectThm1, kMethodDirectMForm, kMethodRecursiveDual};
  if (opts.w_max < 1 || opts.w_max > sys.horizon + 1)
    throw RangeError("sweep w_max outside [1, N+1]");

  struct Task {
    const std::string* method;
    int w;
  };
  std::vector<Task> tasks;
  for (const auto& method : methods)
    for (int w = 1; w <= opts.w_max; ++w) tasks.push_back({&method, w});

  std::vector<GramianSweepRecord> records(tasks.size());
  auto worker = [&](std::atomic<size_t>& next) {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        records[i] = gramian_record(sys, *tasks[i].method, tasks[i].w);
      } catch (const std::exception& e) {
        records[i].method = *tasks[i].method;
        records[i].w = tasks[i].w;
        records[i].error = e.what();
      }
    }
  };

  std::atomic<size_t> next{0};
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back([&] { worker(next); });
    for (auto& th : pool) th.join();
  }
  return records;  // task order is already (method, w)
}

std::vector<SweepSummaryRow> summarize_sweep(
    const std::vector<GramianSweepRecord>& records, int state_dim) {
  std::vector<SweepSummaryRow> rows;
  for (const auto& rec : records) {
    SweepSummaryRow* row = nullptr;
    for (auto& existing : rows)
      if (existing.method == rec.method) row = &existing;
    if (!row) {
      rows.push_back({rec.method, 0.0, -1});
      row = &rows.back();
    }
    if (!rec.error.empty()) continue;
    row->max_sym_err = std::max(row->max_sym_err, rec.sym_err);
  }
  // First w at which any diagonal entry decreases relative to w-1.
  for (auto& row : rows) {
    const GramianSweepRecord* prev = nullptr;
    for (const auto& rec : records) {
      if (rec.method != row.method || !rec.error.empty()) continue;
      if (prev && prev->w + 1 == rec.w) {
        for (int i = 0; i < state_dim; ++i) {
          const double before = prev->fim[static_cast<size_t>(i * state_dim + i)];
          const double after = rec.fim[static_cast<size_t>(i * state_dim + i)];
          if (after < before - 1e-12 * std::abs(before)) {
            if (row.first_monotonicity_break_w < 0)
              row.first_monotonicity_break_w = rec.w;
            break;
          }
        }
      }
      prev = &rec;
    }
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SweepSummaryRow>& rows) {
  out << "method,max_sym_err,first_monotonicity_break_w\n";
  out.precision(17);
  for (const auto& row : rows) {
    out << row.method << "," << row.max_sym_err << ",";
    if (row.first_monotonicity_break_w >= 0) out << row.first_monotonicity_break_w;
    out << "\n";
  }
}

TimeVaryingLinearSystem example_sweep_system() {
  const int N = 30;
  TimeVaryingLinearSystem sys;
  sys.horizon = N;
  sys.state_dim = 2;
  sys.meas_dim = 1;
  Matrix q(2, 2), c(1, 2), r(1, 1);
  q << 3.6e-2, 1.2e-2, 1.2e-2, 6e-2;
  c << 1, 0;
  r << 0.1;
  for (int k = 0; k < N; ++k) {
    Matrix phi(2, 2);
    phi << 2, -1 + std::sin(k * M_PI / 18.0), std::cos(k * M_PI / 18.0), 1;
    sys.phi.push_back(phi);
    sys.q.push_back(q);
  }
  for (int k = 0; k <= N; ++k) {
    sys.c.push_back(c);
    sys.r.push_back(r);
  }
  return sys;
}

TimeInvariantLinearSystem example_total_info_system() {
  TimeInvariantLinearSystem sys;
  sys.state_dim = 2;
  sys.meas_dim = 1;
  sys.phi = Matrix(2, 2);
  sys.phi << 1, -1, 0, 1;
  sys.c = Matrix(1, 2);
  sys.c << 1, 0;
  sys.q = Matrix(2, 2);
  sys.q << 1e-11, -5e-18, -5e-18, 1e-17;
  sys.r = Matrix(1, 1);
  sys.r << 2.89e-10;
  return sys;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path.string() + "'");
  return out;
}

}  // namespace

void reproduce_fig2(const std::string& out_dir, int threads) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const TimeVaryingLinearSystem sys = example_sweep_system();
  SweepOptions opts;
  opts.w_max = sys.horizon + 1;  // 31
  opts.threads = threads;
  const auto records = run_sweep(sys, opts);

  auto sweep_out = open_out(fs::path(out_dir) / "sweep.csv");
  write_sweep_csv(sweep_out, records, sys.state_dim);
  auto summary_out = open_out(fs::path(out_dir) / "summary.csv");
  write_summary_csv(summary_out, summarize_sweep(records, sys.state_dim));
}

void reproduce_fig1(const std::string& out_dir, int horizon) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const TimeVaryingLinearSystem sys = lift_lti(example_total_info_system(), horizon);
  const int w = horizon + 1;

  auto out = open_out(fs::path(out_dir) / "total_info.csv");
  out << "k,total_f11,obs_f11,cons_f11\n";
  out.precision(17);
  std::vector<double> totals;
  for (int k = 0; k <= horizon; ++k) {
    const double total = intermediate_state_info(sys, w, k).m(0, 0);
    const double obs =
        obs_recursion_dual(subhorizon(sys, k, horizon), w - k).final().m(0, 0);
    const double cons =
        cons_recursion(subhorizon(sys, 0, k), k + 1).final().m(0, 0);
    out << k << "," << total << "," << obs << "," << cons << "\n";
    totals.push_back(total);
  }

  // Plateau: relative change < 1e-3 over 5 consecutive interior steps.
  int plateau_start = -1;
  for (int k = 1; k + 5 < horizon; ++k) {
    bool flat = true;
    for (int j = k; j < k + 5; ++j) {
      const double a = totals[static_cast<size_t>(j)];
      const double b = totals[static_cast<size_t>(j + 1)];
      if (std::abs(b - a) >= 1e-3 * std::abs(a)) {
        flat = false;
        break;
      }
    }
    if (flat) {
      plateau_start = k;
      break;
    }
  }
  auto summary = open_out(fs::path(out_dir) / "total_info_summary.csv");
  summary << "plateau_found,plateau_start_k\n";
  summary << (plateau_start >= 0 ? 1 : 0) << ",";
  if (plateau_start >= 0) summary << plateau_start;
  summary << "\n";
}

}  // namespace stogram

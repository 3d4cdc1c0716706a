// Command-line front end for the stogram shared library. Talks to the core
// exclusively through the C API in stogram/stogram.h.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stogram/stogram.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(sg_status status) {
  switch (status) {
    case SG_OK:
      return kExitOk;
    case SG_ERR_VALIDATION:
      return kExitValidation;
    case SG_ERR_NUMERIC:
    case SG_ERR_NO_CONVERGENCE:
      return kExitNumerical;
    default:
      return kExitUsage;
  }
}

int report_failure(sg_status status) {
  std::fprintf(stderr, "error: %s\n", sg_last_error());
  return exit_code_for(status);
}

using SystemPtr = std::unique_ptr<sg_system, decltype(&sg_system_free)>;

SystemPtr load_or_null(const std::string& path, sg_status& status) {
  sg_system* raw = nullptr;
  status = sg_system_load_file(path.c_str(), &raw);
  return SystemPtr(raw, &sg_system_free);
}

void print_csv_header(int n) {
  std::printf("method,w");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) std::printf(",f%d%d", i, j);
  std::printf(",sym_err,min_eig,wall_ns,error\n");
}

void print_csv_row(const std::string& method, int w, const double* fim, int n,
                   double sym_err, double min_eig, long long wall_ns) {
  std::printf("%s,%d", method.c_str(), w);
  for (int i = 0; i < n * n; ++i) std::printf(",%.17g", fim[i]);
  std::printf(",%.17g,%.17g,%lld,\n", sym_err, min_eig, wall_ns);
}

struct GramianArgs {
  std::string file;
  std::string kind = "obs";
  std::string method;
  int w = 1;
  bool trace = false;
};

int run_gramian(const GramianArgs& args) {
  sg_status status;
  SystemPtr sys = load_or_null(args.file, status);
  if (!sys) return report_failure(status);

  sg_gramian_kind kind;
  if (args.kind == "obs") {
    kind = SG_KIND_OBS;
  } else if (args.kind == "cons") {
    kind = SG_KIND_CONS;
  } else {
    std::fprintf(stderr, "error: --kind must be obs or cons\n");
    return kExitUsage;
  }
  sg_method method;
  if (args.method == "direct_thm1") {
    method = SG_METHOD_DIRECT_THM1;
  } else if (args.method == "direct_mform") {
    method = SG_METHOD_DIRECT_MFORM;
  } else if (args.method == "recursive_dual") {
    method = SG_METHOD_RECURSIVE_DUAL;
  } else if (args.method == "no_noise") {
    method = SG_METHOD_NO_NOISE;
  } else {
    std::fprintf(stderr, "error: unknown method '%s'\n", args.method.c_str());
    return kExitUsage;
  }

  const int n = sg_system_state_dim(sys.get());
  std::vector<double> fim(static_cast<size_t>(n) * n);
  sg_gramian_stats stats{};
  status = sg_gramian(sys.get(), kind, method, args.w, fim.data(), &stats);
  if (status != SG_OK) return report_failure(status);

  print_csv_header(n);
  if (args.trace) {
    std::vector<double> steps(static_cast<size_t>(args.w) * n * n);
    std::vector<double> min_eigs(static_cast<size_t>(args.w));
    status = sg_gramian_trace(sys.get(), kind, method, args.w, steps.data(),
                              min_eigs.data());
    if (status != SG_OK) return report_failure(status);
    for (int step = 0; step < args.w; ++step)
      print_csv_row(args.method + "_trace", step + 1,
                    steps.data() + static_cast<size_t>(step) * n * n, n, 0.0,
                    min_eigs[static_cast<size_t>(step)], 0);
  }
  print_csv_row(args.method, args.w, fim.data(), n, stats.sym_err, stats.min_eig,
                stats.wall_ns);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic observability/constructability Gramians for "
               "discrete-time linear systems"};
  app.require_subcommand(1);
  int threads = 1;
  double tol = 1e-10;
  app.add_option("--threads", threads, "Worker threads for sweeps");
  app.add_option("--tol", tol, "Convergence tolerance for iterative solvers");

  auto* cmd_validate = app.add_subcommand("validate", "Check system invariants");
  std::string validate_file;
  cmd_validate->add_option("file", validate_file, "System JSON file")->required();

  auto* cmd_gramian =
      app.add_subcommand("gramian", "Compute one Gramian, CSV row to stdout");
  GramianArgs gramian_args;
  cmd_gramian->add_option("file", gramian_args.file, "System JSON file")->required();
  cmd_gramian->add_option("--kind", gramian_args.kind, "obs or cons");
  cmd_gramian
      ->add_option("--method", gramian_args.method,
                   "direct_thm1|direct_mform|recursive_dual|no_noise")
      ->required();
  cmd_gramian->add_option("--w", gramian_args.w, "Window size")->required();
  cmd_gramian->add_flag("--trace", gramian_args.trace,
                        "Also emit per-step recursion iterates");

  auto* cmd_sweep =
      app.add_subcommand("sweep", "Window sweep over methods, CSV to stdout");
  std::string sweep_file;
  int w_max = 1;
  std::string methods;
  cmd_sweep->add_option("file", sweep_file, "System JSON file")->required();
  cmd_sweep->add_option("--w-max", w_max, "Largest window size")->required();
  cmd_sweep->add_option("--methods", methods,
                        "Comma-separated method list (default: all three)");

  auto* cmd_dare =
      app.add_subcommand("dare", "Steady-state LTI observability Gramian");
  std::string dare_file;
  int max_iter = 100000;
  cmd_dare->add_option("file", dare_file, "System JSON file")->required();
  cmd_dare->add_option("--max-iter", max_iter, "Iteration cap");

  auto* cmd_fig1 = app.add_subcommand(
      "reproduce-fig1", "Total-information-per-state experiment (CSV files)");
  std::string fig1_out = ".";
  int fig1_horizon = 60;
  cmd_fig1->add_option("--out", fig1_out, "Output directory");
  cmd_fig1->add_option("--horizon", fig1_horizon, "Trajectory horizon");

  auto* cmd_fig2 = app.add_subcommand(
      "reproduce-fig2", "Method stability comparison sweep (CSV files)");
  std::string fig2_out = ".";
  cmd_fig2->add_option("--out", fig2_out, "Output directory");

  // Let the global flags (--threads, --tol) appear after the subcommand too.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (cmd_validate->parsed()) {
    sg_status status;
    SystemPtr sys = load_or_null(validate_file, status);
    if (!sys) return report_failure(status);
    int ok = 0;
    char* report = nullptr;
    status = sg_system_validate(sys.get(), &ok, &report);
    if (status != SG_OK) return report_failure(status);
    std::printf("%s\n", report);
    sg_string_free(report);
    return ok ? kExitOk : kExitValidation;
  }

  if (cmd_gramian->parsed()) return run_gramian(gramian_args);

  if (cmd_sweep->parsed()) {
    sg_status status;
    SystemPtr sys = load_or_null(sweep_file, status);
    if (!sys) return report_failure(status);
    char* csv = nullptr;
    status = sg_sweep_csv(sys.get(), w_max, methods.empty() ? nullptr : methods.c_str(),
                          threads, &csv);
    if (status != SG_OK) return report_failure(status);
    std::fputs(csv, stdout);
    sg_string_free(csv);
    return kExitOk;
  }

  if (cmd_dare->parsed()) {
    sg_status status;
    SystemPtr sys = load_or_null(dare_file, status);
    if (!sys) return report_failure(status);
    if (!sg_system_is_lti(sys.get())) {
      std::fprintf(stderr, "error: dare requires an LTI system file\n");
      return kExitUsage;
    }
    const int n = sg_system_state_dim(sys.get());
    std::vector<double> f(static_cast<size_t>(n) * n);
    int iterations = 0;
    double residual = 0.0;
    int converged = 0;
    status = sg_dare(sys.get(), tol, max_iter, f.data(), &iterations, &residual,
                     &converged);
    if (status != SG_OK && status != SG_ERR_NO_CONVERGENCE)
      return report_failure(status);
    std::printf("converged,%d\niterations,%d\nresidual,%.17g\n", converged,
                iterations, residual);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        std::printf(j ? ",%.17g" : "%.17g", f[static_cast<size_t>(i) * n + j]);
      std::printf("\n");
    }
    return converged ? kExitOk : kExitNumerical;
  }

  if (cmd_fig1->parsed()) {
    const sg_status status = sg_reproduce_fig1(fig1_out.c_str(), fig1_horizon);
    return status == SG_OK ? kExitOk : report_failure(status);
  }

  if (cmd_fig2->parsed()) {
    const sg_status status = sg_reproduce_fig2(fig2_out.c_str(), threads);
    return status == SG_OK ? kExitOk : report_failure(status);
  }

  return kExitUsage;
}

#include "stogram/stogram.h"

#include <cstring>
#include <sstream>
#include <string>

#include "stogram/direct_fim.hpp"
#include "stogram/model_io.hpp"
#include "stogram/recursive_fim.hpp"
#include "stogram/riccati.hpp"
#include "stogram/sweep.hpp"

using namespace stogram;

struct sg_system {
  SystemDocument doc;
};

namespace {

thread_local std::string g_last_error;

sg_status fail(sg_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

/// Runs `fn`, translating exceptions to status codes.
template <typename Fn>
sg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const RangeError& e) {
    return fail(SG_ERR_RANGE, e.what());
  } catch (const ParseError& e) {
    return fail(SG_ERR_PARSE, e.what());
  } catch (const SchemaError& e) {
    return fail(SG_ERR_SCHEMA, e.what());
  } catch (const ValidationError& e) {
    return fail(SG_ERR_VALIDATION, e.what());
  } catch (const UnsupportedError& e) {
    return fail(SG_ERR_UNSUPPORTED, e.what());
  } catch (const NumericalError& e) {
    return fail(SG_ERR_NUMERIC, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(SG_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SG_ERR_INVALID_ARGUMENT, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_matrix(const Matrix& m, double* out) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) *out++ = m(i, j);
}

InfoMatrix compute_gramian(const SystemDocument& doc, sg_gramian_kind kind,
                           sg_method method, int w) {
  const TimeVaryingLinearSystem& sys = doc.ltv;
  if (kind == SG_KIND_OBS) {
    switch (method) {
      case SG_METHOD_DIRECT_THM1:
        return obs_fim_direct(sys, w, CovConstruction::BlockSum);
      case SG_METHOD_DIRECT_MFORM:
        return obs_fim_direct(sys, w, CovConstruction::MForm);
      case SG_METHOD_RECURSIVE_DUAL:
        return obs_recursion_dual(sys, w).final();
      case SG_METHOD_NO_NOISE:
        return obs_fim_no_process_noise(sys, w);
    }
  } else {
    switch (method) {
      case SG_METHOD_DIRECT_MFORM:
        return cons_fim_direct(sys, w, CovConstruction::MForm);
      case SG_METHOD_NO_NOISE:
        return cons_fim_no_process_noise(sys, w);
      case SG_METHOD_DIRECT_THM1:
      case SG_METHOD_RECURSIVE_DUAL:
        break;
    }
    throw UnsupportedError(
        "method not available for constructability (use direct_mform or no_noise)");
  }
  throw UnsupportedError("unknown method");
}

}  // namespace

extern "C" {

const char* sg_last_error(void) { return g_last_error.c_str(); }

void sg_string_free(char* s) { delete[] s; }

sg_status sg_system_load_file(const char* path, sg_system** out) {
  if (!path || !out) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new sg_system{load_system(std::string(path))};
    return SG_OK;
  });
}

sg_status sg_system_load_json(const char* json_text, sg_system** out) {
  if (!json_text || !out) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new sg_system{load_system_json(json_text)};
    return SG_OK;
  });
}

void sg_system_free(sg_system* sys) { delete sys; }

int sg_system_state_dim(const sg_system* sys) { return sys->doc.ltv.state_dim; }
int sg_system_meas_dim(const sg_system* sys) { return sys->doc.ltv.meas_dim; }
int sg_system_horizon(const sg_system* sys) { return sys->doc.ltv.horizon; }
int sg_system_is_lti(const sg_system* sys) { return sys->doc.is_lti ? 1 : 0; }

sg_status sg_system_validate(const sg_system* sys, int* ok, char** report) {
  if (!sys || !ok) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const ValidationReport rep = validate(sys->doc.ltv);
    *ok = rep.ok() ? 1 : 0;
    if (report) *report = copy_string(rep.summary());
    return SG_OK;
  });
}

sg_status sg_gramian(const sg_system* sys, sg_gramian_kind kind, sg_method method,
                     int w, double* fim, sg_gramian_stats* stats) {
  if (!sys || !fim) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const InfoMatrix info = compute_gramian(sys->doc, kind, method, w);
    write_matrix(info.m, fim);
    if (stats) {
      stats->sym_err =
          method == SG_METHOD_RECURSIVE_DUAL ? symmetry_error(info.m)
                                             : info.raw_sym_err;
      stats->min_eig = min_eigenvalue(info.m);
      stats->wall_ns = info.wall_ns;
    }
    return SG_OK;
  });
}

sg_status sg_gramian_trace(const sg_system* sys, sg_gramian_kind kind,
                           sg_method method, int w, double* trace,
                           double* min_eigs) {
  if (!sys || !trace) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const TimeVaryingLinearSystem& ltv = sys->doc.ltv;
    RecursionTrace rec;
    if (kind == SG_KIND_OBS && method == SG_METHOD_RECURSIVE_DUAL)
      rec = obs_recursion_dual(ltv, w);
    else if (kind == SG_KIND_OBS && method == SG_METHOD_NO_NOISE)
      rec = obs_recursion_no_noise(ltv, w);
    else if (kind == SG_KIND_CONS && method == SG_METHOD_NO_NOISE)
      rec = cons_recursion_no_noise(ltv, w);
    else
      throw UnsupportedError("traces exist for recursive methods only");
    const int n = ltv.state_dim;
    for (const InfoMatrix& step : rec.steps) {
      write_matrix(step.m, trace);
      trace += n * n;
      if (min_eigs) *min_eigs++ = min_eigenvalue(step.m);
    }
    return SG_OK;
  });
}

sg_status sg_sweep_csv(const sg_system* sys, int w_max, const char* methods,
                       int threads, char** csv) {
  if (!sys || !csv) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SweepOptions opts;
    opts.w_max = w_max;
    opts.threads = threads;
    if (methods && *methods) {
      std::istringstream list(methods);
      std::string item;
      while (std::getline(list, item, ',')) opts.methods.push_back(item);
    }
    const auto records = run_sweep(sys->doc.ltv, opts);
    std::ostringstream out;
    write_sweep_csv(out, records, sys->doc.ltv.state_dim);
    *csv = copy_string(out.str());
    return SG_OK;
  });
}

sg_status sg_dare(const sg_system* sys, double tol, int max_iter, double* f_inf,
                  int* iterations, double* residual, int* converged) {
  if (!sys || !f_inf) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  if (!sys->doc.is_lti)
    return fail(SG_ERR_UNSUPPORTED, "steady-state Gramian requires an LTI system");
  return guarded([&] {
    const DareSolution sol = solve_dare_fixed_point(sys->doc.lti, tol, max_iter);
    write_matrix(sol.f_inf.m, f_inf);
    if (iterations) *iterations = sol.iterations;
    if (residual) *residual = sol.residual;
    if (converged) *converged = sol.converged ? 1 : 0;
    if (!sol.converged)
      return fail(SG_ERR_NO_CONVERGENCE, "fixed-point iteration did not converge");
    return SG_OK;
  });
}

sg_status sg_reproduce_fig2(const char* out_dir, int threads) {
  if (!out_dir) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    reproduce_fig2(out_dir, threads);
    return SG_OK;
  });
}

sg_status sg_reproduce_fig1(const char* out_dir, int horizon) {
  if (!out_dir) return fail(SG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    reproduce_fig1(out_dir, horizon);
    return SG_OK;
  });
}

}  // extern "C"

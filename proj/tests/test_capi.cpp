#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "stogram/stogram.h"

namespace {

std::string data_path(const char* name) {
  return std::string(STOGRAM_TEST_DATA_DIR) + "/" + name;
}

struct SystemHandle {
  sg_system* sys = nullptr;
  ~SystemHandle() { sg_system_free(sys); }
};

const char* kScalarJson = R"json({
  "kind": "lti", "n": 1, "p": 1, "N": 10,
  "phi": [[1]], "c": [[1]], "q": [[1]], "r": [[1]]
})json";

}  // namespace

TEST_CASE("load from file and query dimensions") {
  SystemHandle h;
  REQUIRE(sg_system_load_file(data_path("scalar_unit.json").c_str(), &h.sys) ==
          SG_OK);
  CHECK(sg_system_state_dim(h.sys) == 1);
  CHECK(sg_system_meas_dim(h.sys) == 1);
  CHECK(sg_system_horizon(h.sys) == 10);
  CHECK(sg_system_is_lti(h.sys) == 1);
}

TEST_CASE("missing file reports an IO error") {
  sg_system* sys = nullptr;
  CHECK(sg_system_load_file("/nonexistent/system.json", &sys) == SG_ERR_IO);
  CHECK(std::strlen(sg_last_error()) > 0);
  CHECK(sys == nullptr);
}

TEST_CASE("bad expression reports a parse error") {
  sg_system* sys = nullptr;
  CHECK(sg_system_load_file(data_path("bad_expr.json").c_str(), &sys) ==
        SG_ERR_PARSE);
}

TEST_CASE("indefinite Q reports a validation error") {
  sg_system* sys = nullptr;
  CHECK(sg_system_load_file(data_path("indefinite_q.json").c_str(), &sys) ==
        SG_ERR_VALIDATION);
}

TEST_CASE("load from JSON text and validate") {
  SystemHandle h;
  REQUIRE(sg_system_load_json(kScalarJson, &h.sys) == SG_OK);
  int ok = 0;
  char* report = nullptr;
  REQUIRE(sg_system_validate(h.sys, &ok, &report) == SG_OK);
  CHECK(ok == 1);
  REQUIRE(report != nullptr);
  sg_string_free(report);
}

TEST_CASE("gramian scalar oracle with stats") {
  SystemHandle h;
  REQUIRE(sg_system_load_json(kScalarJson, &h.sys) == SG_OK);
  double fim = 0.0;
  sg_gramian_stats stats{};
  REQUIRE(sg_gramian(h.sys, SG_KIND_OBS, SG_METHOD_RECURSIVE_DUAL, 2, &fim,
                     &stats) == SG_OK);
  CHECK(fim == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(stats.min_eig == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(stats.sym_err == 0.0);

  REQUIRE(sg_gramian(h.sys, SG_KIND_CONS, SG_METHOD_DIRECT_MFORM, 2, &fim,
                     nullptr) == SG_OK);
  CHECK(fim == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("gramian rejects out-of-range windows and bad combinations") {
  SystemHandle h;
  REQUIRE(sg_system_load_json(kScalarJson, &h.sys) == SG_OK);
  double fim = 0.0;
  CHECK(sg_gramian(h.sys, SG_KIND_OBS, SG_METHOD_RECURSIVE_DUAL, 0, &fim,
                   nullptr) == SG_ERR_RANGE);
  CHECK(sg_gramian(h.sys, SG_KIND_OBS, SG_METHOD_RECURSIVE_DUAL, 12, &fim,
                   nullptr) == SG_ERR_RANGE);
  CHECK(sg_gramian(h.sys, SG_KIND_CONS, SG_METHOD_DIRECT_THM1, 2, &fim,
                   nullptr) == SG_ERR_UNSUPPORTED);
  CHECK(sg_gramian(nullptr, SG_KIND_OBS, SG_METHOD_RECURSIVE_DUAL, 1, &fim,
                   nullptr) == SG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("trace returns per-step iterates and minimum eigenvalues") {
  SystemHandle h;
  REQUIRE(sg_system_load_json(kScalarJson, &h.sys) == SG_OK);
  const int w = 3;
  std::vector<double> trace(static_cast<size_t>(w));
  std::vector<double> eigs(static_cast<size_t>(w));
  REQUIRE(sg_gramian_trace(h.sys, SG_KIND_OBS, SG_METHOD_RECURSIVE_DUAL, w,
                           trace.data(), eigs.data()) == SG_OK);
  CHECK(trace[0] == doctest::Approx(1.0));
  CHECK(trace[1] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(trace[2] == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(eigs[2] == doctest::Approx(1.6).epsilon(1e-12));

  CHECK(sg_gramian_trace(h.sys, SG_KIND_OBS, SG_METHOD_DIRECT_MFORM, w,
                         trace.data(), nullptr) == SG_ERR_UNSUPPORTED);
}

TEST_CASE("sweep CSV through the C API") {
  SystemHandle h;
  REQUIRE(sg_system_load_json(kScalarJson, &h.sys) == SG_OK);
  char* csv = nullptr;
  REQUIRE(sg_sweep_csv(h.sys, 3, nullptr, 2, &csv) == SG_OK);
  REQUIRE(csv != nullptr);
  const std::string text(csv);
  sg_string_free(csv);
  CHECK(text.rfind("method,w,f11,sym_err,min_eig,wall_ns,error\n", 0) == 0);
  int lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + 3 * 3);

  char* single = nullptr;
  REQUIRE(sg_sweep_csv(h.sys, 2, "recursive_dual", 1, &single) == SG_OK);
  const std::string one(single);
  sg_string_free(single);
  CHECK(one.find("direct_thm1") == std::string::npos);
  CHECK(one.find("recursive_dual,2,") != std::string::npos);
}

TEST_CASE("steady-state Gramian through the C API") {
  SystemHandle h;
  REQUIRE(sg_system_load_json(kScalarJson, &h.sys) == SG_OK);
  double f = 0.0;
  int iterations = 0, converged = 0;
  double residual = 0.0;
  REQUIRE(sg_dare(h.sys, 1e-12, 10000, &f, &iterations, &residual, &converged) ==
          SG_OK);
  CHECK(converged == 1);
  CHECK(f == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-10));
  CHECK(residual < 1e-10);

  // Exhausting max_iter still writes the best iterate.
  CHECK(sg_dare(h.sys, 1e-15, 3, &f, &iterations, &residual, &converged) ==
        SG_ERR_NO_CONVERGENCE);
  CHECK(converged == 0);
  CHECK(f == doctest::Approx(1.6).epsilon(1e-12));

  SystemHandle ltv;
  REQUIRE(sg_system_load_file(data_path("sweep_ltv.json").c_str(), &ltv.sys) ==
          SG_OK);
  CHECK(sg_dare(ltv.sys, 1e-10, 100, &f, nullptr, nullptr, nullptr) ==
        SG_ERR_UNSUPPORTED);
}

TEST_CASE("experiment reproduction entry points write files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "stogram_capi_fig";
  fs::remove_all(dir);
  REQUIRE(sg_reproduce_fig1((dir / "one").string().c_str(), 20) == SG_OK);
  CHECK(fs::exists(dir / "one" / "total_info.csv"));
  REQUIRE(sg_reproduce_fig2((dir / "two").string().c_str(), 2) == SG_OK);
  CHECK(fs::exists(dir / "two" / "sweep.csv"));
  CHECK(fs::exists(dir / "two" / "summary.csv"));
  fs::remove_all(dir);
}

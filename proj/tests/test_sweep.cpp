#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stogram/direct_fim.hpp"
#include "stogram/sweep.hpp"
#include "test_util.hpp"

using namespace stogram;
using namespace stogram::testing;

TEST_CASE("gramian_record dispatches by method name") {
  auto sys = scalar_unit_system(3);
  const auto rec = gramian_record(sys, kMethodRecursiveDual, 2);
  CHECK(rec.method == kMethodRecursiveDual);
  CHECK(rec.w == 2);
  REQUIRE(rec.fim.size() == 1);
  CHECK(rec.fim[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(rec.sym_err == 0.0);  // recursive iterates are symmetrized exactly
  CHECK(rec.error.empty());

  const auto direct = gramian_record(sys, kMethodDirectMForm, 2);
  CHECK(direct.fim[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(direct.min_eig == doctest::Approx(1.5).epsilon(1e-12));

  CHECK_THROWS_AS(gramian_record(sys, "bogus", 1), UnsupportedError);
}

TEST_CASE("run_sweep orders records by (method, w)") {
  auto sys = scalar_unit_system(4);
  SweepOptions opts;
  opts.w_max = 3;
  const auto records = run_sweep(sys, opts);
  REQUIRE(records.size() == 9);
  CHECK(records[0].method == kMethodDirectThm1);
  CHECK(records[0].w == 1);
  CHECK(records[2].w == 3);
  CHECK(records[3].method == kMethodDirectMForm);
  CHECK(records[6].method == kMethodRecursiveDual);
  CHECK(records[8].w == 3);
}

TEST_CASE("run_sweep is deterministic across thread counts") {
  const auto sys = example_sweep_system();
  SweepOptions serial;
  serial.w_max = 10;
  SweepOptions parallel = serial;
  parallel.threads = 4;
  const auto a = run_sweep(sys, serial);
  const auto b = run_sweep(sys, parallel);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].method == b[i].method);
    CHECK(a[i].w == b[i].w);
    REQUIRE(a[i].fim.size() == b[i].fim.size());
    for (size_t j = 0; j < a[i].fim.size(); ++j) CHECK(a[i].fim[j] == b[i].fim[j]);
  }
}

TEST_CASE("per-item failures become sentinel rows") {
  // Indefinite measurement covariance cannot happen for a valid system, so use
  // an invalid one (negative R) constructed directly.
  auto sys = scalar_unit_system(2);
  sys.r[1] = Matrix::Constant(1, 1, -1.0);
  SweepOptions opts;
  opts.w_max = 2;
  const auto records = run_sweep(sys, opts);
  REQUIRE(records.size() == 6);
  CHECK(records[0].error.empty());        // w = 1 only touches R_0
  CHECK_FALSE(records[1].error.empty());  // w = 2 hits the bad block
  CHECK(records[1].method == kMethodDirectThm1);
  CHECK(records[1].w == 2);
}

TEST_CASE("summarize_sweep tracks symmetry and monotonicity per method") {
  std::vector<GramianSweepRecord> records;
  for (int w = 1; w <= 3; ++w) {
    GramianSweepRecord rec;
    rec.method = "a";
    rec.w = w;
    rec.fim = {w == 3 ? 1.5 : static_cast<double>(w)};  // drops at w = 3
    rec.sym_err = 0.1 * w;
    records.push_back(rec);
  }
  GramianSweepRecord other;
  other.method = "b";
  other.w = 1;
  other.fim = {1.0};
  other.sym_err = 0.0;
  records.push_back(other);

  const auto rows = summarize_sweep(records, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].method == "a");
  CHECK(rows[0].max_sym_err == doctest::Approx(0.3));
  CHECK(rows[0].first_monotonicity_break_w == 3);
  CHECK(rows[1].method == "b");
  CHECK(rows[1].first_monotonicity_break_w == -1);
}

TEST_CASE("embedded example systems validate") {
  const auto sweep_sys = example_sweep_system();
  CHECK(sweep_sys.horizon == 30);
  CHECK(validate(sweep_sys).ok());
  CHECK(sweep_sys.phi[0](0, 0) == 2.0);
  CHECK(sweep_sys.phi[9](0, 1) == doctest::Approx(-1 + std::sin(M_PI / 2)));

  const auto lti = example_total_info_system();
  CHECK(lti.q(0, 1) == lti.q(1, 0));
  CHECK(validate(lift_lti(lti, 5)).ok());
}

TEST_CASE("stability comparison experiment writes both CSVs") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "stogram_fig2_test";
  fs::remove_all(dir);
  reproduce_fig2(dir.string(), 2);

  std::ifstream sweep(dir / "sweep.csv");
  REQUIRE(sweep.good());
  std::string header;
  std::getline(sweep, header);
  CHECK(header == "method,w,f11,f12,f21,f22,sym_err,min_eig,wall_ns,error");
  int rows = 0;
  for (std::string line; std::getline(sweep, line);) ++rows;
  CHECK(rows == 3 * 31);

  std::ifstream summary(dir / "summary.csv");
  REQUIRE(summary.good());
  std::getline(summary, header);
  CHECK(header == "method,max_sym_err,first_monotonicity_break_w");
  std::vector<std::string> lines;
  for (std::string line; std::getline(summary, line);) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  // The recursive method stays symmetric; its summary row reports zero.
  CHECK(lines[2].rfind("recursive_dual,0,", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("recursive sweep column stays monotone where direct methods break") {
  const auto sys = example_sweep_system();
  SweepOptions opts;
  opts.w_max = sys.horizon + 1;
  const auto records = run_sweep(sys, opts);
  const auto rows = summarize_sweep(records, sys.state_dim);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    if (row.method == kMethodRecursiveDual) {
      CHECK(row.first_monotonicity_break_w == -1);
      CHECK(row.max_sym_err == 0.0);
    }
  }
  // Every recursive record succeeds over the whole sweep.
  for (const auto& rec : records)
    if (rec.method == kMethodRecursiveDual) CHECK(rec.error.empty());
}

TEST_CASE("total information experiment finds a plateau") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "stogram_fig1_test";
  fs::remove_all(dir);
  reproduce_fig1(dir.string(), 40);

  std::ifstream data(dir / "total_info.csv");
  REQUIRE(data.good());
  std::string header;
  std::getline(data, header);
  CHECK(header == "k,total_f11,obs_f11,cons_f11");
  int rows = 0;
  for (std::string line; std::getline(data, line);) ++rows;
  CHECK(rows == 41);

  std::ifstream summary(dir / "total_info_summary.csv");
  REQUIRE(summary.good());
  std::getline(summary, header);
  CHECK(header == "plateau_found,plateau_start_k");
  std::string row;
  std::getline(summary, row);
  CHECK(row.rfind("1,", 0) == 0);
  fs::remove_all(dir);
}

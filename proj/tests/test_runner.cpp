#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "dimersim/config.hpp"
#include "dimersim/errors.hpp"
#include "dimersim/liouvillian.hpp"
#include "dimersim/model.hpp"
#include "dimersim/presets.hpp"
#include "dimersim/runner.hpp"
#include "dimersim/stationary.hpp"

using namespace dimersim;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() / ("dimersim_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), {}};
}

struct Csv {
  std::vector<std::string> header;             // '#' lines, prefix stripped
  std::vector<std::vector<double>> rows;       // numeric cells (NaN for words)
  std::vector<std::vector<std::string>> cells; // raw cells
};

Csv read_csv(const std::string& path) {
  Csv out;
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      out.header.push_back(line.substr(2));
      continue;
    }
    std::vector<std::string> cells;
    std::vector<double> nums;
    size_t pos = 0;
    while (true) {
      const size_t comma = line.find(',', pos);
      const std::string cell = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      cells.push_back(cell);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      nums.push_back(end == cell.c_str() + cell.size()
                         ? v
                         : std::nan(""));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    out.cells.push_back(cells);
    out.rows.push_back(nums);
  }
  return out;
}

bool header_has(const Csv& csv, const std::string& needle) {
  for (const auto& h : csv.header)
    if (h.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("threshold run writes the critical rates") {
  const fs::path dir = fresh_dir("thresholds");
  const RunConfig cfg = parse_config(
      "scenario: thresholds\nomega12: 20\noutput: thresholds.csv\n");
  const RunResult res = run_config(cfg, {dir.string(), 1});

  CHECK(res.rows == 2);
  CHECK(fs::path(res.output_path).filename() == "thresholds.csv");

  const Csv csv = read_csv(res.output_path);
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.header.front().rfind("dimersim ", 0) == 0);
  CHECK(header_has(csv, "scenario: thresholds"));
  CHECK(header_has(csv, "omega12: 20"));
  CHECK(header_has(csv, "gamma0: 1"));  // defaults are echoed
  CHECK(header_has(csv, "columns: excitation,threshold_gamma_star,threshold_rabi"));

  CHECK(csv.cells[0][0] == "two_photon");
  CHECK(csv.rows[0][1] == doctest::Approx(std::cbrt(1600.0)).epsilon(1e-9));
  CHECK(csv.rows[0][2] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-9));
  CHECK(csv.cells[1][0] == "superradiant");
  CHECK(csv.rows[1][1] == doctest::Approx(80.0).epsilon(1e-9));
  CHECK(csv.rows[1][2] == doctest::Approx(40.0).epsilon(1e-9));

  // No stray temporary left behind.
  CHECK(!fs::exists(res.output_path + ".tmp"));
  fs::remove_all(dir);
}

TEST_CASE("decay run reproduces the subradiant law") {
  const fs::path dir = fresh_dir("decay");
  const RunConfig cfg = parse_config(
      "scenario: decay\ninitial_state: S\nt: [0, 2, 21]\n");
  const RunResult res = run_config(cfg, {dir.string(), 2});
  CHECK(fs::path(res.output_path).filename() == "decay.csv");  // default name

  const Csv csv = read_csv(res.output_path);
  REQUIRE(csv.rows.size() == 21);
  CHECK(header_has(csv, "columns: t,n_exc"));  // no sweep column
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == 2);
    CHECK(row[1] == doctest::Approx(std::exp(-1.3 * row[0])).epsilon(1e-8));
  }
  fs::remove_all(dir);
}

TEST_CASE("swept decay run prefixes the dephasing column") {
  const fs::path dir = fresh_dir("decay_sweep");
  const RunConfig cfg = parse_config(
      "scenario: decay\ninitial_state: E\ngamma_star: list(0, 2)\n"
      "t: [0, 1, 5]\n");
  const RunResult res = run_config(cfg, {dir.string(), 2});
  const Csv csv = read_csv(res.output_path);
  CHECK(header_has(csv, "columns: gamma_star,t,n_exc"));
  REQUIRE(csv.rows.size() == 10);
  CHECK(csv.rows[0][0] == 0.0);
  CHECK(csv.rows[5][0] == 2.0);
  // Trajectories start at n_exc = 2 from the doubly excited state.
  CHECK(csv.rows[0][2] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(csv.rows[5][2] == doctest::Approx(2.0).epsilon(1e-9));
  fs::remove_all(dir);
}

TEST_CASE("spectrum run matches direct steady-state computation") {
  const fs::path dir = fresh_dir("spectrum");
  const RunConfig cfg = parse_config(
      "scenario: spectrum\nrabi: 4\ndelta: 5\ndetuning: [-1, 1, 5]\n"
      "gamma_star: list(0.1, 1)\n");
  const RunResult res = run_config(cfg, {dir.string(), 3});
  const Csv csv = read_csv(res.output_path);
  CHECK(header_has(csv, "columns: gamma_star,detuning,n_exc,redshifted_rate"));
  REQUIRE(csv.rows.size() == 10);

  for (const auto& row : csv.rows) {
    SystemParams p;
    p.set_rabi(4.0);
    p.delta = 5.0;
    p.gamma_star = row[0];
    p.laser_detuning = row[1];
    const Matrix4 rho = steady_state(build_liouvillian(p));
    CHECK(row[2] == doctest::Approx(n_exc(rho)).epsilon(1e-9));
    CHECK(row[3] == doctest::Approx(0.7 * n_exc(rho)).epsilon(1e-9));
  }
  fs::remove_all(dir);
}

TEST_CASE("saturation run annotates the half-saturation intensity") {
  const fs::path dir = fresh_dir("saturation");
  const RunConfig cfg = parse_config(
      "scenario: saturation\nrabi: [0.1, 10, 13 log]\ndelta: 5\n");
  const RunResult res = run_config(cfg, {dir.string(), 2});
  const Csv csv = read_csv(res.output_path);
  CHECK(header_has(csv, "i_sat at gamma_star 0:"));
  CHECK(header_has(csv,
                   "columns: gamma_star,rabi,rabi_sq,intensity_ratio,n_exc,"
                   "loglog_slope"));
  REQUIRE(csv.rows.size() == 13);
  bool below = false, above = false;
  for (const auto& row : csv.rows) {
    CHECK(row[2] == doctest::Approx(row[1] * row[1]).epsilon(1e-9));
    below = below || row[3] < 1.0;
    above = above || row[3] >= 1.0;
  }
  CHECK(below);
  CHECK(above);
  fs::remove_all(dir);
}

TEST_CASE("pair correlation run from the doubly excited state") {
  const fs::path dir = fresh_dir("g2time");
  const RunConfig cfg = parse_config(
      "scenario: g2time\ninitial_state: E\ngamma_star: list(0, 5)\n"
      "t: [0, 1, 6]\nseparation: 0.0353767817613803\n");
  const RunResult res = run_config(cfg, {dir.string(), 2});
  const Csv csv = read_csv(res.output_path);
  CHECK(header_has(csv, "omega12 derived from separation:"));
  CHECK(header_has(csv, "gamma12 derived from separation:"));
  CHECK(header_has(
      csv, "columns: gamma_star,t,intensity_perp,intensity_par,g2_perp,g2_par"));
  REQUIRE(csv.rows.size() == 12);
  // At t = 0 the doubly excited state radiates unit intensity into both
  // directions and the pair correlation starts at exactly one.
  for (size_t base : {std::size_t{0}, std::size_t{6}}) {
    CHECK(csv.rows[base][2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(csv.rows[base][3] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(csv.rows[base][4] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(csv.rows[base][5] == doctest::Approx(1.0).epsilon(1e-9));
  }
  fs::remove_all(dir);
}

TEST_CASE("g1spec run covers the grid") {
  const fs::path dir = fresh_dir("g1spec");
  const RunConfig cfg = parse_config(
      "scenario: g1spec\ninitial_state: A\nphi: 1.5707963267948966\n"
      "t: [0, 1, 2]\nomega: [-21, -19, 5]\nmethod: resolvent\n");
  const RunResult res = run_config(cfg, {dir.string(), 1});
  const Csv csv = read_csv(res.output_path);
  CHECK(header_has(csv, "columns: t,omega,spectrum"));
  REQUIRE(csv.rows.size() == 10);
  // The subradiant line at omega = -omega12 dominates this window.
  double peak = 0.0, off = 0.0;
  for (const auto& row : csv.rows) {
    if (row[0] != 0.0) continue;
    if (row[1] == -20.0) peak = row[2];
    if (row[1] == -19.0) off = row[2];
  }
  CHECK(peak > 5.0 * off);
  CHECK(peak > 0.0);
  fs::remove_all(dir);
}

TEST_CASE("coupling run inverts the separation") {
  const fs::path dir = fresh_dir("coupling");
  const RunConfig cfg =
      parse_config("scenario: coupling\ntarget_omega12: 20\n");
  const RunResult res = run_config(cfg, {dir.string(), 1});
  const Csv csv = read_csv(res.output_path);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.rows[0][0] == doctest::Approx(0.035376781761).epsilon(1e-6));
  CHECK(csv.rows[0][3] == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(csv.rows[0][4] == doctest::Approx(0.297043363).epsilon(1e-6));

  const RunConfig sweep = parse_config(
      "scenario: coupling\nseparation: list(0.0357)\noutput: sweep.csv\n");
  const RunResult res2 = run_config(sweep, {dir.string(), 1});
  const Csv csv2 = read_csv(res2.output_path);
  REQUIRE(csv2.rows.size() == 1);
  CHECK(csv2.rows[0][1] == doctest::Approx(19.453310).epsilon(1e-5));
  CHECK(csv2.rows[0][3] == csv2.rows[0][1]);
  fs::remove_all(dir);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  const RunConfig cfg = parse_config(
      "scenario: spectrum\nrabi: 4\ndelta: 5\ndetuning: [-30, 30, 7]\n"
      "gamma_star: list(0.1, 30)\n");
  const RunResult a = run_config(cfg, {dir1.string(), 1});
  const RunResult b = run_config(cfg, {dir2.string(), 4});
  CHECK(slurp(a.output_path) == slurp(b.output_path));

  // Re-running in place reproduces the same bytes.
  const RunResult c = run_config(cfg, {dir1.string(), 2});
  CHECK(slurp(c.output_path) == slurp(b.output_path));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("output directories are created on demand") {
  const fs::path dir = fresh_dir("nested") / "a" / "b";
  const RunConfig cfg = parse_config("scenario: thresholds\n");
  const RunResult res = run_config(cfg, {dir.string(), 1});
  CHECK(fs::exists(res.output_path));
  fs::remove_all(fresh_dir("nested"));
}

TEST_CASE("runner failures surface as typed errors") {
  // Validation failures come through as ConfigError before anything is
  // written.
  const RunConfig bad = parse_config("scenario: spectrum\nrabi: 1\n");
  CHECK_THROWS_AS(run_config(bad, {".", 1}), ConfigError);

  // Unwritable output locations surface as IoError.
  const RunConfig ok = parse_config("scenario: thresholds\n");
  CHECK_THROWS_AS(run_config(ok, {"/proc/dimersim_nowhere/x", 1}), IoError);
}

TEST_CASE("cheapest preset runs end to end") {
  const fs::path dir = fresh_dir("preset");
  const RunResult res = run_config(preset_config("fig5c"), {dir.string(), 0});
  CHECK(fs::path(res.output_path).filename() == "fig5c.csv");
  CHECK(res.rows == 4 * 251);
  const Csv csv = read_csv(res.output_path);
  CHECK(csv.rows.size() == 4 * 251);
  CHECK(header_has(csv, "scenario: g2time"));
  fs::remove_all(dir);
}

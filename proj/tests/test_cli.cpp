#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pdmosc/serialize.hpp"

using namespace pdmosc;

namespace {

std::string cli_path() {
#ifdef PDMOSC_CLI_PATH
  return PDMOSC_CLI_PATH;
#else
  const char* env = std::getenv("PDMOSC_CLI");
  REQUIRE(env != nullptr);
  return env;
#endif
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, k);
  const int rc = pclose(f);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("constants command zeroes sigma and eta at m1 = 0") {
  const auto r = run_cli("constants --m1 0");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"sigma", "beta", "eta", "alpha", "k"});
  CHECK(std::stod(rows[1][0]) == 0.0);
  CHECK(std::stod(rows[1][2]) == 0.0);
  CHECK(std::stod(rows[1][3]) == 1.0);
}

TEST_CASE("omega convention scales the frequency by 2*pi") {
  const auto rad = run_cli("constants --units si --m0 1e-17 --omega 1e10 --m1 0");
  const auto hz = run_cli(
      "constants --units si --m0 1e-17 --omega 1e10 --m1 0 --omega-convention hz_times_2pi");
  REQUIRE(rad.code == 0);
  REQUIRE(hz.code == 0);
  const double k_rad = std::stod(parse_csv(rad.out)[1][4]);
  const double k_hz = std::stod(parse_csv(hz.out)[1][4]);
  const double factor = 2.0 * std::numbers::pi;
  CHECK(k_hz / k_rad == doctest::Approx(factor * factor).epsilon(1e-12));
}

TEST_CASE("spectrum at m1 = 0 collapses to the oscillator ladder") {
  const auto r = run_cli("spectrum --m1 0 --n-max 8");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double e0v = std::stod(rows[i][1]);
    CHECK(e0v == doctest::Approx(double(i - 1) + 0.5).epsilon(1e-14));
    CHECK(std::stod(rows[i][4]) == doctest::Approx(e0v).epsilon(1e-13));  // eH_total
    CHECK(std::stod(rows[i][7]) == doctest::Approx(e0v).epsilon(1e-13));  // eK_total
    CHECK(std::stod(rows[i][8]) == doctest::Approx(e0v).epsilon(1e-13));  // eH_exact
    CHECK(std::stod(rows[i][9]) == doctest::Approx(e0v).epsilon(1e-13));  // eK_exact
  }
}

TEST_CASE("spectrum output is byte-identical across runs") {
  const std::string args = "spectrum --m1 0.05 --n-max 4 --N 48";
  const auto a = run_cli(args + " --out cli_tmp_spectrum_a.csv");
  const auto b = run_cli(args + " --out cli_tmp_spectrum_b.csv");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(slurp("cli_tmp_spectrum_a.csv") == slurp("cli_tmp_spectrum_b.csv"));
  std::remove("cli_tmp_spectrum_a.csv");
  std::remove("cli_tmp_spectrum_b.csv");
}

TEST_CASE("spectrum JSON parses back into an equal table") {
  const auto r = run_cli("spectrum --m1 0.05 --n-max 3 --N 48 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const auto table = j.get<SpectrumTable>();
  CHECK(table.n_max == 3);
  CHECK(table.rows.size() == 4);
  const json j2 = table;
  CHECK(j.dump() == j2.dump());
}

TEST_CASE("natural and SI runs differ exactly by the energy quantum") {
  const auto nat = run_cli("spectrum --m1 0.02 --n-max 3 --N 48");
  const auto si = run_cli(
      "spectrum --units si --m0 1e-17 --omega 1e10 --m1 0.02 --m1-mode dimensionless "
      "--n-max 3 --N 48");
  REQUIRE(nat.code == 0);
  REQUIRE(si.code == 0);
  const auto a = parse_csv(nat.out);
  const auto b = parse_csv(si.out);
  REQUIRE(a.size() == b.size());
  const double hbar_omega = 1.054571817e-34 * 1e10;
  for (std::size_t i = 1; i < a.size(); ++i)
    for (std::size_t c = 1; c < a[i].size(); ++c) {
      const double vn = std::stod(a[i][c]);
      const double vs = std::stod(b[i][c]);
      CHECK(vs == vn * hbar_omega);  // the exact same double multiplication
    }
}

TEST_CASE("delta at m1 = 0 is identically zero") {
  const auto r = run_cli("delta --m1 0 --n-max 5");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"n", "deltaE_numeric", "deltaE_closed_form"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][1]) == 0.0);
    CHECK(std::stod(rows[i][2]) == 0.0);
  }
}

TEST_CASE("doubling m1 scales the level differences quadratically") {
  const auto a = run_cli("delta --m1 0.01 --n-max 3 --N 48");
  const auto b = run_cli("delta --m1 0.02 --n-max 3 --N 48");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const auto ra = parse_csv(a.out);
  const auto rb = parse_csv(b.out);
  for (std::size_t i = 1; i < ra.size(); ++i) {
    const double ratio = std::stod(rb[i][1]) / std::stod(ra[i][1]);
    CHECK(ratio == doctest::Approx(4.0).epsilon(2e-3));
  }
}

TEST_CASE("delta without --m1 applies the one-percent rule") {
  const auto r = run_cli("delta --n-max 4");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  bool nonzero = false;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (std::stod(rows[i][1]) != 0.0) nonzero = true;
  CHECK(nonzero);
}

TEST_CASE("classical run reproduces cosine motion at m1 = 0") {
  const auto r = run_cli("classical --m1 0 --periods 2 --steps-per-period 500");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1002);
  CHECK(rows[0] == std::vector<std::string>{"t", "x", "p", "v", "K", "H"});
  for (std::size_t i = 1; i < rows.size(); i += 101) {
    const double t = std::stod(rows[i][0]);
    const double x = std::stod(rows[i][1]);
    CHECK(x == doctest::Approx(std::cos(t)).epsilon(1e-7));
  }
}

TEST_CASE("classical run in SI units scales every column") {
  const auto r = run_cli(
      "classical --units si --m0 1e-17 --omega 1e10 --m1 0 --periods 1 "
      "--steps-per-period 100");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 102);
  const double l = std::sqrt(1.054571817e-34 / (1e-17 * 1e10));
  // x0 defaults to one oscillator length; a full period lasts 2*pi/omega.
  CHECK(std::stod(rows[1][1]) == doctest::Approx(l).epsilon(1e-12));
  CHECK(std::stod(rows.back()[0]) ==
        doctest::Approx(2.0 * std::numbers::pi / 1e10).epsilon(1e-12));
  // K column sits at the classical energy of that amplitude, m0 l^2 w^2 / 2.
  CHECK(std::stod(rows[1][4]) ==
        doctest::Approx(0.5 * 1e-17 * l * l * 1e20).epsilon(1e-10));
  CHECK(run_cli("classical --steps-per-period 0").code == 2);
}

TEST_CASE("verify exits cleanly on defaults") {
  const auto r = run_cli("verify --n-max 4");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);
  CHECK(r.out.find("adjudication") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run_cli("spectrum --units bogus").code == 2);
  CHECK(run_cli("spectrum --units natural --m0 2").code == 2);
  CHECK(run_cli("spectrum --N 10 --n-max 6").code == 2);
  CHECK(run_cli("nonsense").code == 2);
}

TEST_CASE("the alternate cubic convention is natural-units only") {
  CHECK(run_cli("spectrum --w-cubic-source eq26 --n-max 2 --N 48").code == 0);
  CHECK(run_cli("spectrum --w-cubic-source eq26 --units si --m0 1e-17 --omega 1e10")
            .code == 2);
}

TEST_CASE("truncation non-convergence exits with code 3") {
  // A gradient this large puts the low levels above the cubic barrier, so
  // growing the basis never settles them to the convergence threshold.
  CHECK(run_cli("spectrum --m1 0.35 --n-max 2").code == 3);
}

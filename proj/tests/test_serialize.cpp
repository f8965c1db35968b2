#include <doctest.h>

#include "pdmosc/serialize.hpp"

using namespace pdmosc;

TEST_CASE("g17 formatting round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 1.054571817e-34, -2.5e17, 0.0}) {
    const std::string s = format_g17(v);
    CHECK(std::stod(s) == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("spectrum table JSON round-trip preserves equality") {
  SpectrumTable t;
  t.params = ModelParams::natural(0.05);
  t.N = 64;
  t.guard = 8;
  t.n_max = 1;
  t.source = "numeric";
  t.rows = {{0, 0.5, 1.0 / 3.0, -2e-3, 0.4977, 1e-3, -7e-2, 0.43, 0.49771, 0.4301},
            {1, 1.5, 2e-3, -3e-3, 1.499, 6.6e-4, -2.1e-2, 1.479, 1.4991, 1.4792}};

  const json j = t;
  const auto back = j.get<SpectrumTable>();
  CHECK(back == t);

  // Determinism: identical values serialize to identical bytes.
  const json j2 = t;
  CHECK(j.dump(2) == j2.dump(2));
}

TEST_CASE("spectrum report JSON round-trip") {
  SpectrumReport r;
  r.params = ModelParams::natural(0.05);
  r.which = WhichPerturbation::ConstantOfMotionV;
  r.truncation_dims = {64, 80, 96};
  r.levels = {{0, 0.499, 0.498, 0.4991, 1e-13, true},
              {1, 1.497, 1.496, 1.4972, 2e-13, true}};
  const json j = r;
  const auto back = j.get<SpectrumReport>();
  CHECK(back == r);
}

TEST_CASE("delta table JSON round-trip") {
  DeltaTable t;
  t.params = ModelParams::natural(0.03);
  t.N = 64;
  t.guard = 8;
  t.n_max = 1;
  t.rows = {{0, 1.2e-3, 1.3e-3}, {1, 4.5e-3, 4.6e-3}};
  const json j = t;
  CHECK(j.get<DeltaTable>() == t);
}

TEST_CASE("csv emitters use the pinned headers") {
  SpectrumTable t;
  t.rows = {{0, 0.5, 0, 0, 0.5, 0, 0, 0.5, 0.5, 0.5}};
  CHECK(spectrum_csv(t).rfind("n,e0,eH1,eH2,eH_total,eK1,eK2,eK_total,eH_exact,eK_exact\n",
                              0) == 0);

  DeltaTable d;
  d.rows = {{0, 0.0, 0.0}};
  CHECK(delta_csv(d).rfind("n,deltaE_numeric,deltaE_closed_form\n", 0) == 0);

  std::vector<TrajectoryState> traj = {{0.0, 1.0, 0.0, 0.0, 0.5, 0.5}};
  const std::string csv = trajectory_csv(traj);
  CHECK(csv.rfind("t,x,p,v,K,H\n", 0) == 0);
  CHECK(csv.find("0.5") != std::string::npos);

  CHECK(constants_csv(DerivedConstants{0, 0.35, 0, 1, 1}).rfind("sigma,beta,eta,alpha,k\n",
                                                                0) == 0);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdmosc/classical.hpp"

using namespace pdmosc;

TEST_CASE("hamilton_rhs basics") {
  const auto p0 = ModelParams::natural(0.0);
  const auto [dx0, dp0] = hamilton_rhs(p0, 0.3, -0.7);
  CHECK(dx0 == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(dp0 == doctest::Approx(-0.3).epsilon(1e-15));

  const auto [ex, ep] = hamilton_rhs(p0, 0.0, 0.0);
  CHECK(ex == 0.0);
  CHECK(ep == 0.0);

  const auto p = ModelParams::natural(0.1);
  const auto [dx, dp] = hamilton_rhs(p, 1.0, 1.0);
  CHECK(dx == doctest::Approx(1.0 / 1.21).epsilon(1e-15));
  CHECK(dp == doctest::Approx(0.1 / 1.331 - 1.0 - 0.1).epsilon(1e-14));

  CHECK_THROWS_AS(hamilton_rhs(ModelParams::natural(-0.5), 2.5, 0.0), DomainError);
}

TEST_CASE("hamilton_rhs agrees with finite differences of the exact H") {
  const auto p = ModelParams::natural(0.12);
  const double h = 1e-6;
  for (double x : {-0.8, 0.0, 0.6, 1.3})
    for (double q : {-1.1, 0.2, 0.9}) {
      const auto [dx, dp] = hamilton_rhs(p, x, q);
      const double dHdp =
          (classical_H_exact(p, x, q + h) - classical_H_exact(p, x, q - h)) / (2.0 * h);
      const double dHdx =
          (classical_H_exact(p, x + h, q) - classical_H_exact(p, x - h, q)) / (2.0 * h);
      CHECK(dx == doctest::Approx(dHdp).epsilon(1e-8));
      CHECK(dp == doctest::Approx(-dHdx).epsilon(1e-8));
    }
}

TEST_CASE("constant-mass trajectory is a cosine") {
  const auto p = ModelParams::natural(0.0);
  const double T = 2.0 * std::numbers::pi;
  const double dt = T / 1000.0;
  const long steps = 10000;  // ten periods
  const auto traj = integrate(p, 1.0, 0.0, dt, steps);
  REQUIRE(traj.size() == std::size_t(steps) + 1);
  for (std::size_t i = 0; i < traj.size(); i += 97) {
    const auto& s = traj[i];
    CHECK(std::abs(s.x - std::cos(s.t)) <= 1e-8);
    CHECK(std::abs(s.p + std::sin(s.t)) <= 1e-8);
  }
}

TEST_CASE("constant of motion along the exact dynamics") {
  const auto p = ModelParams::natural(0.05);
  const double T = 2.0 * std::numbers::pi;
  const double dt = T / 1000.0;
  const long steps = 100000;  // one hundred periods
  const auto traj = integrate(p, 1.0, 0.0, dt, steps);

  const double K0 = traj.front().K_value;
  double drift = 0.0;
  for (const auto& s : traj) {
    drift = std::max(drift, std::abs(s.K_value - K0) / std::abs(K0));
    // K and H agree identically when v is slaved to (x, p).
    CHECK(std::abs(s.K_value - s.H_value) <= 1e-13);
  }
  CHECK(drift <= 1e-8);
}

TEST_CASE("halving the step shows the integrator order") {
  // Short horizons expose the bounded fourth-order component of the energy
  // error (ratio near 16); long horizons are dominated by the secular
  // fifth-order dissipation (ratio near 32).
  const auto p = ModelParams::natural(0.05);
  const double T = 2.0 * std::numbers::pi;
  auto drift_at = [&](double dt, long steps) {
    const auto traj = integrate(p, 1.0, 0.0, dt, steps);
    const double K0 = traj.front().K_value;
    double d = 0.0;
    for (const auto& s : traj) d = std::max(d, std::abs(s.K_value - K0));
    return d / std::abs(K0);
  };
  const double short_ratio = drift_at(T / 1000.0, 5000) / drift_at(T / 2000.0, 10000);
  CHECK(short_ratio >= 11.0);
  CHECK(short_ratio <= 23.0);
  const double long_ratio = drift_at(T / 1000.0, 100000) / drift_at(T / 2000.0, 200000);
  CHECK(long_ratio >= 23.0);
  CHECK(long_ratio <= 40.0);
}

TEST_CASE("time reversal returns to the start") {
  const auto p = ModelParams::natural(0.1);
  const double dt = 2.0 * std::numbers::pi / 1000.0;
  const long steps = 5000;
  const auto fwd = integrate(p, 0.8, 0.3, dt, steps);
  const auto back = integrate(p, fwd.back().x, fwd.back().p, -dt, steps);
  CHECK(std::abs(back.back().x - 0.8) <= 1e-8);
  CHECK(std::abs(back.back().p - 0.3) <= 1e-8);
}

TEST_CASE("mass zero crossing halts the integration") {
  // With m1 = -0.4 the mass vanishes at x = 2.5; a large-amplitude orbit
  // reaches it.
  const auto p = ModelParams::natural(-0.4);
  CHECK_THROWS_AS(integrate(p, 2.4, 1.5, 0.01, 10000), DomainError);
}

TEST_CASE("integrate argument validation") {
  const auto p = ModelParams::natural(0.0);
  CHECK_THROWS_AS(integrate(p, 1.0, 0.0, 0.0, 10), StepError);
  CHECK_THROWS_AS(integrate(p, 1.0, 0.0, 0.1, -1), StepError);
  CHECK(integrate(p, 1.0, 0.0, 0.1, 0).size() == 1);
}

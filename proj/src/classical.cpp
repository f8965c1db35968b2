#include "pdmosc/classical.hpp"

#include <cmath>
#include <string>

namespace pdmosc {

std::pair<double, double> hamilton_rhs(const ModelParams& p, double x, double pmom) {
  const double m = mass_at(p, x);
  const double dx = p.m0 * pmom / (m * m);
  const double dp = p.m0 * pmom * pmom * p.m1 / (m * m * m) -
                    p.m0 * p.omega * p.omega * x - p.m1 * p.omega * p.omega * x * x;
  return {dx, dp};
}

namespace {
TrajectoryState make_state(const ModelParams& p, double t, double x, double pmom) {
  const double m = mass_at(p, x);
  const double v = p.m0 * pmom / (m * m);
  return TrajectoryState{t, x, pmom, v, classical_K_exact(p, x, v),
                         classical_H_exact(p, x, pmom)};
}
}  // namespace

std::vector<TrajectoryState> integrate(const ModelParams& p, double x0, double p0,
                                       double dt, long steps) {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw StepError("dt must be finite and nonzero");
  if (steps < 0) throw StepError("step count must be non-negative");

  std::vector<TrajectoryState> out;
  out.reserve(std::size_t(steps) + 1);
  double x = x0, q = p0;
  out.push_back(make_state(p, 0.0, x, q));

  for (long i = 0; i < steps; ++i) {
    const auto [k1x, k1p] = hamilton_rhs(p, x, q);
    const auto [k2x, k2p] = hamilton_rhs(p, x + 0.5 * dt * k1x, q + 0.5 * dt * k1p);
    const auto [k3x, k3p] = hamilton_rhs(p, x + 0.5 * dt * k2x, q + 0.5 * dt * k2p);
    const auto [k4x, k4p] = hamilton_rhs(p, x + dt * k3x, q + dt * k3p);
    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    q += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (!std::isfinite(x) || !std::isfinite(q))
      throw StepError("non-finite state at step " + std::to_string(i + 1));
    out.push_back(make_state(p, double(i + 1) * dt, x, q));
  }
  return out;
}

}  // namespace pdmosc

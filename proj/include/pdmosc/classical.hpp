#pragma once

#include <utility>
#include <vector>

#include "pdmosc/model.hpp"

namespace pdmosc {

/// One sample of the exact classical dynamics. The velocity is slaved to
/// (x, p) through v = m0 p / m(x)^2, so K_value and H_value agree to
/// machine precision; K_value drifting along a trajectory measures
/// integrator error, not model error.
struct TrajectoryState {
  double t;
  double x;
  double p;
  double v;
  double K_value;
  double H_value;
};

/// Canonical equations of the exact Hamiltonian:
///   dx/dt = m0 p / m(x)^2
///   dp/dt = m0 p^2 m1 / m(x)^3 - m0 omega^2 x - m1 omega^2 x^2
std::pair<double, double> hamilton_rhs(const ModelParams& p, double x, double pmom);

/// Classical fourth-order Runge-Kutta, one sample per step (steps + 1
/// entries including t = 0). Throws DomainError if the mass reaches zero
/// along the path and StepError on non-finite states.
std::vector<TrajectoryState> integrate(const ModelParams& p, double x0, double p0,
                                       double dt, long steps);

}  // namespace pdmosc

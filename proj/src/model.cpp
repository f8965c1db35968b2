#include "pdmosc/model.hpp"

#include <cmath>
#include <string>

namespace pdmosc {

void ModelParams::validate() const {
  if (!(m0 > 0.0)) throw DomainError("m0 must be positive");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!std::isfinite(m1)) throw DomainError("m1 must be finite");
  if (units == Units::natural) {
    if (m0 != 1.0 || omega != 1.0 || hbar != 1.0)
      throw DomainError("natural units require m0 = omega = hbar = 1");
  }
}

DerivedConstants derive_constants(const ModelParams& p) {
  DerivedConstants c{};
  c.sigma = 3.0 * p.m1 * p.m1 * p.hbar * p.hbar / (2.0 * p.m0 * p.m0 * p.m0);
  c.beta = (p.hbar / (2.0 * p.m0)) * std::sqrt(p.hbar * p.omega / (2.0 * p.m0));
  c.eta = (p.m1 * p.omega * p.omega / 3.0) *
          std::pow(p.hbar / (2.0 * p.m0 * p.omega), 1.5);
  c.alpha = std::sqrt(p.m0 * p.omega / p.hbar);
  c.k = p.m0 * p.omega * p.omega;
  return c;
}

double mass_at(const ModelParams& p, double x) {
  const double m = p.m0 + p.m1 * x;
  if (!(m > 0.0))
    throw DomainError("mass m(x) = " + std::to_string(m) +
                      " is not positive at x = " + std::to_string(x));
  return m;
}

double oscillator_length(const ModelParams& p) {
  return std::sqrt(p.hbar / (p.m0 * p.omega));
}

double energy_scale(const ModelParams& p) { return p.hbar * p.omega; }

ModelParams to_natural(const ModelParams& p) {
  p.validate();
  const double mu = p.m1 * oscillator_length(p) / p.m0;
  return ModelParams::natural(mu);
}

namespace {
double potential(const ModelParams& p, double x) {
  return 0.5 * p.m0 * p.omega * p.omega * x * x +
         (p.m1 * p.omega * p.omega / 3.0) * x * x * x;
}
}  // namespace

double classical_K_exact(const ModelParams& p, double x, double v) {
  const double m = mass_at(p, x);
  return m * m * v * v / (2.0 * p.m0) + potential(p, x);
}

double classical_H_exact(const ModelParams& p, double x, double pmom) {
  const double m = mass_at(p, x);
  return p.m0 * pmom * pmom / (2.0 * m * m) + potential(p, x);
}

double classical_K0(const ModelParams& p, double x, double v) {
  return 0.5 * p.m0 * v * v + 0.5 * p.m0 * p.omega * p.omega * x * x;
}

double classical_H0(const ModelParams& p, double x, double pmom) {
  return pmom * pmom / (2.0 * p.m0) + 0.5 * p.m0 * p.omega * p.omega * x * x;
}

double classical_W_K(const ModelParams& p, double x, double v) {
  return p.m1 * x * v * v + (p.m1 * p.m1 / (2.0 * p.m0)) * x * x * v * v +
         (p.m1 * p.omega * p.omega / 3.0) * x * x * x;
}

double classical_W_H(const ModelParams& p, double x, double pmom) {
  const double u = p.m1 * x / p.m0;
  return (-u + 1.5 * u * u) * pmom * pmom / p.m0 +
         (p.m1 * p.omega * p.omega / 3.0) * x * x * x;
}

}  // namespace pdmosc

#pragma once

#include "pdmosc/errors.hpp"

namespace pdmosc {

enum class Units { natural, si };

/// Physical inputs of the linear-mass oscillator m(x) = m0 + m1*x with
/// force constant k = m0*omega^2.
///
/// In natural units m0 = omega = hbar = 1 exactly and m1 is the
/// dimensionless gradient m1*l/m0 with l = sqrt(hbar/(m0*omega)).
struct ModelParams {
  double m0 = 1.0;
  double m1 = 0.0;
  double omega = 1.0;
  double hbar = 1.0;
  Units units = Units::natural;

  static ModelParams natural(double m1_dimensionless) {
    return ModelParams{1.0, m1_dimensionless, 1.0, 1.0, Units::natural};
  }

  bool operator==(const ModelParams&) const = default;

  /// Throws DomainError if the parameter invariants are violated.
  void validate() const;
};

/// Constants of the closed-form energy expressions.
///   sigma = 3 m1^2 hbar^2 / (2 m0^3)      [energy]
///   beta  = (hbar/2m0) sqrt(hbar omega/2m0)
///   eta   = (m1 omega^2/3)(hbar/2m0 omega)^{3/2}   [energy]
///   alpha = sqrt(m0 omega / hbar)          [inverse length]
///   k     = m0 omega^2
struct DerivedConstants {
  double sigma;
  double beta;
  double eta;
  double alpha;
  double k;
};

DerivedConstants derive_constants(const ModelParams& p);

/// m(x) = m0 + m1*x. Throws DomainError when the mass is not positive.
double mass_at(const ModelParams& p, double x);

/// Oscillator length l = sqrt(hbar/(m0*omega)).
double oscillator_length(const ModelParams& p);

/// Energy quantum hbar*omega.
double energy_scale(const ModelParams& p);

/// Rescale to natural units: m0 = omega = hbar = 1, m1 -> m1*l/m0.
ModelParams to_natural(const ModelParams& p);

// Exact classical energy functions.
//   K(x,v) = m(x)^2 v^2 / 2m0 + m0 omega^2 x^2 / 2 + m1 omega^2 x^3 / 3
//   H(x,p) = m0 p^2 / 2m(x)^2 + same potential
double classical_K_exact(const ModelParams& p, double x, double v);
double classical_H_exact(const ModelParams& p, double x, double pmom);

// Quadratic reference parts and the expansion remainders.
//   W_K = m1 x v^2 + (m1^2/2m0) x^2 v^2 + (m1 omega^2/3) x^3        (exact)
//   W_H = (-m1 x/m0 + 3 m1^2 x^2/2m0^2) p^2/m0 + (m1 omega^2/3) x^3 (second order)
double classical_K0(const ModelParams& p, double x, double v);
double classical_H0(const ModelParams& p, double x, double pmom);
double classical_W_K(const ModelParams& p, double x, double v);
double classical_W_H(const ModelParams& p, double x, double pmom);

}  // namespace pdmosc

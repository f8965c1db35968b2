#include "pdmosc/perturb.hpp"

#include <cmath>
#include <string>

namespace pdmosc {

std::string to_string(EnergySource s) {
  return s == EnergySource::numeric ? "numeric" : "closed_form";
}

double e0(const ModelParams& p, int n) {
  if (n < 0) throw DomainError("level index must be non-negative");
  return p.hbar * p.omega * (n + 0.5);
}

namespace {
void require_basis(const OperatorMatrix& w, const FockBasisSpec& basis) {
  if (w.dim() != basis.dim)
    throw SizeError("operator dimension does not match basis spec");
}
}  // namespace

double first_order_numeric(const OperatorMatrix& w, const FockBasisSpec& basis, int n) {
  require_basis(w, basis);
  if (n < 0 || n > basis.trusted_max())
    throw TruncationError("level " + std::to_string(n) +
                          " outside trusted block [0, " +
                          std::to_string(basis.trusted_max()) + "]");
  const auto d = w(n, n);
  if (std::abs(d.imag()) > 1e-12)
    throw NotHermitianError("diagonal entry has imaginary part", std::abs(d.imag()));
  return d.real();
}

double second_order_numeric(const OperatorMatrix& w, const ModelParams& p,
                            const FockBasisSpec& basis, int n) {
  require_basis(w, basis);
  if (n < 0 || n + 4 > basis.trusted_max())
    throw TruncationError("level " + std::to_string(n) +
                          " + 4 outside trusted block [0, " +
                          std::to_string(basis.trusted_max()) + "]");
  double sum = 0.0;
  for (int m = 0; m < basis.dim; ++m) {
    if (m == n) continue;
    const double amp = std::norm(w(m, n));
    if (amp == 0.0) continue;
    sum += amp / (e0(p, n) - e0(p, m));
  }
  return sum;
}

E2Form printed_E2_form(WhichPerturbation which) {
  if (which == WhichPerturbation::HamiltonianP) return E2Form{-1, -1, true, 4.0};
  return E2Form{-1, +1, false, 12.0};
}

double closed_form_E2_from(const E2Form& form, const ModelParams& p, int n) {
  if (n < 0) throw DomainError("level index must be non-negative");
  const auto c = derive_constants(p);
  const double nn = n;
  const double mb = p.m1 * c.beta;
  const double s1 = c.eta + form.sign1 * mb;
  const double s2 = 3.0 * c.eta + form.sign2 * mb;
  const double poly2 = 3.0 * nn * nn + 3.0 * nn + 2.0;
  const double polyP = form.poly_cubic ? 3.0 * nn * nn * nn + 3.0 * nn + 1.0
                                       : 3.0 * nn * nn + 3.0 * nn + 1.0;
  const double poly4 = 4.0 * nn * nn * nn + 6.0 * nn * nn + 14.0 * nn + 6.0;
  const double q = c.sigma / form.quartic_divisor;
  return -(s1 * s1 * poly2 + s2 * s2 * polyP + q * q * poly4) / (p.hbar * p.omega);
}

double closed_form_E1(WhichPerturbation which, const ModelParams& p, int n) {
  if (n < 0) throw DomainError("level index must be non-negative");
  const auto c = derive_constants(p);
  const double nn = n;
  const double braces = (2.0 * nn * nn + 2.0 * nn - 1.0) / 4.0 + 0.5;
  return (which == WhichPerturbation::HamiltonianP ? c.sigma : c.sigma / 3.0) * braces;
}

double closed_form_E2(WhichPerturbation which, const ModelParams& p, int n) {
  return closed_form_E2_from(printed_E2_form(which), p, n);
}

PerturbativeEnergy total_energy(WhichPerturbation which, const ModelParams& p,
                                const FockBasisSpec& basis, int n, EnergySource source,
                                const OperatorMatrix* prebuilt_w) {
  PerturbativeEnergy r{};
  r.n = n;
  r.which = which;
  r.source = source;
  r.e0 = e0(p, n);
  if (source == EnergySource::numeric) {
    OperatorMatrix w = prebuilt_w != nullptr
                           ? *prebuilt_w
                           : (which == WhichPerturbation::HamiltonianP
                                  ? build_W_H(p, basis.dim)
                                  : build_W_K(p, basis.dim));
    r.e1 = first_order_numeric(w, basis, n);
    r.e2 = second_order_numeric(w, p, basis, n);
  } else {
    r.e1 = closed_form_E1(which, p, n);
    r.e2 = closed_form_E2(which, p, n);
  }
  r.total = r.e0 + r.e1 + r.e2;
  return r;
}

double delta_E(const ModelParams& p, const FockBasisSpec& basis, int n,
               EnergySource source) {
  const auto h = total_energy(WhichPerturbation::HamiltonianP, p, basis, n, source);
  const auto k = total_energy(WhichPerturbation::ConstantOfMotionV, p, basis, n, source);
  return h.total - k.total;
}

double delta_E_closed_form(const ModelParams& p, int n) {
  if (n < 0) throw DomainError("level index must be non-negative");
  const auto c = derive_constants(p);
  const double nn = n;
  const double braces = (2.0 * nn * nn + 2.0 * nn - 1.0) / 4.0 + 0.5;
  const double poly6 = 6.0 * nn * nn + 6.0 * nn + 1.0;
  const double poly4 = 4.0 * nn * nn * nn + 6.0 * nn * nn + 14.0 * nn + 6.0;
  const double hw = p.hbar * p.omega;
  return (2.0 * c.sigma / 3.0) * braces + (4.0 * p.m1 * c.eta * c.beta / hw) * poly6 -
         (c.sigma * c.sigma / (18.0 * hw)) * poly4;
}

}  // namespace pdmosc

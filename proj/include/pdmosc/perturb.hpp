#pragma once

#include "pdmosc/fock.hpp"
#include "pdmosc/model.hpp"
#include "pdmosc/quantize.hpp"

namespace pdmosc {

/// Route used to obtain the perturbative corrections: from matrix elements
/// of the built perturbation operator, or from the published closed forms.
enum class EnergySource { numeric, closed_form };

std::string to_string(EnergySource s);

struct PerturbativeEnergy {
  int n;
  double e0;
  double e1;
  double e2;
  double total;
  WhichPerturbation which;
  EnergySource source;
};

/// Unperturbed level hbar*omega*(n + 1/2).
double e0(const ModelParams& p, int n);

/// First-order correction <n|W|n>. Throws TruncationError when n lies
/// outside the trusted block; the diagonal entry must be real to 1e-12.
double first_order_numeric(const OperatorMatrix& w, const FockBasisSpec& basis, int n);

/// Second-order correction sum_{m != n} |<m|W|n>|^2 / (E0_n - E0_m).
/// The band structure of W makes every |m - n| > 4 contribution exactly
/// zero, so the sum needs n + 4 inside the trusted block.
double second_order_numeric(const OperatorMatrix& w, const ModelParams& p,
                            const FockBasisSpec& basis, int n);

/// Candidate shape of the published second-order closed form,
///   E2 = -(1/hbar omega) [ (eta + s1*m1*beta)^2 (3n^2+3n+2)
///                        + (3 eta + s2*m1*beta)^2 * P(n)
///                        + (sigma/d)^2 (4n^3+6n^2+14n+6) ]
/// with P(n) = 3n^3+3n+1 when poly_cubic, else 3n^2+3n+1.
struct E2Form {
  int sign1;
  int sign2;
  bool poly_cubic;
  double quartic_divisor;
};

/// The closed forms exactly as published for each route.
E2Form printed_E2_form(WhichPerturbation which);

double closed_form_E2_from(const E2Form& form, const ModelParams& p, int n);

/// Published first-order closed form:
///   E1_H = sigma   * ((2n^2+2n-1)/4 + 1/2)
///   E1_K = sigma/3 * ((2n^2+2n-1)/4 + 1/2)
double closed_form_E1(WhichPerturbation which, const ModelParams& p, int n);

/// Published second-order closed form (literal transcription).
double closed_form_E2(WhichPerturbation which, const ModelParams& p, int n);

/// Assembles e0 + e1 + e2 from the requested route. The numeric route
/// uses the supplied perturbation matrix when given, otherwise builds it.
PerturbativeEnergy total_energy(WhichPerturbation which, const ModelParams& p,
                                const FockBasisSpec& basis, int n, EnergySource source,
                                const OperatorMatrix* prebuilt_w = nullptr);

/// E_H,n - E_K,n via the requested route.
double delta_E(const ModelParams& p, const FockBasisSpec& basis, int n,
               EnergySource source);

/// The published single closed form for the level difference,
///   (2 sigma/3)((2n^2+2n-1)/4 + 1/2) + (4 m1 eta beta/hbar omega)(6n^2+6n+1)
///   - (sigma^2/18 hbar omega)(4n^3+6n^2+14n+6)
double delta_E_closed_form(const ModelParams& p, int n);

}  // namespace pdmosc

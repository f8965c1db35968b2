#pragma once

#include <span>
#include <string>
#include <vector>

#include "pdmosc/fock.hpp"
#include "pdmosc/model.hpp"

namespace pdmosc {

/// Which quantization route a perturbation operator belongs to:
/// the Hamiltonian route built on (x, p) or the constant-of-motion
/// route built on (x, v).
enum class WhichPerturbation { HamiltonianP, ConstantOfMotionV };

std::string to_string(WhichPerturbation w);

/// Convention for the cubic-term coefficient of the velocity-route
/// perturbation. The classical expansion fixes it as m1*omega^2/3
/// (`unscaled`); the alternate convention divides by m0
/// (`mass_scaled`, CLI value "eq26"). The two coincide in natural units.
enum class WKCubicCoefficient { unscaled, mass_scaled };

/// Weyl-ordered operator for the classical monomial x p^2:
///   x p^2  ->  X P^2 - i*hbar_eff*P
/// hbar_eff is the commutator scale of the pair: [X, P] = i*hbar_eff*I.
/// Use hbar for (x, p) and hbar/m0 for (x, v).
OperatorMatrix weyl_xp2(const OperatorMatrix& x, const OperatorMatrix& p,
                        double hbar_eff);

/// Weyl-ordered operator for x^2 p^2:
///   x^2 p^2  ->  X^2 P^2 - 2i*hbar_eff*X P - (hbar_eff^2/2) I
OperatorMatrix weyl_x2p2(const OperatorMatrix& x, const OperatorMatrix& p,
                         double hbar_eff);

/// Independent ordering oracle: the average of the factor products over
/// all distinct permutations of the multiset of factors. Reduces to the
/// compact weyl_* forms on the trusted block.
OperatorMatrix symmetrization_oracle(std::span<const OperatorMatrix> factors);

/// Hermitian perturbation of the Hamiltonian route,
///   W_H = -(m1/m0^2) weyl(x p^2) + (3 m1^2/2 m0^3) weyl(x^2 p^2)
///         + (m1 omega^2/3) x^3
OperatorMatrix build_W_H(const ModelParams& p, int dim);

/// Hermitian perturbation of the constant-of-motion route,
///   W_K = m1 weyl(x v^2) + (m1^2/2 m0) weyl(x^2 v^2) + cubic term,
/// with every commutator scale hbar replaced by hbar/m0.
OperatorMatrix build_W_K(const ModelParams& p, int dim,
                         WKCubicCoefficient cubic = WKCubicCoefficient::unscaled);

// Variants accepting prebuilt basis operators (same dim), used by sweeps
// that rebuild the perturbation for many values of m1.
OperatorMatrix build_W_H_from(const ModelParams& p, const OperatorMatrix& x,
                              const OperatorMatrix& pm);
OperatorMatrix build_W_K_from(const ModelParams& p, const OperatorMatrix& x,
                              const OperatorMatrix& v,
                              WKCubicCoefficient cubic = WKCubicCoefficient::unscaled);

/// Transcription mode for the reference ladder-series expansions.
/// `literal` keeps the series exactly as published, including any
/// defects; `tail_corrected` repairs the one cubic tail term whose
/// literal form breaks hermiticity (a^3 in place of (a^+)^3).
enum class LadderTranscription { literal, tail_corrected };

/// The published ladder-operator expansion of W_H or W_K, transcribed
/// term by term. Diagnostic only: never used as a source for spectra.
OperatorMatrix build_W_ladder_printed(const ModelParams& p, int dim,
                                      WhichPerturbation which,
                                      LadderTranscription mode = LadderTranscription::literal);

struct DiscrepancyEntry {
  std::string location;
  std::string printed_form;
  std::string rebuilt_form;
  double max_deviation;
};

struct DiscrepancyReport {
  std::vector<DiscrepancyEntry> entries;
};

/// Compares the literal ladder-series transcriptions against the compact
/// Weyl builds on the trusted block and records every deviation found,
/// including hermiticity defects and the best-fit quartic coefficient for
/// the velocity route (whose published prefactor is dimensionally
/// inconsistent).
DiscrepancyReport compare_printed_ladder_forms(const ModelParams& p,
                                               const FockBasisSpec& basis);

}  // namespace pdmosc

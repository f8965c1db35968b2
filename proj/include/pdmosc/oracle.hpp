#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdmosc/fock.hpp"
#include "pdmosc/model.hpp"
#include "pdmosc/perturb.hpp"
#include "pdmosc/quantize.hpp"

namespace pdmosc {

/// Full spectrum of a Hermitian operator with the per-pair residual
/// ||M v - lambda v||_2 recorded. Eigenvalues ascend; eigenvector k is the
/// k-th column of `vectors` when requested.
struct EigenSpectrum {
  std::vector<double> eigenvalues;
  std::optional<OperatorMatrix> vectors;
  std::vector<double> residuals;
  double max_residual = 0.0;
};

/// Diagonalizes (M + M^dagger)/2 after checking the hermiticity defect
/// (throws NotHermitianError above 1e-10). Any method meeting the residual
/// contract ||M v - lambda v|| <= 1e-9 ||M|| qualifies; this one is cyclic
/// Jacobi, which lands near machine precision at these sizes.
EigenSpectrum eigen_spectrum(const OperatorMatrix& m, bool want_vectors = false);

struct ConvergedLevel {
  double energy;
  double estimate;
  bool converged;
  double residual;
};

/// Eigenvalue of level n of H0 + W at the largest truncation in `dims`,
/// with convergence estimate |E(N_max) - E(N_prev)|.
ConvergedLevel converged_level(const ModelParams& p, WhichPerturbation which, int n,
                               std::span<const int> dims, int guard = 8);

/// Throws NotConvergedError (carrying the estimate) unless `level` converged.
double require_converged(const ConvergedLevel& level);

struct PtOrderFit {
  double e1_fit;
  double e2_fit;
  double fit_residual;
};

/// Independent extraction of the perturbation orders: diagonalizes
/// H0 + lambda W over the grid and fits E(lambda) - e0 =
/// e1*lambda + e2*lambda^2 + c3*lambda^3 (cubic term as nuisance).
/// The grid must be small enough that quartic terms are negligible;
/// FitError reports a violated tolerance.
PtOrderFit extract_pt_orders(const ModelParams& p, WhichPerturbation which, int n,
                             std::span<const double> lambda_grid,
                             const FockBasisSpec& basis, double fit_tol = 1e-7);

/// Same fit for an arbitrary Hermitian perturbation matrix.
PtOrderFit extract_pt_orders_for(const OperatorMatrix& w, const ModelParams& p, int n,
                                 std::span<const double> lambda_grid,
                                 const FockBasisSpec& basis, double fit_tol = 1e-7);

/// Log-log slope of |E_pt - E_exact| under m1 -> lambda*m1, fitted over
/// the given lambda grid. Perturbation theory of this order gives >= 3.
double scaling_slope(const ModelParams& p, WhichPerturbation which, int n,
                     std::span<const double> lambdas, const FockBasisSpec& basis);

struct SpectrumReport {
  ModelParams params;
  WhichPerturbation which;
  struct Level {
    int n;
    double e_numeric_pt;
    double e_closed_form_pt;
    double e_exact_diag;
    double residual_norm;
    bool converged;

    bool operator==(const Level&) const = default;
  };
  std::vector<Level> levels;
  std::vector<int> truncation_dims;

  bool operator==(const SpectrumReport&) const = default;
};

/// One adjudicated slot of the published closed forms: what was published,
/// what the numerics require, and the deviation of each.
struct MisprintVerdict {
  std::string which;
  std::string slot;
  std::string printed;
  std::string adjudicated;
  std::string verdict;  // "matches" | "misprint" | "indeterminate"
  double printed_deviation;
  double adjudicated_deviation;
};

struct AdjudicationReport {
  SpectrumReport h_report;
  SpectrumReport k_report;
  E2Form corrected_h;
  E2Form corrected_k;
  std::vector<MisprintVerdict> verdicts;
  DiscrepancyReport ladder_diagnostics;
  /// Deviation of the published difference formula from the difference of
  /// the published per-route forms, and from the adjudicated forms.
  double delta_formula_vs_printed_difference;
  double delta_formula_vs_corrected_difference;
};

/// The adjudication driver: numeric perturbation theory, published closed
/// forms and exact diagonalization side by side for n <= n_max and both
/// routes, with a verdict per disputed coefficient of the closed forms.
/// Deterministic: identical inputs produce identical reports.
AdjudicationReport adjudicate(const ModelParams& p, const FockBasisSpec& basis,
                              int n_max);

/// Largest m1 (in the given unit system, bisected to 3 significant digits)
/// such that |E1 + E2| <= 0.01 * E0_n for all n <= n_max on both routes.
double max_m1_for_tolerance(const ModelParams& p, int n_max);

}  // namespace pdmosc

#include "pdmosc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pdmosc {

namespace {

// Cyclic Jacobi on a real symmetric matrix (row-major). Rotates until the
// off-diagonal Frobenius mass is at machine level. V accumulates the
// eigenvectors as columns.
void jacobi_real_symmetric(std::vector<double>& a, int n, std::vector<double>& evals,
                           std::vector<double>& v) {
  v.assign(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[std::size_t(i) * n + i] = 1.0;

  auto at = [&](int i, int j) -> double& { return a[std::size_t(i) * n + j]; };
  auto vt = [&](int i, int j) -> double& { return v[std::size_t(i) * n + j]; };

  double fro = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) fro += a[k] * a[k];
  fro = std::sqrt(fro);
  const double tol = 1e-15 * std::max(fro, 1.0);

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
    if (std::sqrt(off) <= tol) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = at(p, p), aqq = at(q, q);
        const double theta = 0.5 * (aqq - app) / apq;
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = vt(k, p), vkq = vt(k, q);
          vt(k, p) = c * vkp - s * vkq;
          vt(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  evals.resize(n);
  for (int i = 0; i < n; ++i) evals[i] = at(i, i);
}

struct SortedEig {
  std::vector<double> evals;
  std::vector<int> order;  // column permutation into ascending order
};

SortedEig sort_eigs(const std::vector<double>& evals) {
  SortedEig s;
  s.order.resize(evals.size());
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](int i, int j) { return evals[i] < evals[j]; });
  s.evals.resize(evals.size());
  for (std::size_t i = 0; i < evals.size(); ++i) s.evals[i] = evals[s.order[i]];
  return s;
}

}  // namespace

EigenSpectrum eigen_spectrum(const OperatorMatrix& m, bool want_vectors) {
  const int n = m.dim();
  const double defect = hermiticity_defect(m);
  if (defect > 1e-10)
    throw NotHermitianError("hermiticity defect " + std::to_string(defect) +
                                " exceeds 1e-10",
                            defect);

  // Symmetrize, then diagonalize. Every operator in this pipeline is real
  // in the number basis; a genuinely complex Hermitian input goes through
  // the standard 2N real embedding [[Re, -Im], [Im, Re]], whose spectrum
  // is the doubled spectrum of M.
  OperatorMatrix h = scale(0.5, add(m, adjoint(m)));
  const double imag_mass = max_imag_abs(h);
  const double scale_ref = std::max(1.0, max_abs(h));

  EigenSpectrum out;
  std::vector<double> evals, v;

  if (imag_mass <= 1e-13 * scale_ref) {
    std::vector<double> a(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[std::size_t(i) * n + j] = h(i, j).real();
    jacobi_real_symmetric(a, n, evals, v);
    const auto s = sort_eigs(evals);
    out.eigenvalues = s.evals;
    OperatorMatrix vec(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) vec(i, k) = v[std::size_t(i) * n + s.order[k]];
    out.residuals.resize(n);
    for (int k = 0; k < n; ++k) {
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        std::complex<double> acc = -out.eigenvalues[k] * vec(i, k);
        for (int j = 0; j < n; ++j) acc += m(i, j) * vec(j, k);
        r2 += std::norm(acc);
      }
      out.residuals[k] = std::sqrt(r2);
    }
    if (want_vectors) out.vectors = std::move(vec);
  } else {
    const int n2 = 2 * n;
    std::vector<double> a(std::size_t(n2) * n2, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double re = h(i, j).real(), im = h(i, j).imag();
        a[std::size_t(i) * n2 + j] = re;
        a[std::size_t(i) * n2 + (j + n)] = -im;
        a[std::size_t(i + n) * n2 + j] = im;
        a[std::size_t(i + n) * n2 + (j + n)] = re;
      }
    jacobi_real_symmetric(a, n2, evals, v);
    const auto s = sort_eigs(evals);
    out.eigenvalues.resize(n);
    OperatorMatrix vec(n);
    out.residuals.resize(n);
    for (int k = 0; k < n; ++k) {
      const int col = s.order[2 * k];
      out.eigenvalues[k] = s.evals[2 * k];
      for (int i = 0; i < n; ++i)
        vec(i, k) = std::complex<double>{v[std::size_t(i) * n2 + col],
                                         v[std::size_t(i + n) * n2 + col]};
      double norm2 = 0.0;
      for (int i = 0; i < n; ++i) norm2 += std::norm(vec(i, k));
      const double inv = 1.0 / std::sqrt(norm2);
      for (int i = 0; i < n; ++i) vec(i, k) *= inv;
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        std::complex<double> acc = -out.eigenvalues[k] * vec(i, k);
        for (int j = 0; j < n; ++j) acc += m(i, j) * vec(j, k);
        r2 += std::norm(acc);
      }
      out.residuals[k] = std::sqrt(r2);
    }
    if (want_vectors) out.vectors = std::move(vec);
  }

  out.max_residual =
      out.residuals.empty() ? 0.0 : *std::max_element(out.residuals.begin(), out.residuals.end());

  // Residual contract: ||M v - lambda v|| <= 1e-9 ||M||.
  double fro = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fro += std::norm(m(i, j));
  fro = std::sqrt(fro);
  if (out.max_residual > 1e-9 * std::max(fro, 1.0))
    throw NotConvergedError("eigensolver residual contract violated", out.max_residual);

  return out;
}

namespace {
// The perturbation built from truncated operator products carries a
// non-Hermitian artifact in its top guard rows; the Hermitian part agrees
// with the exact operator entrywise on the trusted block and keeps low
// eigenvalues converging.
OperatorMatrix perturbed_operator(const ModelParams& p, WhichPerturbation which, int dim) {
  const auto w = which == WhichPerturbation::HamiltonianP ? build_W_H(p, dim)
                                                          : build_W_K(p, dim);
  return add(h0_matrix(p, dim), hermitian_part(w));
}
}  // namespace

ConvergedLevel converged_level(const ModelParams& p, WhichPerturbation which, int n,
                               std::span<const int> dims, int guard) {
  if (dims.size() < 2) throw SizeError("need at least two truncation dimensions");
  for (std::size_t i = 0; i + 1 < dims.size(); ++i)
    if (dims[i] >= dims[i + 1]) throw SizeError("truncation dimensions must increase");
  if (dims[0] < n + guard + 1)
    throw SizeError("smallest truncation dimension must cover level " + std::to_string(n));

  double prev = 0.0, cur = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto spec = eigen_spectrum(perturbed_operator(p, which, dims[i]));
    prev = cur;
    cur = spec.eigenvalues[n];
    residual = spec.residuals[n];
  }
  const double estimate = std::abs(cur - prev);
  return ConvergedLevel{cur, estimate, estimate <= 1e-10, residual};
}

double require_converged(const ConvergedLevel& level) {
  if (!level.converged)
    throw NotConvergedError("truncation estimate " + std::to_string(level.estimate) +
                                " exceeds 1e-10",
                            level.estimate);
  return level.energy;
}

PtOrderFit extract_pt_orders(const ModelParams& p, WhichPerturbation which, int n,
                             std::span<const double> lambda_grid,
                             const FockBasisSpec& basis, double fit_tol) {
  const auto w = which == WhichPerturbation::HamiltonianP ? build_W_H(p, basis.dim)
                                                          : build_W_K(p, basis.dim);
  return extract_pt_orders_for(w, p, n, lambda_grid, basis, fit_tol);
}

PtOrderFit extract_pt_orders_for(const OperatorMatrix& w_in, const ModelParams& p, int n,
                                 std::span<const double> lambda_grid,
                                 const FockBasisSpec& basis, double fit_tol) {
  if (lambda_grid.size() < 5)
    throw SizeError("lambda grid needs at least 5 values");
  for (double l : lambda_grid)
    if (!(l > 0.0 && l <= 1.0)) throw DomainError("lambda values must lie in (0, 1]");
  if (n > basis.trusted_max())
    throw TruncationError("level outside trusted block");
  if (w_in.dim() != basis.dim)
    throw SizeError("operator dimension does not match basis spec");

  const auto h0 = h0_matrix(p, basis.dim);
  const auto w = hermitian_part(w_in);
  const double base = e0(p, n);

  // Least squares for y = e1*l + e2*l^2 + c3*l^3 via 3x3 normal equations.
  double g[3][3] = {};
  double rhs[3] = {};
  std::vector<double> ys(lambda_grid.size());
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double l = lambda_grid[i];
    const auto spec = eigen_spectrum(add(h0, scale(l, w)));
    ys[i] = spec.eigenvalues[n] - base;
    const double phi[3] = {l, l * l, l * l * l};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += phi[r] * ys[i];
      for (int c = 0; c < 3; ++c) g[r][c] += phi[r] * phi[c];
    }
  }

  // Gaussian elimination with partial pivoting.
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[r][c] = g[r][c];
    m[r][3] = rhs[r];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    if (m[col][col] == 0.0) throw FitError("singular normal equations", 0.0);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  const double coef[3] = {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};

  double residual = 0.0;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double l = lambda_grid[i];
    const double fit = coef[0] * l + coef[1] * l * l + coef[2] * l * l * l;
    residual = std::max(residual, std::abs(fit - ys[i]));
  }
  if (residual > fit_tol)
    throw FitError("fit residual " + std::to_string(residual) +
                       " exceeds tolerance (grid too coarse for the cubic model)",
                   residual);
  return PtOrderFit{coef[0], coef[1], residual};
}

double scaling_slope(const ModelParams& p, WhichPerturbation which, int n,
                     std::span<const double> lambdas, const FockBasisSpec& basis) {
  std::vector<double> logl, logd;
  for (double l : lambdas) {
    ModelParams q = p;
    q.m1 = p.m1 * l;
    const auto pt = total_energy(which, q, basis, n, EnergySource::numeric);
    const auto spec = eigen_spectrum(perturbed_operator(q, which, basis.dim));
    const double diff = std::abs(pt.total - spec.eigenvalues[n]);
    if (diff <= 0.0) continue;
    logl.push_back(std::log(l));
    logd.push_back(std::log(diff));
  }
  if (logl.size() < 3) throw FitError("not enough usable points for slope fit", 0.0);
  const double n_pts = double(logl.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < logl.size(); ++i) {
    sx += logl[i];
    sy += logd[i];
    sxx += logl[i] * logl[i];
    sxy += logl[i] * logd[i];
  }
  return (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
}

namespace {

std::string sign_square_text(int sign, const char* base, const char* shift) {
  std::string s = "(";
  s += base;
  s += sign > 0 ? " + " : " - ";
  s += shift;
  s += ")^2";
  return s;
}

double form_deviation(const E2Form& f, const ModelParams& p,
                      const std::vector<double>& e2_numeric) {
  double dev = 0.0;
  for (std::size_t n = 0; n < e2_numeric.size(); ++n)
    dev = std::max(dev, std::abs(closed_form_E2_from(f, p, int(n)) - e2_numeric[n]));
  return dev;
}

}  // namespace

AdjudicationReport adjudicate(const ModelParams& p, const FockBasisSpec& basis, int n_max) {
  if (n_max + 4 > basis.trusted_max())
    throw TruncationError("n_max exceeds the trusted block of the basis");

  AdjudicationReport rep{};
  const std::array<int, 3> dims = {basis.dim, basis.dim + 16, basis.dim + 32};

  std::array<std::vector<double>, 2> e2_numeric;
  const std::array<WhichPerturbation, 2> whichs = {WhichPerturbation::HamiltonianP,
                                                   WhichPerturbation::ConstantOfMotionV};
  const std::array<OperatorMatrix, 2> built = {build_W_H(p, basis.dim),
                                               build_W_K(p, basis.dim)};

  for (int wi = 0; wi < 2; ++wi) {
    const auto which = whichs[wi];
    SpectrumReport& sr = wi == 0 ? rep.h_report : rep.k_report;
    sr.params = p;
    sr.which = which;
    sr.truncation_dims.assign(dims.begin(), dims.end());

    const auto& w = built[wi];

    // One diagonalization per truncation dimension serves every level.
    std::vector<EigenSpectrum> specs;
    for (int d : dims) specs.push_back(eigen_spectrum(perturbed_operator(p, which, d)));
    const auto& last = specs.back();
    const auto& prev = specs[specs.size() - 2];

    // Nondegeneracy of the unperturbed problem is assumed by the formulas;
    // assert it on the exact spectrum instead.
    for (int n = 0; n + 1 <= n_max; ++n)
      if (last.eigenvalues[n + 1] - last.eigenvalues[n] < 0.9 * p.hbar * p.omega)
        throw DomainError("spectrum gap below 0.9*hbar*omega; perturbative regime violated");

    for (int n = 0; n <= n_max; ++n) {
      const auto pt = total_energy(which, p, basis, n, EnergySource::numeric, &w);
      const auto cf = total_energy(which, p, basis, n, EnergySource::closed_form);
      const double estimate = std::abs(last.eigenvalues[n] - prev.eigenvalues[n]);
      sr.levels.push_back({n, pt.total, cf.total, last.eigenvalues[n],
                           last.residuals[n], estimate <= 1e-10});
      e2_numeric[wi].push_back(pt.e2);
    }
  }

  // Enumerate every candidate closed-form shape and keep the best match per
  // route. An axis whose toggle does not change the deviation is
  // numerically indeterminate at these parameters.
  const double scale_ref = std::max({1.0, std::abs(e2_numeric[0].back()),
                                     std::abs(e2_numeric[1].back())});
  const double tie_tol = 1e-13 * scale_ref;

  std::array<E2Form, 2> winners{};
  std::array<double, 2> winner_dev{};
  for (int wi = 0; wi < 2; ++wi) {
    double best = std::numeric_limits<double>::infinity();
    E2Form best_form{};
    for (int s1 : {-1, +1})
      for (int s2 : {-1, +1})
        for (bool cubic : {false, true})
          for (double div : {4.0, 12.0}) {
            const E2Form f{s1, s2, cubic, div};
            const double dev = form_deviation(f, p, e2_numeric[wi]);
            if (dev < best) {
              best = dev;
              best_form = f;
            }
          }
    winners[wi] = best_form;
    winner_dev[wi] = best;
  }

  // Per-axis verdicts against the published forms.
  for (int wi = 0; wi < 2; ++wi) {
    const auto which = whichs[wi];
    const E2Form printed = printed_E2_form(which);
    E2Form& adj = wi == 0 ? rep.corrected_h : rep.corrected_k;
    adj = winners[wi];
    const std::string wname = to_string(which);
    const double printed_dev = form_deviation(printed, p, e2_numeric[wi]);

    // First-order form: no candidates in dispute, just report the deviation.
    {
      double dev = 0.0;
      for (int n = 0; n <= n_max; ++n)
        dev = std::max(dev, std::abs(closed_form_E1(which, p, n) -
                                     first_order_numeric(built[wi], basis, n)));
      rep.verdicts.push_back({wname, "E1 closed form", "sigma-scaled parabola",
                              "same", dev <= 1e-10 ? "matches" : "misprint", dev, dev});
    }

    auto axis_verdict = [&](const std::string& slot, const std::string& printed_txt,
                            const std::string& adjudicated_txt, E2Form toggled) {
      const double toggled_dev = form_deviation(toggled, p, e2_numeric[wi]);
      std::string verdict;
      if (std::abs(toggled_dev - winner_dev[wi]) <= tie_tol)
        verdict = "indeterminate";
      else if (printed_txt == adjudicated_txt)
        verdict = "matches";
      else
        verdict = "misprint";
      rep.verdicts.push_back({wname, slot, printed_txt, adjudicated_txt, verdict,
                              printed_dev, winner_dev[wi]});
    };

    {
      E2Form t = winners[wi];
      t.sign1 = -t.sign1;
      axis_verdict("E2 first-square sign",
                   sign_square_text(printed.sign1, "eta", "m1*beta"),
                   sign_square_text(winners[wi].sign1, "eta", "m1*beta"), t);
    }
    {
      E2Form t = winners[wi];
      t.sign2 = -t.sign2;
      axis_verdict("E2 second-square sign",
                   sign_square_text(printed.sign2, "3*eta", "m1*beta"),
                   sign_square_text(winners[wi].sign2, "3*eta", "m1*beta"), t);
    }
    {
      E2Form t = winners[wi];
      t.poly_cubic = !t.poly_cubic;
      axis_verdict("E2 second-square polynomial",
                   printed.poly_cubic ? "3n^3+3n+1" : "3n^2+3n+1",
                   winners[wi].poly_cubic ? "3n^3+3n+1" : "3n^2+3n+1", t);
    }
    {
      E2Form t = winners[wi];
      t.quartic_divisor = t.quartic_divisor == 4.0 ? 12.0 : 4.0;
      axis_verdict("E2 quartic divisor",
                   printed.quartic_divisor == 4.0 ? "sigma/4" : "sigma/12",
                   winners[wi].quartic_divisor == 4.0 ? "sigma/4" : "sigma/12", t);
    }
  }

  // Where an axis is indeterminate on one route, adopt the other route's
  // adjudicated value so the corrected forms stay data-driven.
  for (auto& v : rep.verdicts) {
    if (v.verdict != "indeterminate") continue;
    if (v.slot == "E2 second-square polynomial") {
      if (v.which == "H") rep.corrected_h.poly_cubic = rep.corrected_k.poly_cubic;
      if (v.which == "K") rep.corrected_k.poly_cubic = rep.corrected_h.poly_cubic;
    }
  }

  // Consistency of the published difference formula.
  double dev_printed = 0.0, dev_corrected = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double d30 = delta_E_closed_form(p, n);
    const double printed_diff =
        (closed_form_E1(WhichPerturbation::HamiltonianP, p, n) +
         closed_form_E2(WhichPerturbation::HamiltonianP, p, n)) -
        (closed_form_E1(WhichPerturbation::ConstantOfMotionV, p, n) +
         closed_form_E2(WhichPerturbation::ConstantOfMotionV, p, n));
    const double corrected_diff =
        (closed_form_E1(WhichPerturbation::HamiltonianP, p, n) +
         closed_form_E2_from(rep.corrected_h, p, n)) -
        (closed_form_E1(WhichPerturbation::ConstantOfMotionV, p, n) +
         closed_form_E2_from(rep.corrected_k, p, n));
    dev_printed = std::max(dev_printed, std::abs(d30 - printed_diff));
    dev_corrected = std::max(dev_corrected, std::abs(d30 - corrected_diff));
  }
  rep.delta_formula_vs_printed_difference = dev_printed;
  rep.delta_formula_vs_corrected_difference = dev_corrected;

  rep.ladder_diagnostics = compare_printed_ladder_forms(p, basis);
  return rep;
}

double max_m1_for_tolerance(const ModelParams& p, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const int dim = std::max(64, n_max + 13);
  const FockBasisSpec basis(dim, 8);
  const auto x = position_op(p, dim);
  const auto pm = momentum_op(p, dim);
  const auto v = velocity_op(p, dim);

  auto satisfies = [&](double m1) {
    ModelParams q = p;
    q.m1 = m1;
    const auto wh = build_W_H_from(q, x, pm);
    const auto wk = build_W_K_from(q, x, v);
    for (int n = 0; n <= n_max; ++n) {
      const double bound = 0.01 * e0(q, n);
      const double h12 = first_order_numeric(wh, basis, n) +
                         second_order_numeric(wh, q, basis, n);
      const double k12 = first_order_numeric(wk, basis, n) +
                         second_order_numeric(wk, q, basis, n);
      if (std::abs(h12) > bound || std::abs(k12) > bound) return false;
    }
    return true;
  };

  // Scale-free bracket: grow until violated, then bisect to 3 significant
  // digits and return the verified-passing lower edge.
  double lo = 0.0, hi = oscillator_length(p) > 0.0
                            ? 0.01 * p.m0 / oscillator_length(p)
                            : 0.01;
  while (satisfies(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e30) throw DomainError("tolerance rule never violated");
  }
  for (int i = 0; i < 60 && (hi - lo) > 1e-3 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (satisfies(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0) || !satisfies(lo) || satisfies(1.1 * lo))
    throw DomainError("bisection postcondition failed");
  return lo;
}

}  // namespace pdmosc

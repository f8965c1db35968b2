#include "pdmosc/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>

namespace pdmosc {

std::string to_string(WhichPerturbation w) {
  return w == WhichPerturbation::HamiltonianP ? "H" : "K";
}

OperatorMatrix weyl_xp2(const OperatorMatrix& x, const OperatorMatrix& p,
                        double hbar_eff) {
  const auto p2 = mul(p, p);
  return sub(mul(x, p2), scale(std::complex<double>{0.0, hbar_eff}, p));
}

OperatorMatrix weyl_x2p2(const OperatorMatrix& x, const OperatorMatrix& p,
                         double hbar_eff) {
  const auto x2 = mul(x, x);
  const auto p2 = mul(p, p);
  auto w = mul(x2, p2);
  w = sub(w, scale(std::complex<double>{0.0, 2.0 * hbar_eff}, mul(x, p)));
  w = sub(w, scale(0.5 * hbar_eff * hbar_eff, OperatorMatrix::identity(x.dim())));
  return w;
}

OperatorMatrix symmetrization_oracle(std::span<const OperatorMatrix> factors) {
  if (factors.empty()) throw SizeError("symmetrization needs at least one factor");
  const int n = factors[0].dim();
  for (const auto& f : factors)
    if (f.dim() != n) throw SizeError("symmetrization factors must share a dimension");

  // Key each factor by the first entrywise-equal factor so that
  // next_permutation enumerates distinct orderings of the multiset once.
  std::vector<int> keys(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    keys[i] = int(i);
    for (std::size_t j = 0; j < i; ++j)
      if (factors[j] == factors[i]) {
        keys[i] = int(j);
        break;
      }
  }
  std::sort(keys.begin(), keys.end());

  OperatorMatrix sum(n);
  long count = 0;
  do {
    OperatorMatrix prod = factors[keys[0]];
    for (std::size_t i = 1; i < keys.size(); ++i) prod = mul(prod, factors[keys[i]]);
    sum = add(sum, prod);
    ++count;
  } while (std::next_permutation(keys.begin(), keys.end()));
  return scale(1.0 / double(count), sum);
}

OperatorMatrix build_W_H_from(const ModelParams& p, const OperatorMatrix& x,
                              const OperatorMatrix& pm) {
  const double m0 = p.m0, m1 = p.m1;
  auto w = scale(-m1 / (m0 * m0), weyl_xp2(x, pm, p.hbar));
  w = add(w, scale(3.0 * m1 * m1 / (2.0 * m0 * m0 * m0), weyl_x2p2(x, pm, p.hbar)));
  w = add(w, scale(m1 * p.omega * p.omega / 3.0, mul(x, mul(x, x))));
  return w;
}

OperatorMatrix build_W_H(const ModelParams& p, int dim) {
  return build_W_H_from(p, position_op(p, dim), momentum_op(p, dim));
}

OperatorMatrix build_W_K_from(const ModelParams& p, const OperatorMatrix& x,
                              const OperatorMatrix& v, WKCubicCoefficient cubic) {
  const double m0 = p.m0, m1 = p.m1;
  const double hbar_eff = p.hbar / m0;
  auto w = scale(m1, weyl_xp2(x, v, hbar_eff));
  w = add(w, scale(m1 * m1 / (2.0 * m0), weyl_x2p2(x, v, hbar_eff)));
  const double ccubic = cubic == WKCubicCoefficient::unscaled
                            ? m1 * p.omega * p.omega / 3.0
                            : m1 * p.omega * p.omega / (3.0 * m0);
  w = add(w, scale(ccubic, mul(x, mul(x, x))));
  return w;
}

OperatorMatrix build_W_K(const ModelParams& p, int dim, WKCubicCoefficient cubic) {
  return build_W_K_from(p, position_op(p, dim), velocity_op(p, dim), cubic);
}

namespace {

// One term of a ladder-series transcription: a prefactor times a sum of
// signed words over {a, a^+} plus an optional constant.
struct LadderTerm {
  double prefactor;
  std::vector<std::pair<int, const char*>> words;  // (sign, word), 'a' = descent, 'A' = ascent
  double constant = 0.0;                           // times identity, inside the parenthesis
};

OperatorMatrix eval_ladder_terms(std::span<const LadderTerm> terms, int dim) {
  const auto a = ladder_lower(dim);
  const auto ad = ladder_raise(dim);
  OperatorMatrix w(dim);
  for (const auto& t : terms) {
    OperatorMatrix acc(dim);
    for (const auto& [sign, word] : t.words) {
      OperatorMatrix prod = OperatorMatrix::identity(dim);
      for (const char* c = word; *c; ++c) prod = mul(prod, *c == 'a' ? a : ad);
      acc = add(acc, scale(double(sign), prod));
    }
    if (t.constant != 0.0)
      acc = add(acc, scale(t.constant, OperatorMatrix::identity(dim)));
    w = add(w, scale(t.prefactor, acc));
  }
  return w;
}

std::vector<LadderTerm> printed_terms_H(const ModelParams& p, LadderTranscription mode) {
  const double m0 = p.m0, m1 = p.m1, w = p.omega, hb = p.hbar;
  const double c1 = -(m1 * hb * w / (2.0 * m0)) * std::sqrt(hb / (2.0 * m0 * w));
  const double c2 = -(m1 * hb / (m0 * m0)) * std::sqrt(m0 * hb * w / 2.0);
  const double c3 = -3.0 * m1 * m1 * hb * hb / (8.0 * m0 * m0 * m0);
  const double c4 = -3.0 * m1 * m1 * hb * hb / (2.0 * m0 * m0 * m0);
  const double c5 = (m1 * w * w / 3.0) * std::pow(hb / (2.0 * m0 * w), 1.5);

  // The published cubic parenthesis ends in a second "a^3"; hermiticity
  // demands (a^+)^3, which tail_corrected restores.
  const char* tail = mode == LadderTranscription::literal ? "aaa" : "AAA";

  return {
      {c1,
       {{+1, "aaa"}, {-1, "aaA"}, {-1, "aAa"}, {+1, "aAA"},
        {+1, "Aaa"}, {-1, "AaA"}, {-1, "AAa"}, {+1, tail}}},
      {c2, {{+1, "a"}, {-1, "A"}}},
      {c3,
       {{+1, "aaaa"}, {-1, "aaAa"}, {-1, "aaAA"}, {+1, "Aaaa"},
        {-1, "AaAa"}, {-1, "AaaA"}, {+1, "AaAA"}, {+1, "aAaa"},
        {-1, "aaaA"}, {-1, "AAaA"}, {-1, "aaAa"}, {-1, "aAaA"},
        {+1, "aAAA"}, {+1, "AAaa"}, {-1, "AAAa"}, {+1, "AAAA"}}},
      {c4, {{+1, "aa"}, {-1, "aA"}, {+1, "Aa"}, {-1, "AA"}}, 0.5},
      {c5,
       {{+1, "aaa"}, {+1, "aAa"}, {+1, "aaA"}, {+1, "aAA"},
        {+1, "Aaa"}, {+1, "AAa"}, {+1, "AaA"}, {+1, "AAA"}}},
  };
}

std::vector<LadderTerm> printed_terms_K(const ModelParams& p) {
  const double m0 = p.m0, m1 = p.m1, w = p.omega, hb = p.hbar;
  const auto dc = derive_constants(p);
  const double c1 = -(hb / 2.0) * (m1 / m0) * std::sqrt(hb * w / (2.0 * m0));
  const double c2 = -2.0 * m1 * dc.beta;
  const double c3 = -dc.alpha / 12.0;  // dimensionally inconsistent as published
  const double c4 = -0.5 * m1 * m1 * hb * hb / (m0 * m0 * m0);
  const double c5 = (w * w * m1 / 3.0) * std::pow(hb / (2.0 * m0 * w), 1.5);

  return {
      {c1,
       {{+1, "aaa"}, {-1, "aaA"}, {-1, "aAa"}, {+1, "aAA"},
        {+1, "Aaa"}, {-1, "AaA"}, {-1, "AAa"}, {+1, "AAA"}}},
      {c2, {{+1, "a"}, {-1, "A"}}},
      {c3,
       {{+1, "aaaa"}, {-1, "aaAa"}, {-1, "aaAA"}, {+1, "Aaaa"},
        {-1, "AaAa"}, {-1, "AaaA"}, {+1, "AaAA"}, {+1, "aAaa"},
        {-1, "aAAa"}, {-1, "aaaA"}, {-1, "aAaA"}, {+1, "aAAA"},
        {+1, "AAaa"}, {-1, "AAAa"}, {-1, "AAaA"}, {+1, "AAAA"}}},
      {c4, {{+1, "aa"}, {-1, "aA"}, {-1, "Aa"}, {+1, "AA"}}, 0.5},
      {c5,
       {{+1, "aaa"}, {+1, "aAa"}, {+1, "aaA"}, {+1, "aAA"},
        {+1, "Aaa"}, {+1, "AAa"}, {+1, "AaA"}, {+1, "AAA"}}},
  };
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

OperatorMatrix build_W_ladder_printed(const ModelParams& p, int dim,
                                      WhichPerturbation which,
                                      LadderTranscription mode) {
  const auto terms = which == WhichPerturbation::HamiltonianP
                         ? printed_terms_H(p, mode)
                         : printed_terms_K(p);
  return eval_ladder_terms(terms, dim);
}

DiscrepancyReport compare_printed_ladder_forms(const ModelParams& p,
                                               const FockBasisSpec& basis) {
  DiscrepancyReport report;
  const int nt = basis.trusted_max();

  {
    const auto built = build_W_H(p, basis.dim);
    const auto lit = build_W_ladder_printed(p, basis.dim, WhichPerturbation::HamiltonianP);
    const auto fixed = build_W_ladder_printed(p, basis.dim, WhichPerturbation::HamiltonianP,
                                              LadderTranscription::tail_corrected);
    report.entries.push_back({"W_H ladder series, hermiticity",
                              "literal transcription",
                              "hermitian by construction",
                              hermiticity_defect_block(lit, nt)});
    report.entries.push_back({"W_H ladder series vs compact build",
                              "literal transcription", "compact Weyl form",
                              max_abs_diff_block(lit, built, nt)});
    report.entries.push_back({"W_H ladder series vs compact build",
                              "cubic-tail-corrected transcription",
                              "compact Weyl form",
                              max_abs_diff_block(fixed, built, nt)});
  }

  {
    const auto built = build_W_K(p, basis.dim);
    const auto lit = build_W_ladder_printed(p, basis.dim, WhichPerturbation::ConstantOfMotionV);
    report.entries.push_back({"W_K ladder series, hermiticity",
                              "literal transcription",
                              "hermitian by construction",
                              hermiticity_defect_block(lit, nt)});
    report.entries.push_back({"W_K ladder series vs compact build",
                              "literal transcription", "compact Weyl form",
                              max_abs_diff_block(lit, built, nt)});

    // The published quartic prefactor -alpha/12 is an inverse length, not an
    // energy. Fit the scalar that best reconciles the published quartic word
    // list with the quartic part of the compact build and report it next to
    // the dimensionally consistent value -sigma/12.
    const auto x = position_op(p, basis.dim);
    const auto v = velocity_op(p, basis.dim);
    const double he = p.hbar / p.m0;
    const auto quartic_true = scale(p.m1 * p.m1 / (2.0 * p.m0), weyl_x2p2(x, v, he));
    auto terms = printed_terms_K(p);
    const LadderTerm quartic_words{1.0, terms[2].words, 0.0};
    const auto words_matrix = eval_ladder_terms(std::span(&quartic_words, 1), basis.dim);
    // Least-squares scalar over the +-4 band of the trusted block; only the
    // quartic words populate that band, so the fit is insensitive to the
    // quadratic and constant pieces that live in other series terms.
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= nt; ++i)
      for (int j = 0; j <= nt; ++j) {
        if (std::abs(i - j) != 4) continue;
        num += (std::conj(words_matrix(i, j)) * quartic_true(i, j)).real();
        den += std::norm(words_matrix(i, j));
      }
    const double best_fit = den > 0.0 ? num / den : 0.0;
    const auto dc = derive_constants(p);
    report.entries.push_back({"W_K quartic prefactor",
                              "-alpha/12 = " + format_value(-dc.alpha / 12.0),
                              "best fit " + format_value(best_fit) +
                                  " (-sigma/12 = " + format_value(-dc.sigma / 12.0) + ")",
                              std::abs(best_fit - (-dc.alpha / 12.0))});
  }

  return report;
}

}  // namespace pdmosc

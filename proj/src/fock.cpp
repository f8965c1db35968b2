#include "pdmosc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdmosc {

namespace {
void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim())
    throw SizeError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
}
}  // namespace

OperatorMatrix::OperatorMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw SizeError("matrix dimension must be >= 1");
  a_.assign(std::size_t(dim) * dim, value_type{0.0, 0.0});
}

OperatorMatrix OperatorMatrix::identity(int dim) {
  OperatorMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

OperatorMatrix OperatorMatrix::diagonal(std::span<const double> entries) {
  OperatorMatrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[i];
  return m;
}

OperatorMatrix mul(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  const int n = a.dim();
  OperatorMatrix c(n);
  const auto* pa = a.data();
  const auto* pb = b.data();
  auto* pc = c.data();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const auto aik = pa[std::size_t(i) * n + k];
      if (aik == OperatorMatrix::value_type{0.0, 0.0}) continue;
      const auto* brow = pb + std::size_t(k) * n;
      auto* crow = pc + std::size_t(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  OperatorMatrix c = a;
  const int n = a.dim();
  for (std::size_t i = 0; i < std::size_t(n) * n; ++i) c.data()[i] += b.data()[i];
  return c;
}

OperatorMatrix sub(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  OperatorMatrix c = a;
  const int n = a.dim();
  for (std::size_t i = 0; i < std::size_t(n) * n; ++i) c.data()[i] -= b.data()[i];
  return c;
}

OperatorMatrix scale(std::complex<double> s, const OperatorMatrix& a) {
  OperatorMatrix c = a;
  const int n = a.dim();
  for (std::size_t i = 0; i < std::size_t(n) * n; ++i) c.data()[i] *= s;
  return c;
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
  const int n = a.dim();
  OperatorMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return sub(mul(a, b), mul(b, a));
}

double hermiticity_defect(const OperatorMatrix& m) {
  double d = 0.0;
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

double hermiticity_defect_block(const OperatorMatrix& m, int upto) {
  if (upto < 0 || upto >= m.dim()) throw SizeError("block bound outside matrix");
  double d = 0.0;
  for (int i = 0; i <= upto; ++i)
    for (int j = i; j <= upto; ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

OperatorMatrix hermitian_part(const OperatorMatrix& m) {
  return scale(0.5, add(m, adjoint(m)));
}

double max_abs(const OperatorMatrix& m) {
  double r = 0.0;
  const int n = m.dim();
  for (std::size_t i = 0; i < std::size_t(n) * n; ++i)
    r = std::max(r, std::abs(m.data()[i]));
  return r;
}

double max_imag_abs(const OperatorMatrix& m) {
  double r = 0.0;
  const int n = m.dim();
  for (std::size_t i = 0; i < std::size_t(n) * n; ++i)
    r = std::max(r, std::abs(m.data()[i].imag()));
  return r;
}

double max_imag_abs_block(const OperatorMatrix& m, int upto) {
  if (upto < 0 || upto >= m.dim()) throw SizeError("block bound outside matrix");
  double r = 0.0;
  for (int i = 0; i <= upto; ++i)
    for (int j = 0; j <= upto; ++j) r = std::max(r, std::abs(m(i, j).imag()));
  return r;
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  double r = 0.0;
  const int n = a.dim();
  for (std::size_t i = 0; i < std::size_t(n) * n; ++i)
    r = std::max(r, std::abs(a.data()[i] - b.data()[i]));
  return r;
}

double max_abs_diff_block(const OperatorMatrix& a, const OperatorMatrix& b, int upto) {
  require_same_dim(a, b);
  if (upto < 0 || upto >= a.dim())
    throw SizeError("block bound outside matrix");
  double r = 0.0;
  for (int i = 0; i <= upto; ++i)
    for (int j = 0; j <= upto; ++j) r = std::max(r, std::abs(a(i, j) - b(i, j)));
  return r;
}

FockBasisSpec::FockBasisSpec(int dim_, int guard_) : dim(dim_), guard(guard_) {
  if (guard < 4)
    throw SizeError("guard must be >= 4 (quartic monomials couple n to n+-4)");
  if (dim < guard + 1)
    throw SizeError("basis dimension must be >= guard + 1");
}

OperatorMatrix ladder_lower(int dim) {
  if (dim < 2) throw SizeError("ladder operators need dimension >= 2");
  OperatorMatrix a(dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

OperatorMatrix ladder_raise(int dim) { return adjoint(ladder_lower(dim)); }

OperatorMatrix number_op(int dim) {
  if (dim < 2) throw SizeError("ladder operators need dimension >= 2");
  OperatorMatrix n(dim);
  for (int i = 0; i < dim; ++i) n(i, i) = double(i);
  return n;
}

OperatorMatrix position_op(const ModelParams& p, int dim) {
  const double cx = std::sqrt(p.hbar / (2.0 * p.m0 * p.omega));
  return scale(cx, add(ladder_lower(dim), ladder_raise(dim)));
}

OperatorMatrix momentum_op(const ModelParams& p, int dim) {
  const double cp = std::sqrt(p.m0 * p.hbar * p.omega / 2.0);
  return scale(std::complex<double>{0.0, -cp},
               sub(ladder_lower(dim), ladder_raise(dim)));
}

OperatorMatrix velocity_op(const ModelParams& p, int dim) {
  return scale(1.0 / p.m0, momentum_op(p, dim));
}

OperatorMatrix h0_matrix(const ModelParams& p, int dim) {
  if (dim < 2) throw SizeError("basis dimension must be >= 2");
  OperatorMatrix h(dim);
  for (int n = 0; n < dim; ++n) h(n, n) = p.hbar * p.omega * (n + 0.5);
  return h;
}

OperatorMatrix h0_matrix_built(const ModelParams& p, int dim) {
  const auto x = position_op(p, dim);
  const auto pm = momentum_op(p, dim);
  return add(scale(1.0 / (2.0 * p.m0), mul(pm, pm)),
             scale(0.5 * p.m0 * p.omega * p.omega, mul(x, x)));
}

}  // namespace pdmosc

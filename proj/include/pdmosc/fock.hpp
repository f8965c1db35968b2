#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pdmosc/errors.hpp"
#include "pdmosc/model.hpp"

namespace pdmosc {

/// Dense complex operator in the truncated number basis {|0>,...,|N-1>}.
/// Entry (bra, ket) holds <bra|O|ket>. Immutable by convention after
/// construction: all algebra below returns new values.
class OperatorMatrix {
 public:
  using value_type = std::complex<double>;

  explicit OperatorMatrix(int dim);

  static OperatorMatrix identity(int dim);
  static OperatorMatrix diagonal(std::span<const double> entries);

  int dim() const noexcept { return dim_; }

  value_type& operator()(int bra, int ket) { return a_[idx(bra, ket)]; }
  const value_type& operator()(int bra, int ket) const { return a_[idx(bra, ket)]; }

  value_type* data() noexcept { return a_.data(); }
  const value_type* data() const noexcept { return a_.data(); }

  bool operator==(const OperatorMatrix&) const = default;

 private:
  std::size_t idx(int bra, int ket) const { return std::size_t(bra) * dim_ + ket; }
  int dim_;
  std::vector<value_type> a_;
};

// Algebra. All throw SizeError on dimension mismatch.
OperatorMatrix mul(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix sub(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix scale(std::complex<double> c, const OperatorMatrix& a);
OperatorMatrix adjoint(const OperatorMatrix& a);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

inline OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) { return mul(a, b); }
inline OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) { return add(a, b); }
inline OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) { return sub(a, b); }
inline OperatorMatrix operator*(std::complex<double> c, const OperatorMatrix& a) { return scale(c, a); }
inline OperatorMatrix operator*(double c, const OperatorMatrix& a) { return scale(c, a); }

/// max |M - M^dagger| over entries. Zero for an exactly Hermitian matrix.
double hermiticity_defect(const OperatorMatrix& m);
/// Same, restricted to bra, ket <= upto. Products of truncated operators
/// are Hermitian only away from the truncation corner, so trusted-block
/// statements use this form.
double hermiticity_defect_block(const OperatorMatrix& m, int upto);

/// (M + M^dagger)/2. Diagonalization drivers apply this to built operators
/// so that the corner artifact never reaches the eigensolver.
OperatorMatrix hermitian_part(const OperatorMatrix& m);

double max_abs(const OperatorMatrix& m);
double max_imag_abs(const OperatorMatrix& m);
double max_imag_abs_block(const OperatorMatrix& m, int upto);
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

/// max |A - B| over the block of entries with bra, ket <= upto (inclusive).
double max_abs_diff_block(const OperatorMatrix& a, const OperatorMatrix& b, int upto);

/// Truncation bookkeeping: results involving basis index n are trusted
/// only for n <= dim - 1 - guard. The quartic monomials couple n to n+-4,
/// so the guard must be at least 4; the default of 8 leaves margin for
/// operator products.
struct FockBasisSpec {
  int dim;
  int guard;

  explicit FockBasisSpec(int dim_, int guard_ = 8);
  int trusted_max() const { return dim - 1 - guard; }
};

/// Descent operator: a|n> = sqrt(n)|n-1>, i.e. a[n-1, n] = sqrt(n).
OperatorMatrix ladder_lower(int dim);
/// Ascent operator, conjugate transpose of ladder_lower.
OperatorMatrix ladder_raise(int dim);
/// Number operator diag(0, 1, ..., N-1).
OperatorMatrix number_op(int dim);

// Basis operators of the constant-mass oscillator:
//   x = sqrt(hbar/2 m0 omega)(a + a^+)
//   p = -i sqrt(m0 hbar omega/2)(a - a^+)
//   v = -i sqrt(hbar omega/2 m0)(a - a^+) = p / m0
OperatorMatrix position_op(const ModelParams& p, int dim);
OperatorMatrix momentum_op(const ModelParams& p, int dim);
OperatorMatrix velocity_op(const ModelParams& p, int dim);

/// Unperturbed oscillator as its exact diagonal hbar*omega*(n + 1/2).
OperatorMatrix h0_matrix(const ModelParams& p, int dim);
/// Same operator assembled as p^2/2m0 + m0 omega^2 x^2 / 2 from truncated
/// matrices; differs from the diagonal form only near the truncation edge.
OperatorMatrix h0_matrix_built(const ModelParams& p, int dim);

}  // namespace pdmosc

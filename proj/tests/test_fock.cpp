#include <doctest.h>

#include <cmath>
#include <complex>

#include "pdmosc/fock.hpp"

using namespace pdmosc;

TEST_CASE("ladder_lower entries at N = 3") {
  const auto a = ladder_lower(3);
  CHECK(a(0, 1).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  double off = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!((i == 0 && j == 1) || (i == 1 && j == 2))) off += std::abs(a(i, j));
  CHECK(off == 0.0);
  CHECK_THROWS_AS(ladder_lower(1), SizeError);
}

TEST_CASE("number operator from the ladder pair") {
  const int N = 12;
  const auto num = mul(ladder_raise(N), ladder_lower(N));
  for (int n = 0; n < N; ++n)
    CHECK(num(n, n).real() == doctest::Approx(double(n)).epsilon(1e-15));
  CHECK(max_abs_diff(num, number_op(N)) <= 1e-14);
}

TEST_CASE("ladder commutator is the identity except at the truncation corner") {
  const int N = 10;
  const auto c = commutator(ladder_lower(N), ladder_raise(N));
  // sqrt(n)*sqrt(n) rounds away from n by a few ulp.
  for (int n = 0; n <= N - 2; ++n)
    CHECK(std::abs(c(n, n) - std::complex<double>{1.0, 0.0}) <= 1e-14);
  CHECK(c(N - 1, N - 1).real() == doctest::Approx(-(N - 1.0)).epsilon(1e-15));
  double off = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) off += std::abs(c(i, j));
  CHECK(off == 0.0);
}

TEST_CASE("basis operator entries and structure") {
  const auto p = ModelParams::natural(0.0);
  const auto x = position_op(p, 2);
  CHECK(x(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(x(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(x(0, 0)) == 0.0);
  CHECK(std::abs(x(1, 1)) == 0.0);

  const int N = 16;
  const auto X = position_op(p, N);
  const auto P = momentum_op(p, N);
  const auto V = velocity_op(p, N);
  CHECK(max_imag_abs(X) == 0.0);
  // p and v are purely imaginary entry for entry.
  double re_mass = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      re_mass = std::max(re_mass, std::abs(P(i, j).real()));
      re_mass = std::max(re_mass, std::abs(V(i, j).real()));
    }
  CHECK(re_mass == 0.0);
  CHECK(hermiticity_defect(X) <= 1e-12);
  CHECK(hermiticity_defect(P) <= 1e-12);
  CHECK(hermiticity_defect(V) <= 1e-12);
}

TEST_CASE("velocity operator is momentum / m0 exactly") {
  const ModelParams p{2.5, 0.3, 1.7, 0.9, Units::si};
  const auto P = momentum_op(p, 20);
  const auto V = velocity_op(p, 20);
  CHECK(max_abs_diff(V, scale(1.0 / p.m0, P)) == 0.0);
}

TEST_CASE("canonical commutators hold on the trusted block") {
  const auto p = ModelParams::natural(0.0);
  const int N = 24;
  const auto X = position_op(p, N);
  const auto P = momentum_op(p, N);
  const auto V = velocity_op(p, N);

  const auto xp = commutator(X, P);
  const auto xv = commutator(X, V);
  const auto id = OperatorMatrix::identity(N);
  CHECK(max_abs_diff_block(xp, scale(std::complex<double>{0.0, p.hbar}, id), N - 2) <= 1e-14);
  CHECK(max_abs_diff_block(xv, scale(std::complex<double>{0.0, p.hbar / p.m0}, id), N - 2) <=
        1e-14);
  // The corner carries the truncation defect.
  CHECK(std::abs(xp(N - 1, N - 1)) > 1.0);
}

TEST_CASE("h0 diagonal matches the oscillator ladder") {
  const auto p = ModelParams::natural(0.0);
  const auto h = h0_matrix(p, 8);
  CHECK(h(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(h(3, 3).real() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(hermiticity_defect(h) == 0.0);
}

TEST_CASE("matrix-built h0 differs from the diagonal only at the truncation edge") {
  const auto p = ModelParams::natural(0.0);
  const int N = 20;
  const auto exact = h0_matrix(p, N);
  const auto built = h0_matrix_built(p, N);
  CHECK(max_abs_diff_block(exact, built, N - 3) <= 1e-13);
  CHECK(max_abs_diff(exact, built) > 1.0);
}

TEST_CASE("algebra identities") {
  const auto p = ModelParams::natural(0.0);
  const int N = 9;
  const auto X = position_op(p, N);
  const auto P = momentum_op(p, N);

  CHECK(max_abs(commutator(X, X)) == 0.0);
  CHECK(max_abs_diff(adjoint(adjoint(P)), P) == 0.0);

  // Adjoint of a product reverses the factors.
  CHECK(max_abs_diff(adjoint(mul(X, P)), mul(adjoint(P), adjoint(X))) <= 1e-14);

  CHECK_THROWS_AS(mul(position_op(p, 4), position_op(p, 5)), SizeError);
  CHECK_THROWS_AS(add(position_op(p, 4), position_op(p, 5)), SizeError);
}

TEST_CASE("basis spec invariants") {
  CHECK(FockBasisSpec(64, 8).trusted_max() == 55);
  CHECK_THROWS_AS(FockBasisSpec(64, 3), SizeError);
  CHECK_THROWS_AS(FockBasisSpec(5, 8), SizeError);
}

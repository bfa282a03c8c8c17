#include <cmath>
#include <numbers>

#include "test_util.hpp"

using namespace hypolog;
using testutil::max_abs_diff;

TEST_CASE("constructor symmetrizes") {
  CMatrix a(2, 2);
  a << 1.0, cplx(2.0, 1.0), cplx(0.0, 3.0), 4.0;
  const HermitianMatrix h(a);
  CHECK(max_abs_diff(h.matrix(), h.matrix().adjoint()) == 0.0);
  CHECK_THROWS_AS(HermitianMatrix(CMatrix::Zero(2, 3)), InvalidInput);
}

TEST_CASE("eig_hermitian: identity and diagonal") {
  const Spectrum id = eig_hermitian(HermitianMatrix::identity(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(id.eigenvalues(i) == doctest::Approx(1.0));
  }

  RVector d(2);
  d << 2.0, 1.0;
  const Spectrum s = eig_hermitian(HermitianMatrix::diagonal(d));
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
  // eigenvector of 1 is e_2: a permutation
  CHECK(std::abs(s.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(s.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian: reconstruction and unitarity") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix a = random_hermitian(6, rng);
    const Spectrum s = eig_hermitian(a);
    const double scale = a.matrix().operatorNorm();
    CHECK(max_abs_diff(s.reconstruct(), a.matrix()) < 1e-10 * scale);
    CHECK(max_abs_diff(s.eigenvectors.adjoint() * s.eigenvectors, CMatrix::Identity(6, 6)) <
          1e-10);
    for (int i = 1; i < 6; ++i) {
      CHECK(s.eigenvalues(i - 1) <= s.eigenvalues(i));
    }
  }
}

TEST_CASE("eig_hermitian rejects non-finite input") {
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eig_hermitian(HermitianMatrix(a)), InvalidInput);
}

TEST_CASE("matrix_function: analytic cases") {
  const HermitianMatrix zero(CMatrix::Zero(3, 3));
  CHECK(max_abs_diff(matrix_function(zero, MatrixFunction::exp()).matrix(),
                     CMatrix::Identity(3, 3)) < 1e-14);

  const double e = std::numbers::e;
  RVector d(2);
  d << e, e * e;
  RVector expected(2);
  expected << 1.0, 2.0;
  CHECK(max_abs_diff(matrix_function(HermitianMatrix::diagonal(d), MatrixFunction::log()).matrix(),
                     HermitianMatrix::diagonal(expected).matrix()) < 1e-14);
}

TEST_CASE("matrix_function: powers compose") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianMatrix rho(random_density_matrix(5, rng, 1e-3));
    const CMatrix a = matrix_function(rho, MatrixFunction::power(0.3)).matrix();
    const CMatrix b = matrix_function(rho, MatrixFunction::power(0.7)).matrix();
    CHECK(max_abs_diff(a * b, rho.matrix()) < 1e-9);
  }
}

TEST_CASE("matrix_function: singular inputs") {
  RVector d(2);
  d << 0.0, 1.0;
  const HermitianMatrix a = HermitianMatrix::diagonal(d);
  CHECK_THROWS_AS(matrix_function(a, MatrixFunction::log()), SingularMatrix);
  CHECK_THROWS_AS(matrix_function(a, MatrixFunction::power(0.5)), SingularMatrix);
  CHECK_THROWS_AS(matrix_function(a, MatrixFunction::power(-1.0)), SingularMatrix);
  // integer nonnegative powers are defined everywhere
  CHECK_NOTHROW(matrix_function(a, MatrixFunction::power(2.0)));
}

TEST_CASE("exp then log is the identity") {
  // Diagonal spectra over the full [-20, 20] range round-trip exactly.
  RVector d(4);
  d << -20.0, -3.5, 0.25, 20.0;
  const HermitianMatrix diag = HermitianMatrix::diagonal(d);
  CHECK(max_abs_diff(matrix_function(matrix_function(diag, MatrixFunction::exp()),
                                     MatrixFunction::log())
                         .matrix(),
                     diag.matrix()) < 1e-8);

  // Generic eigenvectors: re-diagonalizing exp(a) perturbs its smallest
  // eigenvalues by ~eps * e^{max}, so the round trip holds at 1e-8 only while
  // e^{2 r} eps stays below that, i.e. spectral radius r up to about 6.
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix g = random_hermitian(4, rng).matrix();
    const Spectrum s = eig_hermitian(HermitianMatrix(g));
    const double scale = std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(3)));
    const HermitianMatrix a(g * (6.0 / scale));
    const HermitianMatrix back =
        matrix_function(matrix_function(a, MatrixFunction::exp()), MatrixFunction::log());
    CHECK(max_abs_diff(back.matrix(), a.matrix()) < 1e-8);
  }
}

TEST_CASE("min_eigenvalue") {
  CHECK(min_eigenvalue(HermitianMatrix::identity(3)) == doctest::Approx(1.0));
  RVector d(2);
  d << -1.0, 5.0;
  CHECK(min_eigenvalue(HermitianMatrix::diagonal(d)) == doctest::Approx(-1.0));

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_gaussian_matrix(5, 5, rng);
    CHECK(min_eigenvalue(HermitianMatrix(a.adjoint() * a)) >= -1e-12);

    const HermitianMatrix h = random_hermitian(5, rng);
    const double shift = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const HermitianMatrix shifted(h.matrix() + shift * CMatrix::Identity(5, 5));
    CHECK(min_eigenvalue(shifted) == doctest::Approx(min_eigenvalue(h) + shift).epsilon(1e-10));
  }
}

TEST_CASE("expm_skew is unitary") {
  Rng rng(2);
  const cplx i1(0.0, 1.0);
  const CMatrix a = i1 * random_hermitian(4, rng).matrix();
  const CMatrix u = expm_skew(a);
  CHECK(max_abs_diff(u * u.adjoint(), CMatrix::Identity(4, 4)) < 1e-12);
}

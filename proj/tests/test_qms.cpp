#include <cmath>

#include "hypolog/qms.hpp"
#include "test_util.hpp"

using namespace hypolog;
using testutil::max_abs;
using testutil::max_abs_diff;

namespace {

const cplx I1(0.0, 1.0);

CMatrix sigma_x() {
  CMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}
CMatrix sigma_y() {
  CMatrix s(2, 2);
  s << 0.0, -I1, I1, 0.0;
  return s;
}
CMatrix sigma_z() {
  CMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

RVector sorted_eigenvalues(const CMatrix& a) {
  return eig_hermitian(HermitianMatrix(a)).eigenvalues;
}

} // namespace

TEST_CASE("L_2 on the Pauli basis") {
  const IrrepGenerators gen = build_generators(2);
  const Superoperator l = lindblad_generator(gen);
  CHECK(l.dim == 2);
  CHECK(max_abs(l.apply(CMatrix::Identity(2, 2))) < 1e-14);
  CHECK(max_abs_diff(l.apply(sigma_x()), -4.0 * sigma_x()) < 1e-12);
  CHECK(max_abs_diff(l.apply(sigma_y()), -4.0 * sigma_y()) < 1e-12);
  CHECK(max_abs_diff(l.apply(sigma_z()), -8.0 * sigma_z()) < 1e-12);

  const RVector lam = sorted_eigenvalues(l.matrix);
  CHECK(lam(0) == doctest::Approx(-8.0));
  CHECK(lam(1) == doctest::Approx(-4.0));
  CHECK(lam(2) == doctest::Approx(-4.0));
  CHECK(std::abs(lam(3)) < 1e-12);

  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = -4.0;
  expected(1, 1) = 4.0;
  CHECK(max_abs_diff(l.apply(rho), expected) < 1e-12);
  CHECK(max_abs_diff(apply_lindbladian(gen, 1, rho), expected) < 1e-12);
}

TEST_CASE("m = 1 gives the zero generator") {
  const Superoperator l = lindblad_generator(build_generators(1));
  CHECK(max_abs(l.matrix) == 0.0);
  CHECK_THROWS_AS(spectral_gap(l), DegenerateGenerator);
}

TEST_CASE("column-stacking convention") {
  CMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  const CVector v = vec(a);
  // e_{jk} -> k*d + j
  CHECK(v(1) == cplx(3.0));
  CHECK(v(2) == cplx(2.0));
  CHECK(max_abs_diff(unvec(v, 2), a) == 0.0);
}

TEST_CASE("generator symmetry, negativity, trace annihilation") {
  Rng rng(17);
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 2; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      const IrrepGenerators gen = build_generators(m);
      const Superoperator l = lindblad_generator(gen, n);
      const Eigen::Index d = l.dim;
      CHECK(max_abs_diff(l.matrix, l.matrix.adjoint()) < 1e-10);
      CHECK(sorted_eigenvalues(l.matrix).maxCoeff() <= 1e-10);
      for (int trial = 0; trial < 5; ++trial) {
        const CMatrix a = random_hermitian(d, rng).matrix();
        const CMatrix b = random_hermitian(d, rng).matrix();
        CHECK(std::abs(hs_inner(a, l.apply(b)) - hs_inner(l.apply(a), b)) < 1e-9);
        CHECK(hs_inner(a, l.apply(a)).real() <= 1e-10);
        CHECK(std::abs(l.apply(a).trace()) < 1e-10);
        CHECK(max_abs_diff(l.apply(a), apply_lindbladian(gen, n, a)) < 1e-10);
      }
    }
  }
}

TEST_CASE("evolve: closed forms for m = 2") {
  const IrrepGenerators gen = build_generators(2);
  const Superoperator l = lindblad_generator(gen);
  Rng rng(8);
  const DensityMatrix rho(random_density_matrix(2, rng));

  CHECK(max_abs_diff(evolve(l, rho, 0.0).matrix(), rho.matrix()) < 1e-14);
  const CMatrix mixed = CMatrix::Identity(2, 2) / 2.0;
  CHECK(trace_norm(HermitianMatrix(evolve(l, rho, 50.0).matrix() - mixed)) < 1e-8);
  CHECK_THROWS_AS(evolve(l, rho, -1.0), InvalidInput);

  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  for (double t : {0.01, 0.1, 0.5, 1.0}) {
    const CMatrix out = evolve(l, DensityMatrix(pure), t).matrix();
    const double decay = std::exp(-8.0 * t);
    CHECK(out(0, 0).real() == doctest::Approx((1.0 + decay) / 2.0).epsilon(1e-12));
    CHECK(out(1, 1).real() == doctest::Approx((1.0 - decay) / 2.0).epsilon(1e-12));
    CHECK(std::abs(out(0, 1)) < 1e-12);
  }
}

TEST_CASE("semigroup law, positivity, commutation with L") {
  Rng rng(23);
  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 2; ++n) {
      const Superoperator l = lindblad_generator(build_generators(m), n);
      const SpectralSemigroup semigroup(l);
      const DensityMatrix rho(random_density_matrix(l.dim, rng));
      const double s = 0.13;
      const double t = 0.41;
      const CMatrix once = semigroup.apply(rho.matrix(), s + t);
      const CMatrix twice = semigroup.apply(semigroup.apply(rho.matrix(), s), t);
      CHECK(max_abs_diff(once, twice) < 1e-9);
      CHECK(std::abs(once.trace() - 1.0) < 1e-10);
      CHECK(min_eigenvalue(HermitianMatrix(once)) >= -1e-9);
      const Superoperator st = semigroup.channel(t);
      CHECK(max_abs_diff(st.matrix * l.matrix, l.matrix * st.matrix) < 1e-9);
    }
  }
}

TEST_CASE("fixed point projection") {
  const IrrepGenerators gen2 = build_generators(2);
  {
    const Superoperator e = fixed_point_projection(lindblad_generator(gen2));
    CMatrix rho = CMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    CHECK(max_abs_diff(e.apply(rho), CMatrix::Identity(2, 2) / 2.0) < 1e-10);
  }
  Rng rng(4);
  for (int m = 2; m <= 3; ++m) {
    for (int n = 1; n <= 2; ++n) {
      const Superoperator l = lindblad_generator(build_generators(m), n);
      const Superoperator e = fixed_point_projection(l);
      CHECK(max_abs_diff(e.matrix * e.matrix, e.matrix) < 1e-10);
      CHECK(max_abs_diff(e.matrix * l.matrix, l.matrix * e.matrix) < 1e-9);
      const CMatrix rho = random_density_matrix(l.dim, rng);
      CHECK(max_abs_diff(e.apply(rho), conditional_expectation(rho, m, n)) < 1e-10);
    }
  }
  {
    // product state: E(r1 (x) r2) = I/2 (x) r2
    const Superoperator e = fixed_point_projection(lindblad_generator(gen2, 2));
    const CMatrix r1 = random_density_matrix(2, rng);
    const CMatrix r2 = random_density_matrix(2, rng);
    CHECK(max_abs_diff(e.apply(kron(r1, r2)), kron(CMatrix::Identity(2, 2) / 2.0, r2)) < 1e-10);
  }
}

TEST_CASE("verify_cp") {
  CHECK(verify_cp(lindblad_generator(build_generators(2)), 0.1).choi_min_eig >= -1e-9);
  CHECK(verify_cp(lindblad_generator(build_generators(3)), 1.0).trace_defect < 1e-10);
  CHECK_THROWS_AS(verify_cp(lindblad_generator(build_generators(2)), 0.0), InvalidInput);

  // t -> 0: Choi matrix of the identity channel, rank one with eigenvalue m
  const Superoperator l = lindblad_generator(build_generators(3));
  const CMatrix choi = choi_matrix(SpectralSemigroup(l).channel(1e-9));
  const RVector lam = sorted_eigenvalues(choi);
  CHECK(lam(lam.size() - 1) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(std::abs(lam(lam.size() - 2)) < 1e-6);
}

TEST_CASE("spectral gap") {
  CHECK(spectral_gap(lindblad_generator(build_generators(2))) == doctest::Approx(4.0));
  CHECK(spectral_gap(lindblad_generator(build_generators(2), 2)) == doctest::Approx(4.0));
}

TEST_CASE("exponential convergence to the fixed point") {
  Rng rng(12);
  for (int m = 2; m <= 4; ++m) {
    const Superoperator l = lindblad_generator(build_generators(m));
    const double gap = spectral_gap(l);
    const Superoperator e = fixed_point_projection(l);
    const SpectralSemigroup semigroup(l);
    const CMatrix rho = random_density_matrix(l.dim, rng);
    const double initial = (rho - e.apply(rho)).norm();
    for (double t : {1.0, 2.0, 4.0}) {
      const double dist = (semigroup.apply(rho, t) - e.apply(rho)).norm();
      CHECK(dist <= std::exp(-gap * t) * initial * 1.05);
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix(CMatrix::Identity(2, 2)), InvalidInput);
  RVector d(2);
  d << 1.5, -0.5;
  CHECK_THROWS_AS(DensityMatrix(HermitianMatrix::diagonal(d).matrix()), InvalidInput);
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(3));
}

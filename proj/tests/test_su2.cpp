#include <cmath>

#include "hypolog/su2.hpp"
#include "test_util.hpp"

using namespace hypolog;
using testutil::max_abs;
using testutil::max_abs_diff;

namespace {

const cplx I1(0.0, 1.0);

// Reads quaternion coordinates back from a 2x2 matrix c I + x X + y Y + z Z.
GroupElement from_su2(const CMatrix& u) {
  return {u(0, 0).real(), u(0, 1).real(), u(0, 1).imag(), u(0, 0).imag()};
}

} // namespace

TEST_CASE("m = 2 generators are the defining skew-Hermitian matrices") {
  const IrrepGenerators gen = build_generators(2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, -1.0, 0.0;
  y << 0.0, I1, I1, 0.0;
  z << I1, 0.0, 0.0, -I1;
  CHECK(max_abs_diff(gen.x(), x) == 0.0);
  CHECK(max_abs_diff(gen.y(), y) == 0.0);
  CHECK(max_abs_diff(gen.z(), z) == 0.0);
}

TEST_CASE("m = 1 is the trivial representation") {
  const IrrepGenerators gen = build_generators(1);
  CHECK(max_abs(gen.x()) == 0.0);
  CHECK(max_abs(gen.y()) == 0.0);
  CHECK(max_abs(gen.z()) == 0.0);
  CHECK(max_abs(casimir(gen).matrix()) == 0.0);
  CHECK(max_abs(horizontal_symbol(gen).matrix()) == 0.0);
}

TEST_CASE("m = 0 is rejected") { CHECK_THROWS_AS(build_generators(0), InvalidInput); }

TEST_CASE("brackets, skew-Hermiticity and Casimir for m <= 8") {
  for (int m = 1; m <= 8; ++m) {
    CAPTURE(m);
    const IrrepGenerators gen = build_generators(m);
    for (Direction d : {Direction::X, Direction::Y, Direction::Z}) {
      CHECK(max_abs(gen[d] + gen[d].adjoint()) < 1e-12);
    }
    CHECK(max_abs_diff(commutator(gen.x(), gen.y()), 2.0 * gen.z()) < 1e-10);
    CHECK(max_abs_diff(commutator(gen.y(), gen.z()), 2.0 * gen.x()) < 1e-10);
    CHECK(max_abs_diff(commutator(gen.z(), gen.x()), 2.0 * gen.y()) < 1e-10);
    const double c = -(m * m - 1.0);
    CHECK(max_abs_diff(casimir(gen).matrix(), c * CMatrix::Identity(m, m)) < 1e-10);
  }
}

TEST_CASE("casimir of m = 3 is -8 I") {
  const IrrepGenerators gen = build_generators(3);
  CHECK(max_abs_diff(casimir(gen).matrix(), -8.0 * CMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("horizontal symbol is diagonal with the closed-form entries") {
  {
    const IrrepGenerators gen = build_generators(2);
    CHECK(max_abs_diff(horizontal_symbol(gen).matrix(), -2.0 * CMatrix::Identity(2, 2)) < 1e-12);
  }
  {
    const IrrepGenerators gen = build_generators(3);
    RVector d(3);
    d << -4.0, -8.0, -4.0;
    CHECK(max_abs_diff(horizontal_symbol(gen).matrix(), HermitianMatrix::diagonal(d).matrix()) <
          1e-12);
  }
  for (int m = 1; m <= 8; ++m) {
    const IrrepGenerators gen = build_generators(m);
    // direct arithmetic oracle: Casimir minus Z^2
    const CMatrix h = casimir(gen).matrix() - gen.z() * gen.z();
    RVector d(m);
    for (int j = 1; j <= m; ++j) {
      d(j - 1) = -(m * m - 1.0) + std::pow(m - 2.0 * j + 1.0, 2);
    }
    CHECK(max_abs_diff(horizontal_symbol(gen).matrix(), HermitianMatrix::diagonal(d).matrix()) <
          1e-10);
    CHECK(max_abs_diff(h, HermitianMatrix::diagonal(d).matrix()) < 1e-10);
    CHECK(max_abs(commutator(horizontal_symbol(gen).matrix(), gen.z())) < 1e-10);
  }
}

TEST_CASE("quaternion product agrees with 2x2 matrix product") {
  const auto gs = haar_sample(21u, 20);
  for (std::size_t k = 0; k + 1 < gs.size(); ++k) {
    const CMatrix prod = su2_matrix(gs[k]) * su2_matrix(gs[k + 1]);
    CHECK(max_abs_diff(su2_matrix(gs[k] * gs[k + 1]), prod) < 1e-14);
  }
}

TEST_CASE("pi_m: identity, m = 2 defining matrix, -I") {
  for (int m = 1; m <= 5; ++m) {
    const IrrepGenerators gen = build_generators(m);
    CHECK(max_abs_diff(pi_m(gen, GroupElement::identity()), CMatrix::Identity(m, m)) < 1e-14);
  }
  const IrrepGenerators gen2 = build_generators(2);
  for (const GroupElement& g : haar_sample(1u, 50)) {
    CHECK(max_abs_diff(pi_m(gen2, g), su2_matrix(g)) < 1e-10);
  }
  const GroupElement minus{-1.0, 0.0, 0.0, 0.0};
  CHECK(max_abs_diff(pi_m(gen2, minus), -CMatrix::Identity(2, 2)) < 1e-12);
  // odd-dimensional irreps factor through SO(3)
  CHECK(max_abs_diff(pi_m(build_generators(3), minus), CMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("pi_m is a unitary homomorphism") {
  const auto gs = haar_sample(33u, 200);
  for (int m = 1; m <= 6; ++m) {
    CAPTURE(m);
    const IrrepGenerators gen = build_generators(m);
    for (std::size_t k = 0; k < 100; ++k) {
      const GroupElement& g = gs[2 * k];
      const GroupElement& h = gs[2 * k + 1];
      const CMatrix pg = pi_m(gen, g);
      CHECK(max_abs_diff(pg * pg.adjoint(), CMatrix::Identity(m, m)) < 1e-10);
      CHECK(max_abs_diff(pg * pi_m(gen, g.inverse()), CMatrix::Identity(m, m)) < 1e-8);
      CHECK(std::abs(pg.trace().imag()) < 1e-8);
      // product computed from the 2x2 matrices, independent of operator*
      const GroupElement gh = from_su2(su2_matrix(g) * su2_matrix(h));
      if (m == 3) {
        CHECK(max_abs_diff(pi_m(gen, gh), pg * pi_m(gen, h)) < 1e-8);
      }
    }
  }
}

TEST_CASE("conjugator intertwines pi_m with its complex conjugate") {
  for (int m = 1; m <= 6; ++m) {
    const IrrepGenerators gen = build_generators(m);
    const CMatrix& j = gen.conjugator();
    for (const GroupElement& g : haar_sample(4u, 10)) {
      const CMatrix p = pi_m(gen, g);
      CHECK(max_abs_diff(p.conjugate(), j * p * j.adjoint()) < 1e-10);
    }
  }
}

TEST_CASE("haar_sample: normalization, determinism, Haar statistics") {
  CHECK_THROWS_AS(haar_sample(1u, 0), InvalidInput);
  const auto a = haar_sample(99u, 5);
  const auto b = haar_sample(99u, 5);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].c == b[k].c);
    CHECK(a[k].z == b[k].z);
  }

  const std::size_t n = 100000;
  const auto gs = haar_sample(2024u, n);
  const IrrepGenerators gen2 = build_generators(2);
  double mean_c = 0.0;
  cplx mean_entry = 0.0;
  double sq_re = 0.0;
  double sq_im = 0.0;
  for (const GroupElement& g : gs) {
    CHECK(std::abs(g.norm_sq() - 1.0) < 1e-12);
    mean_c += g.c;
    const cplx e = pi_m(gen2, g)(0, 0);
    mean_entry += e;
    sq_re += e.real() * e.real();
    sq_im += e.imag() * e.imag();
  }
  const double nd = static_cast<double>(n);
  mean_c /= nd;
  mean_entry /= nd;
  CHECK(std::abs(mean_c) < 0.01);
  CHECK(std::abs(mean_entry.real()) < 3.0 * std::sqrt(sq_re / nd / nd));
  CHECK(std::abs(mean_entry.imag()) < 3.0 * std::sqrt(sq_im / nd / nd));
}

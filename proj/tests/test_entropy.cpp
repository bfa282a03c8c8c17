#include <cmath>
#include <numbers>

#include "hypolog/entropy.hpp"
#include "test_util.hpp"

using namespace hypolog;
using testutil::max_abs;
using testutil::max_abs_diff;

namespace {

CMatrix diag2(double a, double b) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

// Integral representation of the weighted norm,
//   int_0^inf tr(f^* (rho + s)^{-1} f (rho + s)^{-1}) ds,
// evaluated with s = e^x and the trapezoid rule on x in [-40, 40]; the
// integrand decays exponentially at both ends.
double weighted_norm_quadrature(const CMatrix& rho, const CMatrix& f) {
  const Eigen::Index d = rho.rows();
  const double lo = -40.0;
  const double hi = 40.0;
  const int nodes = 8000;
  const double h = (hi - lo) / nodes;
  double total = 0.0;
  for (int k = 0; k <= nodes; ++k) {
    const double s = std::exp(lo + k * h);
    const CMatrix inv = (rho + s * CMatrix::Identity(d, d)).inverse();
    const double w = (k == 0 || k == nodes) ? 0.5 : 1.0;
    total += w * s * (f.adjoint() * inv * f * inv).trace().real();
  }
  return total * h;
}

} // namespace

TEST_CASE("relative entropy: analytic values") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho(random_density_matrix(4, rng));
    CHECK(std::abs(relative_entropy(rho, rho)) < 1e-9);
  }
  CHECK(relative_entropy(DensityMatrix(diag2(1.0, 0.0)), DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(std::isinf(relative_entropy(DensityMatrix(diag2(0.5, 0.5)),
                                    DensityMatrix(diag2(1.0, 0.0)))));
  CHECK_THROWS_AS(relative_entropy(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)),
                  InvalidInput);
}

TEST_CASE("relative entropy: quadratic Pinsker bound") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 4;
    const CMatrix rho = random_density_matrix(d, rng);
    const CMatrix sigma = random_density_matrix(d, rng);
    const double tn = trace_norm(HermitianMatrix(rho - sigma));
    CHECK(relative_entropy(rho, sigma) >= 0.5 * tn * tn - 1e-9);
  }
}

TEST_CASE("gradient") {
  const IrrepGenerators gen = build_generators(2);
  const TangentVector zero = gradient(gen, CMatrix::Identity(2, 2));
  CHECK(zero.components.size() == 2);
  CHECK(max_abs(zero.components[0]) == 0.0);
  CHECK(max_abs(zero.components[1]) == 0.0);

  const cplx i1(0.0, 1.0);
  const TangentVector g = gradient(gen, diag2(1.0, 0.0));
  CMatrix gx(2, 2), gy(2, 2);
  gx << 0.0, -1.0, -1.0, 0.0;
  gy << 0.0, -i1, i1, 0.0;
  CHECK(max_abs_diff(g.components[0], gx) < 1e-14);
  CHECK(max_abs_diff(g.components[1], gy) < 1e-14);

  // fixed points of the amplified generator have vanishing gradient
  Rng rng(3);
  const CMatrix rho = random_density_matrix(6, rng);
  const TangentVector gf = gradient(build_generators(3), conditional_expectation(rho, 3, 2), 2);
  CHECK(max_abs(gf.components[0]) < 1e-12);
  CHECK(max_abs(gf.components[1]) < 1e-12);
}

TEST_CASE("fisher information: closed forms and errors") {
  const IrrepGenerators gen2 = build_generators(2);
  CHECK(std::abs(fisher_information(build_generators(3), DensityMatrix::maximally_mixed(3))) <
        1e-12);
  const double p = 0.9;
  const double expected = 8.0 * (p - 0.5) * std::log(p / (1.0 - p));
  CHECK(fisher_information(gen2, DensityMatrix(diag2(p, 1.0 - p))) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(fisher_information(gen2, DensityMatrix(diag2(1.0, 0.0))), SingularState);
}

TEST_CASE("fisher information: chain-rule cross-check") {
  Rng rng(4);
  int count = 0;
  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 2; ++n) {
      const IrrepGenerators gen = build_generators(m);
      for (int trial = 0; trial < 17; ++trial, ++count) {
        const DensityMatrix rho(random_density_matrix(m * n, rng, 1e-3));
        const double direct = fisher_information(gen, rho, n);
        const double chain = fisher_information_chain_rule(gen, rho, n);
        CHECK(direct >= -1e-9);
        CHECK(chain == doctest::Approx(direct).epsilon(1e-6));
      }
    }
  }
  CHECK(count >= 100);
}

TEST_CASE("M_rho and its inverse") {
  Rng rng(5);
  const CMatrix f = random_gaussian_matrix(3, 3, rng);
  CHECK(max_abs_diff(m_rho_inverse(DensityMatrix::maximally_mixed(3), f), 3.0 * f) < 1e-12);

  RVector lam(3);
  lam << 0.2, 0.3, 0.5;
  const DensityMatrix diag(HermitianMatrix::diagonal(lam).matrix());
  CMatrix fd = CMatrix::Zero(3, 3);
  fd(0, 0) = 1.0;
  fd(1, 1) = 2.0;
  fd(2, 2) = 3.0;
  const CMatrix out = m_rho_inverse(diag, fd);
  CHECK(out(0, 0).real() == doctest::Approx(1.0 / 0.2));
  CHECK(out(1, 1).real() == doctest::Approx(2.0 / 0.3));
  CHECK(out(2, 2).real() == doctest::Approx(3.0 / 0.5));

  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho(random_density_matrix(4, rng, 1e-3));
    const CMatrix g = random_gaussian_matrix(4, 4, rng);
    CHECK(max_abs_diff(m_rho(rho, m_rho_inverse(rho, g)), g) < 1e-8);
  }

  CHECK_THROWS_AS(m_rho_inverse(DensityMatrix(diag2(1.0, 0.0)), CMatrix::Identity(2, 2)),
                  SingularState);
}

TEST_CASE("weighted norm: integral representation oracle") {
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix rho = random_density_matrix(3, rng, 0.05);
    const CMatrix f = random_hermitian(3, rng).matrix();
    CHECK(weighted_norm_sq(DensityMatrix(rho), f) ==
          doctest::Approx(weighted_norm_quadrature(rho, f)).epsilon(1e-6));
  }
}

TEST_CASE("weighted norm: identity weight and scaling") {
  Rng rng(7);
  const CMatrix f = random_gaussian_matrix(3, 3, rng);
  CHECK(weighted_norm_sq(HermitianMatrix::identity(3), f) ==
        doctest::Approx(f.squaredNorm()).epsilon(1e-12));
  const CMatrix sigma = random_density_matrix(3, rng, 1e-2);
  const double base = weighted_norm_sq(DensityMatrix(sigma), f);
  for (double c : {0.5, 2.0, 7.0}) {
    CHECK(weighted_norm_sq(HermitianMatrix(c * sigma), f) ==
          doctest::Approx(base / c).epsilon(1e-9));
  }
}

TEST_CASE("weighted norm: monotone in the weight") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix rho = random_density_matrix(3, rng, 1e-2);
    const CMatrix sigma = random_density_matrix(3, rng, 1e-2);
    // smallest C with rho <= C sigma
    const CMatrix s_inv_half =
        matrix_function(HermitianMatrix(sigma), MatrixFunction::power(-0.5)).matrix();
    const double c = eig_hermitian(HermitianMatrix(s_inv_half * rho * s_inv_half))
                         .eigenvalues.maxCoeff();
    const CMatrix f = random_hermitian(3, rng).matrix();
    CHECK(weighted_norm_sq(DensityMatrix(sigma), f) <=
          c * weighted_norm_sq(DensityMatrix(rho), f) + 1e-8);
  }
}

TEST_CASE("entropy bounded by the weighted chi-square distance to the mean") {
  Rng rng(9);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 3;
    const int n = 1 + (trial / 3) % 2;
    const CMatrix rho = random_density_matrix(m * n, rng);
    const CMatrix e = conditional_expectation(rho, m, n);
    const double d = relative_entropy(rho, e);
    const double chi2 = weighted_norm_sq(DensityMatrix(e), rho - e);
    worst = std::min(worst, chi2 - d);
  }
  CHECK(worst >= -1e-8);
}

TEST_CASE("data processing under the semigroup") {
  Rng rng(10);
  for (int m = 2; m <= 3; ++m) {
    const Superoperator l = lindblad_generator(build_generators(m), 2);
    const SpectralSemigroup semigroup(l);
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix rho = random_density_matrix(l.dim, rng);
      const CMatrix sigma = random_density_matrix(l.dim, rng);
      for (double t : {0.1, 1.0}) {
        CHECK(relative_entropy(semigroup.apply(rho, t), semigroup.apply(sigma, t)) <=
              relative_entropy(rho, sigma) + 1e-8);
      }
    }
  }
}

TEST_CASE("entropy decays along trajectories") {
  Rng rng(11);
  for (int m = 2; m <= 4; ++m) {
    const Superoperator l = lindblad_generator(build_generators(m));
    const SpectralSemigroup semigroup(l);
    const CMatrix rho = random_density_matrix(m, rng);
    const CMatrix e = conditional_expectation(rho, m, 1);
    double previous = relative_entropy(rho, e);
    for (int k = 1; k <= 50; ++k) {
      const double current = relative_entropy(semigroup.apply(rho, 0.02 * k), e);
      CHECK(current <= previous + 1e-12);
      previous = current;
    }
  }
}

TEST_CASE("K_rho") {
  Rng rng(12);
  for (int m = 2; m <= 4; ++m) {
    const IrrepGenerators gen = build_generators(m);
    for (int trial = 0; trial < 5; ++trial) {
      const DensityMatrix rho(random_density_matrix(m, rng, 1e-3));
      const CMatrix log_rho = matrix_function(rho.hermitian(), MatrixFunction::log()).matrix();
      CHECK(max_abs_diff(k_rho_apply(gen, rho, log_rho), -apply_lindbladian(gen, 1, rho.matrix())) <
            1e-8);
      CHECK(max_abs(k_rho_apply(gen, rho, CMatrix::Identity(m, m))) < 1e-12);
    }
    const CMatrix f = random_hermitian(m, rng).matrix();
    CHECK(max_abs_diff(k_rho_apply(gen, DensityMatrix::maximally_mixed(m), f),
                       -apply_lindbladian(gen, 1, f) / static_cast<double>(m)) < 1e-10);
  }
}

TEST_CASE("operator inequality diagnostics: trivial cases") {
  const IrrepGenerators gen = build_generators(2);
  Rng rng(13);
  const DensityMatrix rho(random_density_matrix(2, rng, 1e-2));
  Superoperator id = lindblad_generator(gen);
  id.matrix = CMatrix::Identity(4, 4);
  CHECK(operator_inequality_check(gen, rho, id, 1.0, 50, 1u).max_violation >= -1e-10);
  CHECK(operator_inequality_check(gen, rho, id, 0.0, 50, 1u).max_violation < 0.0);
}

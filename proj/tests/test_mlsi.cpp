#include <cmath>

#include "hypolog/mlsi.hpp"
#include "test_util.hpp"

using namespace hypolog;

namespace {

const cplx I1(0.0, 1.0);

CMatrix bloch(double r, double theta, double phi) {
  CMatrix s(2, 2);
  const double x = r * std::sin(theta) * std::cos(phi);
  const double y = r * std::sin(theta) * std::sin(phi);
  const double z = r * std::cos(theta);
  s << 1.0 + z, x - I1 * y, x + I1 * y, 1.0 - z;
  return 0.5 * s;
}

double diagonal_ratio(double p) {
  const double num = 8.0 * (p - 0.5) * std::log(p / (1.0 - p));
  const double den = 2.0 * (p * std::log(2.0 * p) + (1.0 - p) * std::log(2.0 * (1.0 - p)));
  return num / den;
}

// Bloch-ball grid over r in (0, 0.999] and polar angle; the azimuth is
// irrelevant because conjugation by exp(theta Z) commutes with L.
double bloch_grid_minimum(const IrrepGenerators& gen) {
  double best = INFINITY;
  for (int i = 1; i <= 200; ++i) {
    const double r = 0.999 * i / 200.0;
    for (int j = 0; j <= 40; ++j) {
      const double theta = M_PI / 2.0 * j / 40.0;
      const DensityMatrix rho(bloch(r, theta, 0.0));
      best = std::min(best, mlsi_ratio(gen, rho));
    }
  }
  return best;
}

} // namespace

TEST_CASE("mlsi_ratio errors") {
  const IrrepGenerators gen = build_generators(2);
  CHECK_THROWS_AS(mlsi_ratio(gen, DensityMatrix::maximally_mixed(2)), DegenerateDenominator);
  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK_THROWS_AS(mlsi_ratio(gen, DensityMatrix(pure)), SingularState);
  CHECK_THROWS_AS(mlsi_ratio(gen, DensityMatrix::maximally_mixed(3)), InvalidInput);
}

TEST_CASE("diagonal two-level closed form") {
  const IrrepGenerators gen = build_generators(2);
  for (double p : {0.05, 0.2, 0.4, 0.6, 0.93}) {
    CMatrix rho = CMatrix::Zero(2, 2);
    rho(0, 0) = p;
    rho(1, 1) = 1.0 - p;
    CHECK(mlsi_ratio(gen, DensityMatrix(rho)) == doctest::Approx(diagonal_ratio(p)).epsilon(1e-10));
    CHECK(diagonal_ratio(p) >= 8.0);
  }
}

TEST_CASE("near the fixed point the ratio approaches the gap") {
  const IrrepGenerators gen = build_generators(2);
  const DensityMatrix rho(bloch(1e-3, M_PI / 2.0, 0.0));
  CHECK(mlsi_ratio(gen, rho) == doctest::Approx(4.0).epsilon(0.01));
  // epsilon sweep: ratio - 4 shrinks quadratically
  double prev = INFINITY;
  for (double e : {0.2, 0.1, 0.05, 0.025}) {
    const double excess = mlsi_ratio(gen, DensityMatrix(bloch(e, M_PI / 2.0, 0.0))) - 4.0;
    CHECK(excess > 0.0);
    CHECK(excess < prev);
    CHECK(excess / (e * e) == doctest::Approx(4.0 / 6.0).epsilon(0.05));
    prev = excess;
  }
}

TEST_CASE("covariance under rotations about Z") {
  const IrrepGenerators gen = build_generators(2);
  Rng rng(1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho(random_density_matrix(2, rng, 0.05));
    const CMatrix u = expm_skew(angle(rng) * gen.z());
    const DensityMatrix rot(u * rho.matrix() * u.adjoint());
    CHECK(mlsi_ratio(gen, rot) == doctest::Approx(mlsi_ratio(gen, rho)).epsilon(1e-8));
  }
  for (int n : {2, 3}) {
    const IrrepGenerators g3 = build_generators(3);
    const DensityMatrix rho(random_density_matrix(3 * n, rng, 0.02));
    const CMatrix u = expm_skew(0.9 * g3.amplified(Direction::Z, n));
    const DensityMatrix rot(u * rho.matrix() * u.adjoint());
    CHECK(mlsi_ratio(g3, rot, n) == doctest::Approx(mlsi_ratio(g3, rho, n)).epsilon(1e-8));
  }
}

TEST_CASE("m = 2 optimizer versus the Bloch grid") {
  const IrrepGenerators gen = build_generators(2);
  MlsiConfig cfg;
  const LambdaReport r = estimate_lambda(gen, 1, cfg);
  const double grid = bloch_grid_minimum(gen);
  CHECK(r.lambda_hat <= grid + 1e-6);
  CHECK(r.lambda_hat <= r.gap + 1e-6);
  CHECK(r.gap == doctest::Approx(4.0));
  CHECK(r.starts.size() == 16);
  CHECK(mlsi_ratio(gen, r.argmin.rho) == doctest::Approx(r.lambda_hat).epsilon(1e-8));
  CHECK(std::isfinite(r.argmin.grad_norm));
}

TEST_CASE("optimizer errors and determinism") {
  MlsiConfig cfg;
  cfg.multistarts = 4;
  cfg.budget = 300;
  CHECK_THROWS_AS(estimate_lambda(build_generators(1), 1, cfg), DegenerateGenerator);
  MlsiConfig bad = cfg;
  bad.multistarts = 0;
  CHECK_THROWS_AS(estimate_lambda(build_generators(2), 1, bad), InvalidInput);

  const IrrepGenerators gen = build_generators(3);
  MlsiConfig threaded = cfg;
  threaded.threads = 3;
  const LambdaReport a = estimate_lambda(gen, 2, cfg);
  const LambdaReport b = estimate_lambda(gen, 2, threaded);
  CHECK(a.lambda_hat == b.lambda_hat);
  REQUIRE(a.starts.size() == b.starts.size());
  for (std::size_t k = 0; k < a.starts.size(); ++k) {
    CHECK(a.starts[k].final_ratio == b.starts[k].final_ratio);
  }
  // Budget is respected up to one simplex iteration.
  for (const OptimizerStart& s : a.starts) {
    CHECK(s.evaluations <= cfg.budget + 2 * 36 + 2);
  }
}

TEST_CASE("corner embedding preserves the ratio") {
  const IrrepGenerators gen = build_generators(2);
  Rng rng(4);
  const DensityMatrix rho(random_density_matrix(4, rng, 0.05));
  const DensityMatrix lifted = corner_embedding(rho, 2, 2);
  CHECK(lifted.dim() == 6);
  CHECK(mlsi_ratio(gen, lifted, 3) == doctest::Approx(mlsi_ratio(gen, rho, 2)).epsilon(1e-6));
  CHECK_THROWS_AS(corner_embedding(rho, 2, 3), InvalidInput);
}

TEST_CASE("cmlsi table") {
  MlsiConfig cfg;
  cfg.multistarts = 6;
  cfg.budget = 800;
  const std::vector<CmlsiCell> t = cmlsi_table({2, 3}, {1, 2, 3}, cfg);
  REQUIRE(t.size() == 6);
  for (const CmlsiCell& c : t) {
    CHECK(c.lambda_hat > 0.0);
    CHECK(c.lambda_hat <= c.gap + 1e-6);
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0 && t[i].m == t[i - 1].m) {
      CHECK(t[i].lambda_hat <= t[i - 1].lambda_hat * 1.1);
    }
  }
  CHECK_THROWS_AS(cmlsi_table({5}, {5}, cfg), InvalidInput);
  const std::vector<CmlsiCell> ones = cmlsi_table({2, 3, 4}, {1}, cfg);
  for (const CmlsiCell& c : ones) {
    CHECK(c.lambda_hat > 0.0);
  }
}

TEST_CASE("decay trajectory of the diagonal two-level state") {
  const IrrepGenerators gen = build_generators(2);
  CMatrix r0 = CMatrix::Zero(2, 2);
  r0(0, 0) = 0.9;
  r0(1, 1) = 0.1;
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) {
    times.push_back(0.05 * i);
  }
  times.push_back(0.1);
  times.push_back(0.5);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const DecayTrajectory tr = decay_trajectory(gen, 1, DensityMatrix(r0), times, 4.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double p = 0.5 + 0.4 * std::exp(-8.0 * times[i]);
    const double want = p * std::log(2.0 * p) + (1.0 - p) * std::log(2.0 * (1.0 - p));
    if (want > 1e-8) {
      CHECK(tr.entropies[i] == doctest::Approx(want).epsilon(1e-6));
    }
    CHECK(tr.entropies[i] >= -1e-10);
    CHECK(tr.fisher[i] >= 0.0);
  }
  for (double t : {0.1, 0.5}) {
    const auto it = std::find(times.begin(), times.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times.begin());
    CHECK(tr.entropy_rate[i] == doctest::Approx(tr.fisher[i]).epsilon(1e-3));
  }
  CHECK(tr.monotone);
  CHECK(tr.max_derivative_error < 1e-3);
  CHECK(tr.max_bound_excess <= 1e-6);
}

TEST_CASE("decay trajectories: fixed point and random states") {
  const IrrepGenerators gen = build_generators(3);
  const std::vector<double> times{0.0, 0.05, 0.1, 0.2, 0.4, 0.8};
  const DecayTrajectory flat = decay_trajectory(gen, 2, DensityMatrix::maximally_mixed(6), times, 4.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(flat.entropies[i]) < 1e-12);
    CHECK(std::abs(flat.fisher[i]) < 1e-12);
  }
  Rng rng(7);
  MlsiConfig cfg;
  cfg.multistarts = 4;
  cfg.budget = 600;
  const double lambda = estimate_lambda(gen, 2, cfg).lambda_hat;
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho(random_density_matrix(6, rng, 0.01));
    const DecayTrajectory tr = decay_trajectory(gen, 2, rho, times, lambda);
    CHECK(tr.monotone);
    CHECK(tr.max_derivative_error < 1e-3);
    CHECK(tr.max_bound_excess <= 1e-6);
  }
  CHECK_THROWS_AS(decay_trajectory(gen, 2, DensityMatrix::maximally_mixed(4), times, 4.0),
                  InvalidInput);
}

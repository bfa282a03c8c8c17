#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hypolog/peter_weyl.hpp"

namespace hypolog {

struct GradientEstimateConfig {
  int ensemble = 64;
  std::size_t points = 2000;
  int m_max = 4;
  std::uint64_t seed = 1;
  int threads = 1;
  int bootstrap = 200;
  double ridge = 1e-10;
  // Projection grid size as a multiple of the band 2 m_max - 1 dimension.
  double oversampling = 4.0;
};

// Max over ensemble members and sample points of Gamma(P_t f) / P_t Gamma(f).
struct CEstimate {
  double t = 0.0;
  double c_hat = 0.0;
  double std_error = 0.0; // bootstrap over members
  std::size_t skipped = 0; // (member, point) pairs with denominator < 1e-12
  std::size_t evaluated = 0;
  std::vector<double> member_max; // NaN for fully degenerate members
};

// Holds an ensemble of real scalar functions, the evaluation points and the
// band projection of each Gamma(f), so that many times can be evaluated
// without repeating the fits.
class GradientEstimator {
public:
  explicit GradientEstimator(const GradientEstimateConfig& cfg);
  GradientEstimator(std::vector<BandLimitedFunction> ensemble, const GradientEstimateConfig& cfg);

  CEstimate estimate(double t) const;

  const std::vector<BandLimitedFunction>& ensemble() const { return functions_; }
  const GradientEstimateConfig& config() const { return cfg_; }

private:
  void prepare();

  GradientEstimateConfig cfg_;
  std::vector<BandLimitedFunction> functions_;
  std::vector<GroupElement> points_;
  CMatrix phi_; // points x band_dimension(2 m_max - 1) synthesis matrix
  std::vector<BandLimitedFunction> gamma_fit_;
  std::vector<RVector> gamma_exact_;
};

CEstimate estimate_C(double t, const GradientEstimateConfig& cfg);

// Exact supremum of Gamma(P_t f)(g) / P_t Gamma(f)(g) over nonconstant real f
// of band <= m_max and all g. Both sides are Hermitian forms in the
// coefficients and left-invariant, so this is a generalized eigenvalue at the
// identity. P_t Gamma(f)(e) uses quadrature weights from a band 2 m_max - 1
// projection, exact up to the ridge.
class BandSupremum {
public:
  explicit BandSupremum(int m_max, std::uint64_t seed = 7, double ridge = 1e-10,
                        double oversampling = 4.0);
  double at(double t) const;
  int m_max() const { return m_max_; }

private:
  int m_max_;
  SampleGrid grid_;
  BandProjector projector_;
  CMatrix u_[2]; // per direction: points x coefficients, (pi(g) V)(b, a)
};

double band_sup_C(double t, int m_max);

struct GradientEstimateCurve {
  std::vector<double> times;
  std::vector<double> c_hat;
  std::vector<double> std_error;
  std::vector<std::size_t> skipped;
  int ensemble_size = 0;
  std::size_t points = 0;
  int m_max = 0;
  std::uint64_t seed = 0;
};

// {0} together with `count` log-spaced times in [t_lo, t_hi].
std::vector<double> default_time_grid(std::size_t count = 40, double t_lo = 0.01, double t_hi = 3.0);

GradientEstimateCurve estimate_curve(const std::vector<double>& times,
                                     const GradientEstimateConfig& cfg);

// Curve with exact values c(t) and zero error, for closed-form checks.
template <class Fn>
GradientEstimateCurve synthetic_curve(const std::vector<double>& times, Fn c) {
  GradientEstimateCurve curve;
  curve.times = times;
  for (double t : times) {
    curve.c_hat.push_back(c(t));
    curve.std_error.push_back(0.0);
    curve.skipped.push_back(0);
  }
  return curve;
}

struct DecayFit {
  double rate = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
  bool integrable = false; // rate < 0
};

// Least-squares line through (t, ln C_hat) for t_min <= t <= t_max.
DecayFit fit_decay(const GradientEstimateCurve& curve, double t_min = 1.0,
                   double t_max = std::numeric_limits<double>::infinity());

struct CmlsiEstimate {
  double kappa = 0.0;
  double lambda = 0.0;
  double lambda_error = 0.0; // half spread from C_hat -/+ std_error
  double t_cutoff = 0.0;
  std::string tail_model;
  double tail_rate = 0.0;
  double tail_prefactor = 0.0;
  double r2 = 0.0;
  double kappa_grid = 0.0;
  double kappa_tail = 0.0;
};

// kappa = int_0^inf C_hat with exponential interpolation between grid points
// and the fitted exponential beyond the last one; lambda = 1 / (2 kappa).
CmlsiEstimate kappa_and_lambda(const GradientEstimateCurve& curve, double t_min = 1.0);

// int_0^upper of the interpolated curve (fitted tail past the last time).
double integrate_curve(const GradientEstimateCurve& curve, double upper, const DecayFit* tail);

struct LambdaEps {
  double eps = 0.0;
  double t_eps = 0.0;
  double kappa_eps = 0.0;
  double lambda_eps = 0.0;
};

// t(eps) = ln(1/eps) / gap, kappa_eps = int_0^{t(eps)} C_hat,
// lambda_eps = (1 - eps) / (2 kappa_eps).
LambdaEps lambda_eps(const GradientEstimateCurve& curve, double gap, double eps,
                     double t_min = 1.0);

struct LambdaEpsScan {
  LambdaEps best;
  std::vector<LambdaEps> all;
};

// Scans eps in {0.1, ..., 0.9} and keeps the largest lambda_eps.
LambdaEpsScan lambda_eps_pipeline(const GradientEstimateCurve& curve, double gap,
                                  double t_min = 1.0);

struct MatrixGeReport {
  double min_margin = 0.0; // min over points of lambda_min(C [P_t Gamma] - [Gamma(P_t .)])
  double scale = 1.0; // max(1, max over points of ||C [P_t Gamma]||)
  std::size_t points = 0;
};

// [Gamma(P_t f_i, P_t f_j)] <= C [P_t Gamma(f_i, f_j)] pointwise on Haar samples.
MatrixGeReport matrix_ge_check(const std::vector<BandLimitedFunction>& f_list, double t, double C,
                               std::size_t points, std::uint64_t seed, double ridge = 1e-10);

struct LiebFormReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0; // rhs - lhs
  double relative_margin = 0.0;
  double std_error = 0.0; // Monte-Carlo error of the margin
  std::size_t points = 0;
};

// Compares int tr((V P_t F)^* A^s (V P_t F) B^{1-s}) summed over V in {X, Y}
// against C int tr((V F)^* (P_t A)^s (V F) (P_t B)^{1-s}) by Haar Monte Carlo.
LiebFormReport lieb_form_check(const BandLimitedFunction& F, const BandLimitedFunction& A,
                               const BandLimitedFunction& B, double s, double t, double C,
                               std::size_t points, std::uint64_t seed);

// Seed for stream `stream`, item `index` derived from a base seed.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

} // namespace hypolog

#include "hypolog/gradient_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypolog/parallel.hpp"

namespace hypolog {

namespace {

constexpr double kDenominatorFloor = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t band_offset(int m) { return band_dimension(m - 1); }

// Scalar coefficients in (m, a, b) order, zero-padded to band `width`.
CVector flatten(const BandLimitedFunction& f, int width) {
  CVector c = CVector::Zero(static_cast<Eigen::Index>(band_dimension(width)));
  for (int m = 1; m <= f.m_max(); ++m) {
    const auto off = static_cast<Eigen::Index>(band_offset(m));
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        c(off + a * m + b) = f.block(m)(a, b);
      }
    }
  }
  return c;
}

// Row i holds pi_m(g_i)_{ba} in column (m, a, b).
CMatrix synthesis_matrix(const std::vector<GroupElement>& points, int width) {
  CMatrix phi(static_cast<Eigen::Index>(points.size()),
              static_cast<Eigen::Index>(band_dimension(width)));
  for (std::size_t i = 0; i < points.size(); ++i) {
    Eigen::Index col = 0;
    for (int m = 1; m <= width; ++m) {
      const CMatrix pi = pi_m(irrep(m), points[i]);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          phi(static_cast<Eigen::Index>(i), col++) = pi(b, a);
        }
      }
    }
  }
  return phi;
}

std::size_t projection_points(int width, double oversampling) {
  return static_cast<std::size_t>(
      std::ceil(std::max(oversampling, 2.0) * static_cast<double>(band_dimension(width))));
}

void require_scalar_ensemble(const std::vector<BandLimitedFunction>& fs, const char* where) {
  if (fs.empty()) {
    throw InvalidInput(std::string(where) + ": empty function list");
  }
  for (const BandLimitedFunction& f : fs) {
    if (f.value_dim() != 1 || f.m_max() != fs.front().m_max()) {
      throw InvalidInput(std::string(where) + ": functions must be scalar with a common band");
    }
  }
}

// Gamma(f_i, f_j) matrices on a grid for scalar f_i.
std::vector<CMatrix> gamma_matrix(const std::vector<BandLimitedFunction>& fs,
                                  const SampleGrid& grid) {
  const auto n = static_cast<Eigen::Index>(fs.size());
  CMatrix vx(static_cast<Eigen::Index>(grid.size()), n);
  CMatrix vy(static_cast<Eigen::Index>(grid.size()), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const BandLimitedFunction xf = vector_field(fs[static_cast<std::size_t>(i)], Direction::X);
    const BandLimitedFunction yf = vector_field(fs[static_cast<std::size_t>(i)], Direction::Y);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      vx(static_cast<Eigen::Index>(k), i) = evaluate_at(xf, grid, k)(0, 0);
      vy(static_cast<Eigen::Index>(k), i) = evaluate_at(yf, grid, k)(0, 0);
    }
  }
  std::vector<CMatrix> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    out[k] = vx.row(r).adjoint() * vx.row(r) + vy.row(r).adjoint() * vy.row(r);
  }
  return out;
}

double slope_integral(double t0, double t1, double c0, double c1) {
  // exact integral of the exponential through (t0, c0) and (t1, c1)
  const double h = t1 - t0;
  if (c0 <= 0.0 || c1 <= 0.0) {
    return 0.5 * h * (c0 + c1);
  }
  const double r = std::log(c1 / c0);
  if (std::abs(r) < 1e-12) {
    return h * 0.5 * (c0 + c1);
  }
  return h * (c1 - c0) / r;
}

double tail_integral(const DecayFit& fit, double a, double b) {
  if (fit.rate == 0.0) {
    return fit.prefactor * (b - a);
  }
  if (std::isinf(b)) {
    if (fit.rate >= 0.0) {
      throw NonIntegrableTail("fitted tail rate is nonnegative");
    }
    return -fit.prefactor * std::exp(fit.rate * a) / fit.rate;
  }
  return fit.prefactor * (std::exp(fit.rate * b) - std::exp(fit.rate * a)) / fit.rate;
}

GradientEstimateCurve shifted(const GradientEstimateCurve& curve, double sign) {
  GradientEstimateCurve out = curve;
  for (std::size_t i = 0; i < out.c_hat.size(); ++i) {
    out.c_hat[i] = std::max(curve.c_hat[i] + sign * curve.std_error[i], 1e-300);
  }
  return out;
}

void validate_curve(const GradientEstimateCurve& curve) {
  if (curve.times.empty() || curve.times.size() != curve.c_hat.size()) {
    throw InvalidInput("curve: times and C_hat must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    if (curve.times[i] < 0.0 || (i > 0 && curve.times[i] <= curve.times[i - 1])) {
      throw InvalidInput("curve: times must be nonnegative and strictly increasing");
    }
    if (!(curve.c_hat[i] > 0.0) || !std::isfinite(curve.c_hat[i])) {
      throw InvalidInput("curve: C_hat values must be positive and finite");
    }
  }
}

} // namespace

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

GradientEstimator::GradientEstimator(const GradientEstimateConfig& cfg) : cfg_(cfg) {
  if (cfg.ensemble < 1 || cfg.m_max < 1) {
    throw InvalidInput("GradientEstimator: ensemble and m_max must be positive");
  }
  functions_.reserve(static_cast<std::size_t>(cfg.ensemble));
  for (int k = 0; k < cfg.ensemble; ++k) {
    Rng rng(sub_seed(cfg.seed, 0, static_cast<std::uint64_t>(k)));
    functions_.push_back(random_real_function(cfg.m_max, rng));
  }
  prepare();
}

GradientEstimator::GradientEstimator(std::vector<BandLimitedFunction> ensemble,
                                     const GradientEstimateConfig& cfg)
    : cfg_(cfg), functions_(std::move(ensemble)) {
  require_scalar_ensemble(functions_, "GradientEstimator");
  cfg_.m_max = functions_.front().m_max();
  cfg_.ensemble = static_cast<int>(functions_.size());
  prepare();
}

void GradientEstimator::prepare() {
  if (cfg_.points < 1) {
    throw InvalidInput("GradientEstimator: points must be positive");
  }
  const int wide = 2 * cfg_.m_max - 1;
  points_ = haar_sample(sub_seed(cfg_.seed, 1, 0), cfg_.points);
  phi_ = synthesis_matrix(points_, wide);
  const SampleGrid grid(haar_sample(sub_seed(cfg_.seed, 2, 0),
                                    projection_points(wide, cfg_.oversampling)),
                        wide);
  const BandProjector projector(grid, wide, cfg_.ridge);
  const auto narrow = static_cast<Eigen::Index>(band_dimension(cfg_.m_max));

  gamma_fit_.assign(functions_.size(), BandLimitedFunction());
  gamma_exact_.assign(functions_.size(), RVector());
  parallel_for(functions_.size(), cfg_.threads, [&](std::size_t k) {
    const BandLimitedFunction& f = functions_[k];
    gamma_fit_[k] = projector.project(gamma(f, f, grid).values).fit;
    const CVector xv = phi_.leftCols(narrow) * flatten(vector_field(f, Direction::X), cfg_.m_max);
    const CVector yv = phi_.leftCols(narrow) * flatten(vector_field(f, Direction::Y), cfg_.m_max);
    gamma_exact_[k] = xv.cwiseAbs2() + yv.cwiseAbs2();
  });
}

CEstimate GradientEstimator::estimate(double t) const {
  if (t < 0.0) {
    throw InvalidInput("estimate_C: t must be nonnegative");
  }
  const int wide = 2 * cfg_.m_max - 1;
  const auto narrow = static_cast<Eigen::Index>(band_dimension(cfg_.m_max));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  CEstimate out;
  out.t = t;
  out.member_max.assign(functions_.size(), nan);
  std::vector<std::size_t> skipped(functions_.size(), 0);
  parallel_for(functions_.size(), cfg_.threads, [&](std::size_t k) {
    const BandLimitedFunction pf = heat_semigroup(functions_[k], t);
    const CVector xv = phi_.leftCols(narrow) * flatten(vector_field(pf, Direction::X), cfg_.m_max);
    const CVector yv = phi_.leftCols(narrow) * flatten(vector_field(pf, Direction::Y), cfg_.m_max);
    const RVector num = xv.cwiseAbs2() + yv.cwiseAbs2();
    const RVector den = t == 0.0
                            ? gamma_exact_[k]
                            : RVector((phi_ * flatten(heat_semigroup(gamma_fit_[k], t), wide)).real());
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < num.size(); ++i) {
      if (den(i) < kDenominatorFloor) {
        ++skipped[k];
        continue;
      }
      best = std::max(best, num(i) / den(i));
    }
    if (std::isfinite(best)) {
      out.member_max[k] = best;
    }
  });

  std::vector<double> valid;
  for (double v : out.member_max) {
    if (!std::isnan(v)) {
      valid.push_back(v);
    }
  }
  out.skipped = std::accumulate(skipped.begin(), skipped.end(), std::size_t{0});
  out.evaluated = functions_.size() * points_.size() - out.skipped;
  if (valid.empty()) {
    throw DegenerateEnsemble("estimate_C: every denominator is below the floor");
  }
  out.c_hat = *std::max_element(valid.begin(), valid.end());

  if (cfg_.bootstrap > 1 && valid.size() > 1) {
    Rng rng(sub_seed(cfg_.seed, 3, 0));
    std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
    std::vector<double> maxima(static_cast<std::size_t>(cfg_.bootstrap));
    for (double& mx : maxima) {
      mx = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < valid.size(); ++j) {
        mx = std::max(mx, valid[pick(rng)]);
      }
    }
    const double mu = std::accumulate(maxima.begin(), maxima.end(), 0.0) /
                      static_cast<double>(maxima.size());
    double var = 0.0;
    for (double mx : maxima) {
      var += (mx - mu) * (mx - mu);
    }
    out.std_error = std::sqrt(var / static_cast<double>(maxima.size() - 1));
  }
  return out;
}

CEstimate estimate_C(double t, const GradientEstimateConfig& cfg) {
  return GradientEstimator(cfg).estimate(t);
}

BandSupremum::BandSupremum(int m_max, std::uint64_t seed, double ridge, double oversampling)
    : m_max_(m_max),
      grid_(haar_sample(seed, projection_points(2 * m_max - 1, oversampling)), 2 * m_max - 1),
      projector_(grid_, 2 * m_max - 1, ridge) {
  const auto k = static_cast<Eigen::Index>(band_dimension(m_max));
  const Direction dirs[2] = {Direction::X, Direction::Y};
  for (int d = 0; d < 2; ++d) {
    CMatrix u(static_cast<Eigen::Index>(grid_.size()), k);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      Eigen::Index col = 0;
      for (int m = 1; m <= m_max; ++m) {
        const CMatrix pv = grid_.rep(i, m) * irrep(m)[dirs[d]];
        for (int a = 0; a < m; ++a) {
          for (int b = 0; b < m; ++b) {
            u(static_cast<Eigen::Index>(i), col++) = pv(b, a);
          }
        }
      }
    }
    u_[d] = std::move(u);
  }
}

double BandSupremum::at(double t) const {
  if (t < 0.0) {
    throw InvalidInput("BandSupremum: t must be nonnegative");
  }
  if (t == 0.0) {
    return 1.0;
  }
  const int wide = 2 * m_max_ - 1;
  CVector w = CVector::Zero(static_cast<Eigen::Index>(band_dimension(wide)));
  for (int m = 1; m <= wide; ++m) {
    const RVector h = horizontal_symbol(irrep(m)).matrix().diagonal().real();
    const auto off = static_cast<Eigen::Index>(band_offset(m));
    for (int a = 0; a < m; ++a) {
      w(off + a * m + a) = std::exp(t * h(a));
    }
  }
  const CVector rho = projector_.point_weights(w);

  const auto k = static_cast<Eigen::Index>(band_dimension(m_max_));
  CMatrix qden = CMatrix::Zero(k, k);
  CMatrix qnum = CMatrix::Zero(k, k);
  const Direction dirs[2] = {Direction::X, Direction::Y};
  for (int d = 0; d < 2; ++d) {
    qden += u_[d].adjoint() * rho.asDiagonal() * u_[d];
    CVector ue(k);
    Eigen::Index col = 0;
    for (int m = 1; m <= m_max_; ++m) {
      const CMatrix& v = irrep(m)[dirs[d]];
      const RVector h = horizontal_symbol(irrep(m)).matrix().diagonal().real();
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          ue(col++) = std::exp(t * h(a)) * v(b, a);
        }
      }
    }
    qnum += ue.conjugate() * ue.transpose();
  }
  // constants (the m = 1 coordinate) give 0/0 and are dropped
  const CMatrix den = HermitianMatrix(qden.bottomRightCorner(k - 1, k - 1)).matrix();
  const CMatrix num = HermitianMatrix(qnum.bottomRightCorner(k - 1, k - 1)).matrix();
  const Eigen::LLT<CMatrix> llt(den);
  if (llt.info() != Eigen::Success) {
    throw SingularMatrix("BandSupremum: P_t Gamma form is not positive definite");
  }
  const CMatrix linv = llt.matrixL().solve(CMatrix::Identity(k - 1, k - 1));
  const CMatrix reduced = linv * num * linv.adjoint();
  return eig_hermitian(HermitianMatrix(reduced)).eigenvalues.maxCoeff();
}

double band_sup_C(double t, int m_max) { return BandSupremum(m_max).at(t); }

std::vector<double> default_time_grid(std::size_t count, double t_lo, double t_hi) {
  if (count < 2 || !(t_lo > 0.0) || !(t_hi > t_lo)) {
    throw InvalidInput("default_time_grid: need count >= 2 and 0 < t_lo < t_hi");
  }
  std::vector<double> times{0.0};
  const double l0 = std::log(t_lo);
  const double l1 = std::log(t_hi);
  for (std::size_t i = 0; i < count; ++i) {
    times.push_back(std::exp(l0 + (l1 - l0) * static_cast<double>(i) /
                                      static_cast<double>(count - 1)));
  }
  times.back() = t_hi;
  return times;
}

GradientEstimateCurve estimate_curve(const std::vector<double>& times,
                                     const GradientEstimateConfig& cfg) {
  const GradientEstimator estimator(cfg);
  GradientEstimateCurve curve;
  curve.ensemble_size = cfg.ensemble;
  curve.points = cfg.points;
  curve.m_max = cfg.m_max;
  curve.seed = cfg.seed;
  for (double t : times) {
    const CEstimate e = estimator.estimate(t);
    curve.times.push_back(t);
    curve.c_hat.push_back(e.c_hat);
    curve.std_error.push_back(e.std_error);
    curve.skipped.push_back(e.skipped);
  }
  return curve;
}

DecayFit fit_decay(const GradientEstimateCurve& curve, double t_min, double t_max) {
  if (curve.times.size() != curve.c_hat.size()) {
    throw InvalidInput("fit_decay: times and C_hat differ in length");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    const double t = curve.times[i];
    if (t < t_min || t > t_max) {
      continue;
    }
    if (!(curve.c_hat[i] > 0.0)) {
      throw InvalidInput("fit_decay: C_hat must be positive on the fitted range");
    }
    xs.push_back(t);
    ys.push_back(std::log(curve.c_hat[i]));
  }
  if (xs.size() < 5) {
    throw InvalidInput("fit_decay: need at least 5 grid points in the fitted range");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  DecayFit fit;
  fit.points = xs.size();
  fit.rate = sxy / sxx;
  fit.prefactor = std::exp(my - fit.rate * mx);
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.integrable = fit.rate < 0.0;
  return fit;
}

double integrate_curve(const GradientEstimateCurve& curve, double upper, const DecayFit* tail) {
  validate_curve(curve);
  if (upper < 0.0) {
    throw InvalidInput("integrate_curve: upper limit must be nonnegative");
  }
  const std::vector<double>& ts = curve.times;
  const std::vector<double>& cs = curve.c_hat;
  // flat extension back to 0 if the grid starts later
  double total = std::min(upper, ts.front()) * cs.front();
  for (std::size_t i = 0; i + 1 < ts.size() && ts[i] < upper; ++i) {
    if (ts[i + 1] <= upper) {
      total += slope_integral(ts[i], ts[i + 1], cs[i], cs[i + 1]);
    } else {
      const double frac = (upper - ts[i]) / (ts[i + 1] - ts[i]);
      const double c_up = cs[i] * std::pow(cs[i + 1] / cs[i], frac);
      total += slope_integral(ts[i], upper, cs[i], c_up);
    }
  }
  if (upper > ts.back()) {
    if (tail == nullptr) {
      throw InvalidInput("integrate_curve: upper limit beyond the grid needs a tail model");
    }
    total += tail_integral(*tail, ts.back(), upper);
  }
  return total;
}

CmlsiEstimate kappa_and_lambda(const GradientEstimateCurve& curve, double t_min) {
  validate_curve(curve);
  const DecayFit fit = fit_decay(curve, t_min);
  if (!fit.integrable) {
    throw NonIntegrableTail("kappa_and_lambda: fitted tail rate " + std::to_string(fit.rate) +
                            " is not negative");
  }
  CmlsiEstimate est;
  est.t_cutoff = curve.times.back();
  est.tail_model = "exponential";
  est.tail_rate = fit.rate;
  est.tail_prefactor = fit.prefactor;
  est.r2 = fit.r2;
  est.kappa_grid = integrate_curve(curve, est.t_cutoff, nullptr);
  est.kappa_tail = tail_integral(fit, est.t_cutoff, std::numeric_limits<double>::infinity());
  est.kappa = est.kappa_grid + est.kappa_tail;
  est.lambda = 1.0 / (2.0 * est.kappa);

  const bool has_error = std::any_of(curve.std_error.begin(), curve.std_error.end(),
                                     [](double e) { return e > 0.0; });
  if (has_error && curve.std_error.size() == curve.c_hat.size()) {
    const auto lambda_of = [&](const GradientEstimateCurve& c) {
      const DecayFit f = fit_decay(c, t_min);
      if (!f.integrable) {
        return 0.0;
      }
      return 1.0 / (2.0 * (integrate_curve(c, est.t_cutoff, nullptr) +
                           tail_integral(f, est.t_cutoff, std::numeric_limits<double>::infinity())));
    };
    est.lambda_error = 0.5 * std::abs(lambda_of(shifted(curve, -1.0)) - lambda_of(shifted(curve, 1.0)));
  }
  return est;
}

LambdaEps lambda_eps(const GradientEstimateCurve& curve, double gap, double eps, double t_min) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InvalidInput("lambda_eps: eps must lie in (0, 1)");
  }
  if (!(gap > 0.0)) {
    throw InvalidInput("lambda_eps: gap must be positive");
  }
  validate_curve(curve);
  LambdaEps out;
  out.eps = eps;
  out.t_eps = std::log(1.0 / eps) / gap;
  DecayFit fit;
  const DecayFit* tail = nullptr;
  if (out.t_eps > curve.times.back()) {
    fit = fit_decay(curve, t_min);
    tail = &fit;
  }
  out.kappa_eps = integrate_curve(curve, out.t_eps, tail);
  out.lambda_eps = (1.0 - eps) / (2.0 * out.kappa_eps);
  return out;
}

LambdaEpsScan lambda_eps_pipeline(const GradientEstimateCurve& curve, double gap, double t_min) {
  LambdaEpsScan scan;
  for (int i = 1; i <= 9; ++i) {
    scan.all.push_back(lambda_eps(curve, gap, 0.1 * i, t_min));
  }
  scan.best = *std::max_element(scan.all.begin(), scan.all.end(),
                                [](const LambdaEps& a, const LambdaEps& b) {
                                  return a.lambda_eps < b.lambda_eps;
                                });
  return scan;
}

MatrixGeReport matrix_ge_check(const std::vector<BandLimitedFunction>& f_list, double t, double C,
                               std::size_t points, std::uint64_t seed, double ridge) {
  require_scalar_ensemble(f_list, "matrix_ge_check");
  if (t < 0.0) {
    throw InvalidInput("matrix_ge_check: t must be nonnegative");
  }
  const int m_max = f_list.front().m_max();
  const int wide = 2 * m_max - 1;
  const SampleGrid eval(haar_sample(sub_seed(seed, 1, 0), points), wide);

  std::vector<BandLimitedFunction> pf;
  for (const BandLimitedFunction& f : f_list) {
    pf.push_back(heat_semigroup(f, t));
  }
  const std::vector<CMatrix> num = gamma_matrix(pf, eval);
  std::vector<CMatrix> den;
  if (t == 0.0) {
    den = gamma_matrix(f_list, eval);
  } else {
    const SampleGrid grid(haar_sample(sub_seed(seed, 2, 0), projection_points(wide, 4.0)), wide);
    const BandProjection proj = BandProjector(grid, wide, ridge).project(gamma_matrix(f_list, grid));
    den = evaluate(heat_semigroup(proj.fit, t), eval);
  }

  MatrixGeReport report;
  report.points = eval.size();
  report.min_margin = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (std::size_t k = 0; k < eval.size(); ++k) {
    const CMatrix rhs = C * den[k];
    scale = std::max(scale, eig_hermitian(HermitianMatrix(rhs)).eigenvalues.cwiseAbs().maxCoeff());
    report.min_margin = std::min(report.min_margin, min_eigenvalue(HermitianMatrix(rhs - num[k])));
  }
  report.scale = scale;
  return report;
}

LiebFormReport lieb_form_check(const BandLimitedFunction& F, const BandLimitedFunction& A,
                               const BandLimitedFunction& B, double s, double t, double C,
                               std::size_t points, std::uint64_t seed) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidInput("lieb_form_check: s must lie in [0, 1]");
  }
  if (t < 0.0) {
    throw InvalidInput("lieb_form_check: t must be nonnegative");
  }
  if (F.value_dim() != A.value_dim() || F.value_dim() != B.value_dim()) {
    throw InvalidInput("lieb_form_check: value dimensions differ");
  }
  if (points < 2) {
    throw InvalidInput("lieb_form_check: need at least two points");
  }
  const int band = std::max({F.m_max(), A.m_max(), B.m_max()});
  const SampleGrid grid(haar_sample(seed, points), band);

  const BandLimitedFunction pf = heat_semigroup(F, t);
  const BandLimitedFunction pa = heat_semigroup(A, t);
  const BandLimitedFunction pb = heat_semigroup(B, t);
  const Direction dirs[2] = {Direction::X, Direction::Y};
  const BandLimitedFunction vpf[2] = {vector_field(pf, dirs[0]), vector_field(pf, dirs[1])};
  const BandLimitedFunction vf[2] = {vector_field(F, dirs[0]), vector_field(F, dirs[1])};

  const auto power = [](const CMatrix& m, double e) {
    const HermitianMatrix h(m);
    if (min_eigenvalue(h) <= 0.0) {
      throw InvalidInput("lieb_form_check: weight is not strictly positive at a sample point");
    }
    return matrix_function(h, MatrixFunction::power(e)).matrix();
  };

  std::vector<double> lhs(grid.size());
  std::vector<double> rhs(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const CMatrix as = power(evaluate_at(A, grid, k), s);
    const CMatrix bs = power(evaluate_at(B, grid, k), 1.0 - s);
    const CMatrix pas = power(evaluate_at(pa, grid, k), s);
    const CMatrix pbs = power(evaluate_at(pb, grid, k), 1.0 - s);
    double l = 0.0;
    double r = 0.0;
    for (int d = 0; d < 2; ++d) {
      const CMatrix g = evaluate_at(vpf[d], grid, k);
      const CMatrix h = evaluate_at(vf[d], grid, k);
      l += (g.adjoint() * as * g * bs).trace().real();
      r += (h.adjoint() * pas * h * pbs).trace().real();
    }
    lhs[k] = l;
    rhs[k] = C * r;
  }

  LiebFormReport report;
  report.points = grid.size();
  const double n = static_cast<double>(grid.size());
  double md = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    report.lhs += lhs[k] / n;
    report.rhs += rhs[k] / n;
    md += (rhs[k] - lhs[k]) / n;
  }
  double var = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double d = rhs[k] - lhs[k] - md;
    var += d * d;
  }
  report.margin = report.rhs - report.lhs;
  report.relative_margin = report.rhs > 0.0 ? report.margin / report.rhs : 0.0;
  report.std_error = std::sqrt(var / (n - 1.0) / n);
  return report;
}

} // namespace hypolog

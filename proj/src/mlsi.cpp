#include "hypolog/mlsi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "hypolog/gradient_estimate.hpp"
#include "hypolog/parallel.hpp"

namespace hypolog {

namespace {

constexpr double kPenalty = 1e10;
constexpr double kDegenerateEntropy = 1e-12;

int param_count(Eigen::Index d) { return static_cast<int>(d * d); }

CMatrix hermitian_from_params(const double* x, Eigen::Index d) {
  CMatrix h = CMatrix::Zero(d, d);
  int k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    h(i, i) = x[k++];
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      h(i, j) = cplx(x[k], x[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  return h;
}

std::vector<double> params_from_hermitian(const CMatrix& h) {
  const Eigen::Index d = h.rows();
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(param_count(d)));
  for (Eigen::Index i = 0; i < d; ++i) {
    x.push_back(h(i, i).real());
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      x.push_back(h(i, j).real());
      x.push_back(h(i, j).imag());
    }
  }
  return x;
}

// exp(H) / tr exp(H), computed with the top eigenvalue shifted to zero.
DensityMatrix gibbs_state(const CMatrix& h) {
  const Spectrum s = eig_hermitian(HermitianMatrix(h));
  const RVector w = (s.eigenvalues.array() - s.eigenvalues.maxCoeff()).exp();
  const CMatrix rho = s.eigenvectors * (w / w.sum()).cast<cplx>().asDiagonal() *
                      s.eigenvectors.adjoint();
  return DensityMatrix(HermitianMatrix(rho).matrix());
}

struct Objective {
  const IrrepGenerators* gen = nullptr;
  int n = 1;
  Eigen::Index d = 0;
  double floor = 0.0;
  int evaluations = 0;
};

double raw_ratio(const Objective& obj, const double* x) {
  try {
    const DensityMatrix rho = gibbs_state(hermitian_from_params(x, obj.d));
    const double ent =
        relative_entropy(rho.matrix(), conditional_expectation(rho.matrix(), obj.gen->m(), obj.n));
    if (!(ent >= obj.floor)) {
      return kPenalty;
    }
    const double r = mlsi_ratio(*obj.gen, rho, obj.n);
    return std::isfinite(r) ? r : kPenalty;
  } catch (const Error&) {
    return kPenalty;
  }
}

double gsl_objective(const gsl_vector* v, void* params) {
  auto* obj = static_cast<Objective*>(params);
  ++obj->evaluations;
  return raw_ratio(*obj, v->data);
}

// Hermitian unit-norm element of the slowest nonzero eigenspace of L.
CMatrix gap_direction(const Superoperator& l, double gap) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(HermitianMatrix(l.matrix).matrix());
  Eigen::Index best = 0;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    if (std::abs(eig.eigenvalues()(k) + gap) < std::abs(eig.eigenvalues()(best) + gap)) {
      best = k;
    }
  }
  const CMatrix x = unvec(eig.eigenvectors().col(best), l.dim);
  CMatrix h = 0.5 * (x + x.adjoint());
  if (h.norm() < 1e-6) {
    h = cplx(0.0, 0.5) * (x - x.adjoint());
  }
  return h / h.norm();
}

struct StartPoint {
  std::string kind;
  std::uint64_t seed = 0;
  CMatrix h;
  double step = 0.5;
};

RatioLandscapePoint run_start(const IrrepGenerators& gen, int n, const MlsiConfig& cfg,
                              const StartPoint& start, OptimizerStart& log) {
  Objective obj;
  obj.gen = &gen;
  obj.n = n;
  obj.d = start.h.rows();
  obj.floor = cfg.entropy_floor;
  const int dim = param_count(obj.d);
  const std::vector<double> x0 = params_from_hermitian(start.h);

  log.kind = start.kind;
  log.seed = start.seed;
  log.initial_ratio = raw_ratio(obj, x0.data());

  gsl_vector* x = gsl_vector_alloc(static_cast<std::size_t>(dim));
  gsl_vector* step = gsl_vector_alloc(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    gsl_vector_set(x, static_cast<std::size_t>(i), x0[static_cast<std::size_t>(i)]);
  }
  gsl_vector_set_all(step, start.step);
  gsl_multimin_function fn{&gsl_objective, static_cast<std::size_t>(dim), &obj};
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, static_cast<std::size_t>(dim));
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  bool converged = false;
  while (obj.evaluations < cfg.budget) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) {
      break;
    }
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-9) == GSL_SUCCESS) {
      converged = true;
      break;
    }
  }
  std::vector<double> best(static_cast<std::size_t>(dim));
  const gsl_vector* xb = gsl_multimin_fminimizer_x(s);
  for (int i = 0; i < dim; ++i) {
    best[static_cast<std::size_t>(i)] = gsl_vector_get(xb, static_cast<std::size_t>(i));
  }
  double fbest = gsl_multimin_fminimizer_minimum(s);
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);

  // the simplex only reports improvements; keep the start if it was better
  if (!(fbest <= log.initial_ratio)) {
    best = x0;
    fbest = log.initial_ratio;
  }

  log.evaluations = obj.evaluations;
  log.converged = converged;
  RatioLandscapePoint point;
  if (fbest >= kPenalty) {
    log.final_ratio = std::numeric_limits<double>::infinity();
    point.ratio = log.final_ratio;
    return point;
  }
  point.rho = gibbs_state(hermitian_from_params(best.data(), obj.d));
  point.ratio = mlsi_ratio(gen, point.rho, n);
  log.final_ratio = point.ratio;

  const double hstep = 1e-6;
  double g2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    std::vector<double> xp = best;
    std::vector<double> xm = best;
    xp[static_cast<std::size_t>(i)] += hstep;
    xm[static_cast<std::size_t>(i)] -= hstep;
    const double g = (raw_ratio(obj, xp.data()) - raw_ratio(obj, xm.data())) / (2.0 * hstep);
    g2 += g * g;
  }
  point.grad_norm = std::sqrt(g2);
  return point;
}

} // namespace

double mlsi_ratio(const IrrepGenerators& gen, const DensityMatrix& rho, int amplification) {
  const int m = gen.m();
  if (rho.dim() != static_cast<Eigen::Index>(m) * amplification) {
    throw InvalidInput("mlsi_ratio: state dimension does not match m * n");
  }
  if (min_eigenvalue(rho.hermitian()) <= kEigFloor) {
    throw SingularState("mlsi_ratio: state is not strictly positive");
  }
  const double ent =
      relative_entropy(rho.matrix(), conditional_expectation(rho.matrix(), m, amplification));
  if (!(ent >= kDegenerateEntropy)) {
    throw DegenerateDenominator("mlsi_ratio: relative entropy to the fixed point below 1e-12");
  }
  return fisher_information(gen, rho, amplification) / (2.0 * ent);
}

LambdaReport estimate_lambda(const IrrepGenerators& gen, int amplification, const MlsiConfig& cfg,
                             const std::vector<DensityMatrix>& extra_starts) {
  if (cfg.multistarts < 1 || cfg.budget < 1) {
    throw InvalidInput("estimate_lambda: multistarts and budget must be positive");
  }
  gsl_set_error_handler_off();
  const int n = amplification;
  const Eigen::Index d = static_cast<Eigen::Index>(gen.m()) * n;
  const Superoperator l = lindblad_generator(gen, n);

  LambdaReport report;
  report.gap = spectral_gap(l);

  std::vector<StartPoint> starts;
  const CMatrix dir = gap_direction(l, report.gap);
  // D ~ (d / 2) eps^2 near I/d; aim just above the optimizer floor.
  const double eps = std::sqrt(4.0 * std::max(cfg.entropy_floor, 1e-8) / static_cast<double>(d));
  const CMatrix sigma = CMatrix::Identity(d, d) / static_cast<double>(d);
  for (int k = 0; k < cfg.multistarts; ++k) {
    StartPoint sp;
    sp.seed = sub_seed(cfg.seed, 10, static_cast<std::uint64_t>(k));
    Rng rng(sp.seed);
    if (k < 2) {
      sp.kind = k == 0 ? "near_fixed_plus" : "near_fixed_minus";
      const CMatrix rho = sigma + (k == 0 ? eps : -eps) * dir;
      sp.h = matrix_function(HermitianMatrix(rho), MatrixFunction::log()).matrix();
      sp.step = 0.5 * static_cast<double>(d) * eps;
    } else if (k == 2) {
      sp.kind = "near_pure";
      const CMatrix g = random_gaussian_matrix(d, 1, rng);
      const CMatrix psi = g / g.norm();
      sp.h = std::log(1e6) * psi * psi.adjoint();
    } else {
      sp.kind = "random";
      sp.h = random_hermitian(d, rng).matrix();
    }
    starts.push_back(sp);
  }
  for (std::size_t k = 0; k < extra_starts.size(); ++k) {
    StartPoint sp;
    sp.kind = "seeded";
    sp.seed = k;
    sp.h = matrix_function(extra_starts[k].hermitian(), MatrixFunction::log()).matrix();
    sp.step = 0.05;
    starts.push_back(sp);
  }

  std::vector<RatioLandscapePoint> points(starts.size());
  report.starts.resize(starts.size());
  parallel_for(starts.size(), cfg.threads, [&](std::size_t k) {
    points[k] = run_start(gen, n, cfg, starts[k], report.starts[k]);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].ratio < points[best].ratio) {
      best = k;
    }
  }
  if (!std::isfinite(points[best].ratio)) {
    throw DegenerateDenominator("estimate_lambda: no start produced an admissible state");
  }
  report.lambda_hat = points[best].ratio;
  report.argmin = points[best];
  report.converged = report.starts[best].converged;
  return report;
}

DensityMatrix corner_embedding(const DensityMatrix& rho, int m, int k, double mix) {
  if (rho.dim() != static_cast<Eigen::Index>(m) * k) {
    throw InvalidInput("corner_embedding: state dimension does not match m * k");
  }
  const int n = k + 1;
  const Eigen::Index d = static_cast<Eigen::Index>(m) * n;
  CMatrix out = CMatrix::Zero(d, d);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      out.block(a * n, b * n, k, k) = rho.matrix().block(a * k, b * k, k, k);
    }
  }
  out = (1.0 - mix) * out + mix * CMatrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix(out);
}

std::vector<CmlsiCell> cmlsi_table(const std::vector<int>& m_list, const std::vector<int>& n_list,
                                   const MlsiConfig& cfg) {
  std::vector<int> ns = n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int m : m_list) {
    for (int n : ns) {
      if (m < 1 || n < 1 || m * n > 20) {
        throw InvalidInput("cmlsi_table: need m, n >= 1 and m n <= 20");
      }
    }
  }
  std::vector<CmlsiCell> table;
  for (int m : m_list) {
    const IrrepGenerators gen = build_generators(m);
    DensityMatrix prev;
    int prev_n = 0;
    for (int n : ns) {
      std::vector<DensityMatrix> extra;
      if (prev_n > 0) {
        DensityMatrix lifted = prev;
        for (int k = prev_n; k < n; ++k) {
          lifted = corner_embedding(lifted, m, k);
        }
        extra.push_back(lifted);
      }
      MlsiConfig c = cfg;
      c.seed = sub_seed(cfg.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n));
      const LambdaReport r = estimate_lambda(gen, n, c, extra);
      table.push_back({m, n, r.lambda_hat, r.gap, static_cast<int>(r.starts.size()), cfg.budget,
                       c.seed});
      prev = r.argmin.rho;
      prev_n = n;
    }
  }
  return table;
}

DecayTrajectory decay_trajectory(const IrrepGenerators& gen, int amplification,
                                 const DensityMatrix& rho0, const std::vector<double>& times,
                                 double lambda_hat, double fd_step) {
  const int m = gen.m();
  const int n = amplification;
  if (rho0.dim() != static_cast<Eigen::Index>(m) * n) {
    throw InvalidInput("decay_trajectory: state dimension does not match m * n");
  }
  if (min_eigenvalue(rho0.hermitian()) <= kEigFloor) {
    throw SingularState("decay_trajectory: initial state is not strictly positive");
  }
  const SpectralSemigroup sg(lindblad_generator(gen, n));
  const CMatrix fixed = conditional_expectation(rho0.matrix(), m, n);
  const auto state = [&](double t) { return DensityMatrix(HermitianMatrix(sg.apply(rho0.matrix(), t)).matrix()); };
  const auto entropy = [&](double t) { return relative_entropy(state(t).matrix(), fixed); };

  DecayTrajectory out;
  out.rho0 = rho0;
  out.lambda_hat = lambda_hat;
  out.times = times;
  for (double t : times) {
    if (t < 0.0) {
      throw InvalidInput("decay_trajectory: times must be nonnegative");
    }
    out.entropies.push_back(entropy(t));
    out.fisher.push_back(fisher_information(gen, state(t), n));
    out.entropy_rate.push_back(t >= fd_step ? (entropy(t - fd_step) - entropy(t + fd_step)) / (2.0 * fd_step)
                                            : std::numeric_limits<double>::quiet_NaN());
  }
  const double d0 = entropy(0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (d0 > 0.0) {
      const double bound = std::exp(-2.0 * lambda_hat * times[i]) * d0;
      out.max_bound_excess = std::max(out.max_bound_excess, out.entropies[i] / bound - 1.0);
    }
    if (i > 0 && times[i] > times[i - 1] && out.entropies[i] > out.entropies[i - 1] + 1e-12) {
      out.monotone = false;
    }
    // below ~1e-6 the central difference is dominated by cancellation
    if (!std::isnan(out.entropy_rate[i]) && out.fisher[i] > 1e-6) {
      out.max_derivative_error =
          std::max(out.max_derivative_error,
                   std::abs(out.entropy_rate[i] - out.fisher[i]) / out.fisher[i]);
    }
  }
  return out;
}

} // namespace hypolog

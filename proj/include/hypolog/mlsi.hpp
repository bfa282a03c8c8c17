#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypolog/entropy.hpp"

namespace hypolog {

// I(rho) / (2 D(rho || E rho)) for the amplified generator.
// Throws DegenerateDenominator when D < 1e-12 and SingularState for
// non-invertible rho.
double mlsi_ratio(const IrrepGenerators& gen, const DensityMatrix& rho, int amplification = 1);

struct RatioLandscapePoint {
  DensityMatrix rho;
  double ratio = 0.0;
  double grad_norm = 0.0; // central-difference gradient in the H parametrization
};

struct OptimizerStart {
  std::string kind; // near_fixed_plus, near_fixed_minus, near_pure, random, seeded
  std::uint64_t seed = 0;
  double initial_ratio = 0.0;
  double final_ratio = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct MlsiConfig {
  int multistarts = 16;
  int budget = 2000; // objective evaluations per start
  std::uint64_t seed = 1;
  int threads = 1;
  // Optimizer-level floor on D(rho || E rho); below it the objective is
  // rejected, which keeps the ratio clear of cancellation noise.
  double entropy_floor = 1e-8;
};

struct LambdaReport {
  double lambda_hat = 0.0;
  double gap = 0.0;
  RatioLandscapePoint argmin;
  std::vector<OptimizerStart> starts;
  bool converged = false; // the winning start met the simplex size tolerance
};

// Minimizes mlsi_ratio over rho = exp(H) / tr exp(H) by Nelder-Mead from
// multiple starts. `extra_starts` are added as seeded starting points.
LambdaReport estimate_lambda(const IrrepGenerators& gen, int amplification, const MlsiConfig& cfg,
                             const std::vector<DensityMatrix>& extra_starts = {});

struct CmlsiCell {
  int m = 0;
  int n = 0;
  double lambda_hat = 0.0;
  double gap = 0.0;
  int starts = 0;
  int budget = 0;
  std::uint64_t seed = 0;
};

// lambda_hat for every (m, n) with m n <= 20. Within a row, the best state of
// the previous n is embedded in the corner of the next n as an extra start,
// so that each infimum is taken over a superset.
std::vector<CmlsiCell> cmlsi_table(const std::vector<int>& m_list, const std::vector<int>& n_list,
                                   const MlsiConfig& cfg);

// rho (x) e_{00} block embedding M_m (x) M_k -> M_m (x) M_{k+1}, mixed with
// weight `mix` of the maximally mixed state to stay invertible.
DensityMatrix corner_embedding(const DensityMatrix& rho, int m, int k, double mix = 1e-8);

struct DecayTrajectory {
  std::vector<double> times;
  std::vector<double> entropies; // D(S_t rho0 || E rho0)
  std::vector<double> fisher;    // I(S_t rho0)
  std::vector<double> entropy_rate; // -dD/dt by central differences (NaN where unavailable)
  DensityMatrix rho0;
  double lambda_hat = 0.0;
  double max_bound_excess = 0.0;     // max of D(t) / (e^{-2 lambda t} D(0)) - 1
  double max_derivative_error = 0.0; // max relative |(-dD/dt) - I| over interior times
  bool monotone = true;
};

DecayTrajectory decay_trajectory(const IrrepGenerators& gen, int amplification,
                                 const DensityMatrix& rho0, const std::vector<double>& times,
                                 double lambda_hat, double fd_step = 1e-4);

} // namespace hypolog

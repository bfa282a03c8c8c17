#pragma once

#include <cstdint>
#include <vector>

#include "hypolog/entropy.hpp"
#include "hypolog/peter_weyl.hpp"

namespace hypolog {

// g -> (pi_m(g) (x) I_n) rho (pi_m(g) (x) I_n)^*
class CoherentEmbedding {
public:
  CoherentEmbedding(int m, int amplification, CMatrix rho);

  int m() const { return m_; }
  int amplification() const { return n_; }
  const CMatrix& state() const { return rho_; }

  CMatrix operator()(const GroupElement& g) const;

  // The embedded function as Peter-Weyl coefficients. Its entries are
  // products of band-m coefficients, so band 2m - 1 represents it exactly;
  // the coefficients come from an oversampled least-squares fit.
  BandLimitedFunction coefficients(std::uint64_t seed = 3, double ridge = 0.0) const;

private:
  int m_;
  int n_;
  CMatrix rho_;
};

CoherentEmbedding embed(const IrrepGenerators& gen, const CMatrix& rho, int amplification = 1);

struct GeneratorTransferenceReport {
  double exact_residual = 0.0; // classical calculus on coefficients vs alpha of commutators
  double fd_residual = 0.0;    // finite differences along g exp(tV) vs alpha of commutators
  double scale = 1.0;          // max(1, ||rho||_F)
  std::size_t points = 0;
};

// At each Haar point g compares V alpha(rho)(g) with alpha([V_m, rho])(g) for
// V in {X, Y} and (X^2 + Y^2) alpha(rho)(g) with alpha(L rho)(g).
// First differences use step fd_step, second differences fd_step2.
GeneratorTransferenceReport generator_transference_check(const IrrepGenerators& gen,
                                                         const CMatrix& rho, std::size_t points,
                                                         std::uint64_t seed, int amplification = 1,
                                                         double fd_step = 1e-5,
                                                         double fd_step2 = 1e-4);

struct SemigroupTransferenceReport {
  std::vector<double> times;
  std::vector<double> residuals; // |d/dt alpha(S_t rho) - (X^2+Y^2) alpha(S_t rho)| per t
  double initial_residual = 0.0; // |alpha(S_0 rho) - alpha(rho)|
  double max_residual = 0.0;
};

SemigroupTransferenceReport semigroup_transference_check(const IrrepGenerators& gen,
                                                         const DensityMatrix& rho,
                                                         const std::vector<double>& times,
                                                         std::size_t points, std::uint64_t seed,
                                                         int amplification = 1);

// max over points of |D(alpha(S_t rho)(g) || E rho) - D(S_t rho || E rho)|.
double entropy_transference_residual(const IrrepGenerators& gen, const DensityMatrix& rho,
                                     double t, std::size_t points, std::uint64_t seed,
                                     int amplification = 1);

struct FisherTransferenceReport {
  double quantum = 0.0;  // I(rho)
  double classical = 0.0; // Haar average of -tr((X^2+Y^2) alpha(rho)(g) ln alpha(rho)(g))
  double std_error = 0.0;
  std::size_t points = 0;
};

FisherTransferenceReport fisher_transference_check(const IrrepGenerators& gen,
                                                   const DensityMatrix& rho, std::size_t points,
                                                   std::uint64_t seed, int amplification = 1);

} // namespace hypolog

#pragma once

#include <cstdint>
#include <vector>

#include "hypolog/qms.hpp"

namespace hypolog {

// Horizontal derivative of a state: one component per direction (X, Y).
struct TangentVector {
  std::vector<CMatrix> components;

  Eigen::Index dim() const { return components.empty() ? 0 : components.front().rows(); }
};

// tr(rho ln rho - rho ln sigma) in nats. Eigenvalues <= kEigFloor count as
// zero; returns +infinity when rho has weight outside the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy(const CMatrix& rho, const CMatrix& sigma);

// ([X_m (x) I_n, rho], [Y_m (x) I_n, rho])
TangentVector gradient(const IrrepGenerators& gen, const CMatrix& rho, int amplification = 1);

// -tr(L(rho) ln rho). Requires rho strictly positive.
double fisher_information(const IrrepGenerators& gen, const DensityMatrix& rho,
                          int amplification = 1);
// sum_j <d_j rho, M_rho^{-1} d_j rho>, the chain-rule form of the same quantity.
double fisher_information_chain_rule(const IrrepGenerators& gen, const DensityMatrix& rho,
                                     int amplification = 1);

// Double operator integrals in the eigenbasis of rho:
//   M_rho      kernel (a - b) / (ln a - ln b)  (logarithmic mean)
//   M_rho^{-1} kernel (ln a - ln b) / (a - b)
// Nearly equal eigenvalues (relative spacing < 1e-8) use the diagonal limit.
CMatrix m_rho(const DensityMatrix& rho, const CMatrix& f);
CMatrix m_rho_inverse(const DensityMatrix& rho, const CMatrix& f);

// <f, M_sigma^{-1} f>. The HermitianMatrix overload accepts any strictly
// positive weight, not only unit-trace ones.
double weighted_norm_sq(const DensityMatrix& sigma, const CMatrix& f);
double weighted_norm_sq(const HermitianMatrix& weight, const CMatrix& f);

// K_rho f = sum_j d_j^*(M_rho(d_j f)), with d_j^* g = -[A_j, g] for the
// skew-Hermitian directions A_j.
CMatrix k_rho_apply(const IrrepGenerators& gen, const DensityMatrix& rho, const CMatrix& f,
                    int amplification = 1);

struct OperatorInequalityReport {
  // min over samples of C <f, K_{P rho} f> - <P f, K_rho P f>, for unit
  // Hilbert-Schmidt norm Hermitian f. Negative means a violation.
  double max_violation = 0.0;
  int samples = 0;
};

// Quadratic-form check of P^* K_rho P <= C K_{P^* rho} for a self-adjoint
// Markov map P (e.g. a semigroup channel).
OperatorInequalityReport operator_inequality_check(const IrrepGenerators& gen,
                                                   const DensityMatrix& rho,
                                                   const Superoperator& channel, double constant,
                                                   int samples, std::uint64_t seed,
                                                   int amplification = 1);

} // namespace hypolog

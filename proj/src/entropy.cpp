#include "hypolog/entropy.hpp"

#include <cmath>
#include <limits>

namespace hypolog {

namespace {

constexpr double kSupportTol = 1e-10;
constexpr double kCloseSpacing = 1e-8;

Spectrum positive_spectrum(const CMatrix& rho, const char* where) {
  Spectrum spec = eig_hermitian(HermitianMatrix(rho));
  if (spec.eigenvalues(0) <= kEigFloor) {
    throw SingularState(std::string(where) + ": state is not strictly positive");
  }
  return spec;
}

double log_mean(double a, double b) {
  if (std::abs(a - b) < kCloseSpacing * std::max(a, b)) {
    return 0.5 * (a + b);
  }
  return (a - b) / (std::log(a) - std::log(b));
}

// Applies the kernel k(lambda_a, lambda_b) entrywise in the eigenbasis.
template <typename Kernel>
CMatrix divided_difference(const Spectrum& spec, const CMatrix& f, Kernel kernel) {
  const CMatrix& u = spec.eigenvectors;
  CMatrix g = u.adjoint() * f * u;
  const RVector& lam = spec.eigenvalues;
  for (Eigen::Index b = 0; b < g.cols(); ++b) {
    for (Eigen::Index a = 0; a < g.rows(); ++a) {
      g(a, b) *= kernel(lam(a), lam(b));
    }
  }
  return u * g * u.adjoint();
}

CMatrix m_rho_spec(const Spectrum& spec, const CMatrix& f) {
  return divided_difference(spec, f, [](double a, double b) { return log_mean(a, b); });
}

CMatrix m_rho_inverse_spec(const Spectrum& spec, const CMatrix& f) {
  return divided_difference(spec, f, [](double a, double b) { return 1.0 / log_mean(a, b); });
}

} // namespace

double relative_entropy(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw InvalidInput("relative_entropy: dimension mismatch");
  }
  const Spectrum sr = eig_hermitian(HermitianMatrix(rho));
  const Spectrum ss = eig_hermitian(HermitianMatrix(sigma));
  double neg_entropy = 0.0;
  for (Eigen::Index i = 0; i < sr.eigenvalues.size(); ++i) {
    const double p = sr.eigenvalues(i);
    if (p > kEigFloor) {
      neg_entropy += p * std::log(p);
    }
  }
  double cross = 0.0;
  double outside = 0.0;
  for (Eigen::Index k = 0; k < ss.eigenvalues.size(); ++k) {
    const auto v = ss.eigenvectors.col(k);
    const double weight = (v.adjoint() * rho * v)(0, 0).real();
    const double s = ss.eigenvalues(k);
    if (s > kEigFloor) {
      cross += weight * std::log(s);
    } else {
      outside += weight;
    }
  }
  if (outside > kSupportTol) {
    return std::numeric_limits<double>::infinity();
  }
  return neg_entropy - cross;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy(rho.matrix(), sigma.matrix());
}

TangentVector gradient(const IrrepGenerators& gen, const CMatrix& rho, int amplification) {
  const CMatrix x = gen.amplified(Direction::X, amplification);
  const CMatrix y = gen.amplified(Direction::Y, amplification);
  if (rho.rows() != x.rows() || rho.cols() != x.cols()) {
    throw InvalidInput("gradient: dimension mismatch");
  }
  return {{commutator(x, rho), commutator(y, rho)}};
}

double fisher_information(const IrrepGenerators& gen, const DensityMatrix& rho,
                          int amplification) {
  const Spectrum spec = positive_spectrum(rho.matrix(), "fisher_information");
  const CMatrix log_rho = matrix_function(spec, MatrixFunction::log()).matrix();
  const CMatrix l_rho = apply_lindbladian(gen, amplification, rho.matrix());
  return -(l_rho * log_rho).trace().real();
}

double fisher_information_chain_rule(const IrrepGenerators& gen, const DensityMatrix& rho,
                                     int amplification) {
  const Spectrum spec = positive_spectrum(rho.matrix(), "fisher_information_chain_rule");
  const TangentVector grad = gradient(gen, rho.matrix(), amplification);
  double total = 0.0;
  for (const CMatrix& d : grad.components) {
    total += hs_inner(d, m_rho_inverse_spec(spec, d)).real();
  }
  return total;
}

CMatrix m_rho(const DensityMatrix& rho, const CMatrix& f) {
  return m_rho_spec(positive_spectrum(rho.matrix(), "m_rho"), f);
}

CMatrix m_rho_inverse(const DensityMatrix& rho, const CMatrix& f) {
  return m_rho_inverse_spec(positive_spectrum(rho.matrix(), "m_rho_inverse"), f);
}

double weighted_norm_sq(const HermitianMatrix& weight, const CMatrix& f) {
  if (f.rows() != weight.dim() || f.cols() != weight.dim()) {
    throw InvalidInput("weighted_norm_sq: dimension mismatch");
  }
  const Spectrum spec = positive_spectrum(weight.matrix(), "weighted_norm_sq");
  return hs_inner(f, m_rho_inverse_spec(spec, f)).real();
}

double weighted_norm_sq(const DensityMatrix& sigma, const CMatrix& f) {
  return weighted_norm_sq(sigma.hermitian(), f);
}

namespace {

CMatrix k_rho_spec(const IrrepGenerators& gen, const Spectrum& spec, const CMatrix& f,
                   int amplification) {
  CMatrix out = CMatrix::Zero(f.rows(), f.cols());
  for (Direction d : {Direction::X, Direction::Y}) {
    const CMatrix a = gen.amplified(d, amplification);
    out -= commutator(a, m_rho_spec(spec, commutator(a, f)));
  }
  return out;
}

} // namespace

CMatrix k_rho_apply(const IrrepGenerators& gen, const DensityMatrix& rho, const CMatrix& f,
                    int amplification) {
  if (f.rows() != rho.dim() || f.cols() != rho.dim()) {
    throw InvalidInput("k_rho_apply: dimension mismatch");
  }
  return k_rho_spec(gen, positive_spectrum(rho.matrix(), "k_rho_apply"), f, amplification);
}

OperatorInequalityReport operator_inequality_check(const IrrepGenerators& gen,
                                                   const DensityMatrix& rho,
                                                   const Superoperator& channel, double constant,
                                                   int samples, std::uint64_t seed,
                                                   int amplification) {
  if (channel.dim != rho.dim()) {
    throw InvalidInput("operator_inequality_check: dimension mismatch");
  }
  const Spectrum spec_rho = positive_spectrum(rho.matrix(), "operator_inequality_check");
  const Spectrum spec_prho =
      positive_spectrum(channel.apply(rho.matrix()), "operator_inequality_check");
  Rng rng(seed);
  OperatorInequalityReport report;
  report.max_violation = std::numeric_limits<double>::infinity();
  report.samples = samples;
  for (int s = 0; s < samples; ++s) {
    CMatrix f = random_hermitian(rho.dim(), rng).matrix();
    f /= f.norm();
    const CMatrix pf = channel.apply(f);
    const double lhs = hs_inner(pf, k_rho_spec(gen, spec_rho, pf, amplification)).real();
    const double rhs = hs_inner(f, k_rho_spec(gen, spec_prho, f, amplification)).real();
    report.max_violation = std::min(report.max_violation, constant * rhs - lhs);
  }
  return report;
}

} // namespace hypolog

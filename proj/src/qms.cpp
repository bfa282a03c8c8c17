#include "hypolog/qms.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hypolog {

DensityMatrix::DensityMatrix(const CMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw InvalidInput("DensityMatrix: matrix must be square and nonempty");
  }
  if (!all_finite(rho)) {
    throw InvalidInput("DensityMatrix: non-finite entries");
  }
  rho_ = (rho + rho.adjoint()) * 0.5;
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidInput("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  const double lo = min_eigenvalue(HermitianMatrix(rho_));
  if (lo < -kPsdTol) {
    throw InvalidInput("DensityMatrix: not positive semidefinite (min eig " +
                       std::to_string(lo) + ")");
  }
}

DensityMatrix DensityMatrix::normalized(const CMatrix& psd) {
  const double tr = psd.trace().real();
  if (!(tr > 0.0)) {
    throw InvalidInput("DensityMatrix::normalized: nonpositive trace");
  }
  return DensityMatrix(psd / tr);
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

CVector vec(const CMatrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvec(const CVector& v, Eigen::Index dim) {
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

CMatrix Superoperator::apply(const CMatrix& rho) const {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InvalidInput("Superoperator::apply: dimension mismatch");
  }
  return unvec(matrix * vec(rho), dim);
}

Superoperator Superoperator::compose(const Superoperator& other) const {
  if (other.dim != dim) {
    throw InvalidInput("Superoperator::compose: dimension mismatch");
  }
  Superoperator out = *this;
  out.matrix = matrix * other.matrix;
  return out;
}

CMatrix sandwich_superop(const CMatrix& a, const CMatrix& b) {
  return kron(b.transpose(), a);
}

CMatrix commutator_superop(const CMatrix& a) {
  const Eigen::Index d = a.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  return kron(id, a) - kron(a.transpose(), id);
}

Superoperator lindblad_generator(const IrrepGenerators& gen, int amplification) {
  if (amplification < 1) {
    throw InvalidInput("lindblad_generator: amplification must be >= 1");
  }
  const CMatrix ax = commutator_superop(gen.amplified(Direction::X, amplification));
  const CMatrix ay = commutator_superop(gen.amplified(Direction::Y, amplification));
  Superoperator out;
  out.dim = static_cast<Eigen::Index>(gen.m()) * amplification;
  out.rep_dim = gen.m();
  out.amplification = amplification;
  out.matrix = ax * ax + ay * ay;
  return out;
}

CMatrix apply_lindbladian(const IrrepGenerators& gen, int amplification, const CMatrix& rho) {
  const CMatrix x = gen.amplified(Direction::X, amplification);
  const CMatrix y = gen.amplified(Direction::Y, amplification);
  if (rho.rows() != x.rows() || rho.cols() != x.cols()) {
    throw InvalidInput("apply_lindbladian: dimension mismatch");
  }
  return commutator(x, commutator(x, rho)) + commutator(y, commutator(y, rho));
}

SpectralSemigroup::SpectralSemigroup(const Superoperator& generator)
    : gen_(generator),
      eig_(CMatrix((generator.matrix + generator.matrix.adjoint()) * 0.5)) {}

CMatrix SpectralSemigroup::apply(const CMatrix& rho, double t) const {
  if (t < 0.0) {
    throw InvalidInput("evolve: t must be nonnegative");
  }
  const CMatrix& u = eig_.eigenvectors();
  CVector coeff = u.adjoint() * vec(rho);
  const RVector& lam = eig_.eigenvalues();
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) *= std::exp(t * lam(k));
  }
  return unvec(u * coeff, gen_.dim);
}

Superoperator SpectralSemigroup::channel(double t) const {
  if (t < 0.0) {
    throw InvalidInput("channel: t must be nonnegative");
  }
  const CMatrix& u = eig_.eigenvectors();
  const RVector& lam = eig_.eigenvalues();
  CVector decay(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    decay(k) = std::exp(t * lam(k));
  }
  Superoperator out = gen_;
  out.matrix = u * decay.asDiagonal() * u.adjoint();
  return out;
}

DensityMatrix evolve(const Superoperator& generator, const DensityMatrix& rho, double t) {
  if (t < 0.0) {
    throw InvalidInput("evolve: t must be nonnegative");
  }
  if (rho.dim() != generator.dim) {
    throw InvalidInput("evolve: dimension mismatch");
  }
  const SpectralSemigroup semigroup(generator);
  return DensityMatrix(semigroup.apply(rho.matrix(), t));
}

namespace {

double kernel_tolerance(const RVector& lam) {
  const double scale = lam.size() > 0 ? lam.cwiseAbs().maxCoeff() : 0.0;
  return 1e-9 * std::max(1.0, scale);
}

} // namespace

Superoperator fixed_point_projection(const Superoperator& generator) {
  const SpectralSemigroup semigroup(generator);
  const RVector& lam = semigroup.eigenvalues();
  const CMatrix& u = semigroup.eigenvectors();
  const double tol = kernel_tolerance(lam);
  Superoperator out = generator;
  out.matrix = CMatrix::Zero(generator.matrix.rows(), generator.matrix.cols());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (std::abs(lam(k)) <= tol) {
      out.matrix += u.col(k) * u.col(k).adjoint();
    }
  }
  return out;
}

CMatrix partial_trace_first(const CMatrix& rho, int m, int n) {
  if (rho.rows() != static_cast<Eigen::Index>(m) * n) {
    throw InvalidInput("partial_trace_first: dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(n, n);
  for (int a = 0; a < m; ++a) {
    out += rho.block(static_cast<Eigen::Index>(a) * n, static_cast<Eigen::Index>(a) * n, n, n);
  }
  return out;
}

CMatrix conditional_expectation(const CMatrix& rho, int m, int n) {
  return kron(CMatrix::Identity(m, m) / static_cast<double>(m), partial_trace_first(rho, m, n));
}

CMatrix choi_matrix(const Superoperator& channel) {
  const Eigen::Index d = channel.dim;
  CMatrix choi = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      CMatrix unit = CMatrix::Zero(d, d);
      unit(j, k) = 1.0;
      choi.block(j * d, k * d, d, d) = channel.apply(unit);
    }
  }
  return choi;
}

CpReport verify_cp(const Superoperator& generator, double t) {
  if (!(t > 0.0)) {
    throw InvalidInput("verify_cp: t must be positive");
  }
  const SpectralSemigroup semigroup(generator);
  const Superoperator channel = semigroup.channel(t);
  const Eigen::Index d = generator.dim;
  CpReport report;
  report.choi_min_eig = min_eigenvalue(HermitianMatrix(choi_matrix(channel)));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      CMatrix unit = CMatrix::Zero(d, d);
      unit(j, k) = 1.0;
      const cplx expected = (j == k) ? cplx(1.0) : cplx(0.0);
      report.trace_defect =
          std::max(report.trace_defect, std::abs(channel.apply(unit).trace() - expected));
    }
  }
  return report;
}

double spectral_gap(const Superoperator& generator) {
  const SpectralSemigroup semigroup(generator);
  const RVector& lam = semigroup.eigenvalues();
  const double tol = kernel_tolerance(lam);
  Eigen::Index kernel = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (std::abs(lam(k)) <= tol) {
      ++kernel;
    } else {
      gap = std::min(gap, -lam(k));
    }
  }
  const auto n = static_cast<Eigen::Index>(generator.amplification);
  const Eigen::Index expected = generator.rep_dim > 0 ? n * n : kernel;
  if (kernel != expected || !std::isfinite(gap)) {
    throw DegenerateGenerator("spectral_gap: kernel dimension " + std::to_string(kernel) +
                              " inconsistent with fixed-point algebra (expected " +
                              std::to_string(expected) + ")");
  }
  if (gap <= 0.0) {
    throw DegenerateGenerator("spectral_gap: generator is not negative semidefinite");
  }
  return gap;
}

} // namespace hypolog

#include "hypolog/numkit.hpp"

#include <cmath>
#include <string>

namespace hypolog {

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidInput("HermitianMatrix: matrix is not square");
  }
  m_ = (a + a.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(CMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  return HermitianMatrix(CMatrix(d.cast<cplx>().asDiagonal()));
}

CMatrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

Spectrum eig_hermitian(const HermitianMatrix& a) {
  if (!all_finite(a.matrix())) {
    throw InvalidInput("eig_hermitian: non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("eig_hermitian: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

bool is_integer(double s) { return std::floor(s) == s; }

double apply_scalar(double x, MatrixFunction f, double eigfloor) {
  switch (f.kind) {
  case MatrixFunction::Kind::Exp:
    return std::exp(x);
  case MatrixFunction::Kind::Log:
    if (x <= eigfloor) {
      throw SingularMatrix("matrix log: eigenvalue " + std::to_string(x) + " below floor");
    }
    return std::log(x);
  case MatrixFunction::Kind::Power:
    if (is_integer(f.exponent)) {
      if (f.exponent < 0 && std::abs(x) <= eigfloor) {
        throw SingularMatrix("matrix power: negative power of singular matrix");
      }
      return std::pow(x, f.exponent);
    }
    if (x <= eigfloor) {
      throw SingularMatrix("matrix power: eigenvalue " + std::to_string(x) + " below floor");
    }
    return std::pow(x, f.exponent);
  }
  return 0.0;
}

} // namespace

HermitianMatrix matrix_function(const Spectrum& spec, MatrixFunction f, double eigfloor) {
  RVector fx(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < fx.size(); ++i) {
    fx(i) = apply_scalar(spec.eigenvalues(i), f, eigfloor);
  }
  return HermitianMatrix(spec.eigenvectors * fx.cast<cplx>().asDiagonal() *
                         spec.eigenvectors.adjoint());
}

HermitianMatrix matrix_function(const HermitianMatrix& a, MatrixFunction f, double eigfloor) {
  return matrix_function(eig_hermitian(a), f, eigfloor);
}

double min_eigenvalue(const HermitianMatrix& a) {
  if (a.dim() == 0) {
    throw InvalidInput("min_eigenvalue: empty matrix");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace();
}

double trace_norm(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

CMatrix expm_skew(const CMatrix& a) {
  const cplx i1(0.0, 1.0);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(CMatrix(-i1 * a));
  const RVector& lam = solver.eigenvalues();
  CVector phase(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    phase(k) = std::polar(1.0, lam(k));
  }
  return solver.eigenvectors() * phase.asDiagonal() * solver.eigenvectors().adjoint();
}

CMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

HermitianMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  return HermitianMatrix(random_gaussian_matrix(dim, dim, rng));
}

CMatrix random_density_matrix(Eigen::Index dim, Rng& rng, double floor) {
  if (floor * static_cast<double>(dim) >= 1.0) {
    throw InvalidInput("random_density_matrix: floor too large for dimension");
  }
  const CMatrix g = random_gaussian_matrix(dim, dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - floor * static_cast<double>(dim)) * rho +
        floor * CMatrix::Identity(dim, dim);
  return (rho + rho.adjoint()) * 0.5;
}

} // namespace hypolog

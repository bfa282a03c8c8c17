#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "hypolog/errors.hpp"

namespace hypolog {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

// Eigenvalues at or below this are treated as zero (0 ln 0 = 0) for entropies
// and as singular for logarithms, inverses and fractional powers.
inline constexpr double kEigFloor = 1e-12;

// Self-adjoint dense matrix. The constructor symmetrizes, (a + a^*)/2, so the
// stored entries are exactly Hermitian.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& a);

  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix diagonal(const RVector& d);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

private:
  CMatrix m_;
};

struct Spectrum {
  RVector eigenvalues; // ascending
  CMatrix eigenvectors; // columns paired with eigenvalues

  CMatrix reconstruct() const;
};

Spectrum eig_hermitian(const HermitianMatrix& a);

// Scalar function applied through the spectral calculus.
struct MatrixFunction {
  enum class Kind { Exp, Log, Power };
  Kind kind = Kind::Exp;
  double exponent = 1.0;

  static MatrixFunction exp() { return {Kind::Exp, 1.0}; }
  static MatrixFunction log() { return {Kind::Log, 1.0}; }
  static MatrixFunction power(double s) { return {Kind::Power, s}; }
};

HermitianMatrix matrix_function(const HermitianMatrix& a, MatrixFunction f,
                                double eigfloor = kEigFloor);
HermitianMatrix matrix_function(const Spectrum& spec, MatrixFunction f,
                                double eigfloor = kEigFloor);

double min_eigenvalue(const HermitianMatrix& a);

// tr(a^* b)
cplx hs_inner(const CMatrix& a, const CMatrix& b);
double trace_norm(const HermitianMatrix& a);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);
bool all_finite(const CMatrix& a);

// Exponential of a skew-Hermitian matrix (unitary result) via the spectrum of
// -i*a.
CMatrix expm_skew(const CMatrix& a);

// Random ensembles used by tests, estimators and the optimizer.
CMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
HermitianMatrix random_hermitian(Eigen::Index dim, Rng& rng);
// Hilbert-Schmidt random density matrix, G G^* / tr, shifted away from the
// boundary by `floor` (mixed in with weight floor * dim).
CMatrix random_density_matrix(Eigen::Index dim, Rng& rng, double floor = 0.0);

} // namespace hypolog

#pragma once

#include "hypolog/numkit.hpp"
#include "hypolog/su2.hpp"

namespace hypolog {

// Positive semidefinite, unit-trace matrix. Construction validates
// min eigenvalue >= -1e-10 and |tr - 1| <= 1e-10.
class DensityMatrix {
public:
  static constexpr double kPsdTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;

  DensityMatrix() = default;
  explicit DensityMatrix(const CMatrix& rho);

  // Divides a PSD matrix by its trace before validating.
  static DensityMatrix normalized(const CMatrix& psd);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return rho_.rows(); }
  const CMatrix& matrix() const { return rho_; }
  HermitianMatrix hermitian() const { return HermitianMatrix(rho_); }

private:
  CMatrix rho_;
};

// Linear map on d x d matrices as a d^2 x d^2 matrix in the column-stacking
// basis: the matrix unit e_{jk} (0-based) sits at index k*d + j, which is
// Eigen's native column-major order.
struct Superoperator {
  Eigen::Index dim = 0;  // d, the side of the matrices acted upon
  int rep_dim = 0;       // m, the irrep dimension (0 if not a generator)
  int amplification = 1; // n, with d = m*n
  CMatrix matrix;

  CMatrix apply(const CMatrix& rho) const;
  Superoperator compose(const Superoperator& other) const;
};

CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, Eigen::Index dim);

// Superoperator of rho -> a rho b.
CMatrix sandwich_superop(const CMatrix& a, const CMatrix& b);
// Superoperator of rho -> [a, rho].
CMatrix commutator_superop(const CMatrix& a);

// rho -> [X,[X,rho]] + [Y,[Y,rho]] with X = X_m (x) I_n, Y = Y_m (x) I_n.
Superoperator lindblad_generator(const IrrepGenerators& gen, int amplification = 1);

// Same map applied directly by commutators, without materializing the
// superoperator.
CMatrix apply_lindbladian(const IrrepGenerators& gen, int amplification, const CMatrix& rho);

// Spectral decomposition of a self-adjoint generator, reused across times.
class SpectralSemigroup {
public:
  explicit SpectralSemigroup(const Superoperator& generator);

  const Superoperator& generator() const { return gen_; }
  const RVector& eigenvalues() const { return eig_.eigenvalues(); }
  const CMatrix& eigenvectors() const { return eig_.eigenvectors(); }

  CMatrix apply(const CMatrix& rho, double t) const;
  Superoperator channel(double t) const;

private:
  Superoperator gen_;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig_;
};

DensityMatrix evolve(const Superoperator& generator, const DensityMatrix& rho, double t);

Superoperator fixed_point_projection(const Superoperator& generator);

// (I_m / m) (x) tr_1(rho), the conditional expectation onto the fixed-point
// algebra I_m (x) M_n, in closed form.
CMatrix conditional_expectation(const CMatrix& rho, int m, int n);
CMatrix partial_trace_first(const CMatrix& rho, int m, int n);

struct CpReport {
  double choi_min_eig = 0.0;
  double trace_defect = 0.0;
};

CMatrix choi_matrix(const Superoperator& channel);
CpReport verify_cp(const Superoperator& generator, double t);

double spectral_gap(const Superoperator& generator);

} // namespace hypolog

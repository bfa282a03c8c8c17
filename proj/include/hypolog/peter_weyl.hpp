#pragma once

#include <vector>

#include "hypolog/su2.hpp"

namespace hypolog {

// Generators for irreps m = 1..max_band, built once and shared read-only.
const IrrepGenerators& irrep(int m);

// Function on SU(2) with values in M_n, stored by its Peter-Weyl coefficients
//   f(g) = sum_m tr_1( A_m (pi_m(g) (x) I_n) ),
// where A_m is an (m n) x (m n) matrix indexed (a, p) -> a*n + p and tr_1 is
// the partial trace over the representation slot. Entry (p, q) of f is the
// scalar function tr(A_m^{(pq)} pi_m(g)) with A_m^{(pq)}_{ab} = A_m(a n + p, b n + q).
//
// Haar inner product: <f, h> = int tr(f^* h) = sum_m tr(A_m^* B_m) / m.
class BandLimitedFunction {
public:
  BandLimitedFunction() = default;
  BandLimitedFunction(int m_max, int value_dim);

  static BandLimitedFunction constant(const CMatrix& value, int m_max);
  // Scalar matrix coefficient g -> pi_m(g)_{ab} (0-based a, b).
  static BandLimitedFunction matrix_coefficient(int m, int a, int b, int m_max);
  // n x n function whose (p, q) entry is entries[p][q] (all scalar, same band).
  static BandLimitedFunction from_entries(
      const std::vector<std::vector<BandLimitedFunction>>& entries);

  int m_max() const { return m_max_; }
  int value_dim() const { return n_; }
  const CMatrix& block(int m) const { return coeffs_.at(static_cast<std::size_t>(m - 1)); }
  CMatrix& block(int m) { return coeffs_.at(static_cast<std::size_t>(m - 1)); }

  BandLimitedFunction entry(int p, int q) const;
  // Re-expresses the function in a larger (or equal) band.
  BandLimitedFunction widened(int m_max) const;

  BandLimitedFunction& operator+=(const BandLimitedFunction& other);
  BandLimitedFunction& operator-=(const BandLimitedFunction& other);
  BandLimitedFunction& operator*=(cplx s);

  // Pointwise adjoint, f^*(g) = f(g)^*.
  BandLimitedFunction adjoint() const;

private:
  int m_max_ = 0;
  int n_ = 1;
  std::vector<CMatrix> coeffs_;
};

BandLimitedFunction operator+(BandLimitedFunction a, const BandLimitedFunction& b);
BandLimitedFunction operator-(BandLimitedFunction a, const BandLimitedFunction& b);
BandLimitedFunction operator*(cplx s, BandLimitedFunction a);

// Points with pi_m(g) cached for every m up to max_band.
class SampleGrid {
public:
  SampleGrid(std::vector<GroupElement> points, int max_band);

  std::size_t size() const { return points_.size(); }
  int max_band() const { return max_band_; }
  const std::vector<GroupElement>& points() const { return points_; }
  const CMatrix& rep(std::size_t k, int m) const {
    return reps_[k][static_cast<std::size_t>(m - 1)];
  }

private:
  std::vector<GroupElement> points_;
  int max_band_;
  std::vector<std::vector<CMatrix>> reps_;
};

struct SampledField {
  std::vector<GroupElement> points;
  std::vector<CMatrix> values;
};

CMatrix evaluate(const BandLimitedFunction& f, const GroupElement& g);
// Values at every grid point; the grid must cover f's band.
std::vector<CMatrix> evaluate(const BandLimitedFunction& f, const SampleGrid& grid);
CMatrix evaluate_at(const BandLimitedFunction& f, const SampleGrid& grid, std::size_t k);

// Left-invariant derivative d/dt f(g exp(tV)) at t = 0: A_m -> (V_m (x) I) A_m.
BandLimitedFunction vector_field(const BandLimitedFunction& f, Direction dir);

// (X^2 + Y^2) f
BandLimitedFunction sub_laplacian(const BandLimitedFunction& f);

// P_t f = e^{t(X^2 + Y^2)} f, diagonal on coefficients.
BandLimitedFunction heat_semigroup(const BandLimitedFunction& f, double t);

// sum_{V in {X, Y}} (V f)(g)^* (V h)(g) on the grid points.
SampledField gamma(const BandLimitedFunction& f, const BandLimitedFunction& h,
                   const SampleGrid& grid);

// Haar mean (the trivial-representation coefficient).
CMatrix mean(const BandLimitedFunction& f);

cplx inner(const BandLimitedFunction& f, const BandLimitedFunction& h);
double schur_norm(const BandLimitedFunction& f);

// Random real scalar function: Gaussian coefficients on bands 1..m_max made
// real via (f + f^*)/2, normalized to unit Schur norm.
BandLimitedFunction random_real_function(int m_max, Rng& rng);
// Random pointwise-Hermitian n x n valued function, unit Schur norm.
BandLimitedFunction random_hermitian_function(int m_max, int value_dim, Rng& rng);
// Deterministic bound on sup_g ||f(g)||_op from coefficient nuclear norms.
double sup_norm_bound(const BandLimitedFunction& f);

struct BandProjection {
  BandLimitedFunction fit;
  double residual = 0.0; // ||fit - samples|| / ||samples|| over the points
};

// Least-squares fit of sampled values in the band m_max with Tikhonov ridge.
// The Gram system is scaled by the point count, so ridge is relative to the
// unit-normalized Haar Gram matrix (approximately diag(1/m)).
class BandProjector {
public:
  BandProjector(const SampleGrid& grid, int m_max, double ridge = 1e-10);

  int m_max() const { return m_max_; }
  std::size_t points() const { return phi_.rows(); }
  BandProjection project(const std::vector<CMatrix>& values) const;
  // Weights w with sum_i w_i v_i = sum_k functional_k c_k(v), where c(v) are the
  // fitted scalar coefficients ordered (m, a, b) -> offset_m + a*m + b.
  CVector point_weights(const CVector& functional) const;

private:
  int m_max_;
  CMatrix phi_;
  Eigen::LLT<CMatrix> gram_;
};

// Requires points >= 2 * sum_{m <= m_max} m^2 n^2.
BandProjection project_band(const SampledField& samples, int m_max, double ridge = 1e-10);

std::size_t band_dimension(int m_max);

} // namespace hypolog

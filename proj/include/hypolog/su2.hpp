#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hypolog/numkit.hpp"

namespace hypolog {

enum class Direction { X, Y, Z };

// Unit quaternion c*I + x*X + y*Y + z*Z, where X, Y, Z are the 2x2
// skew-Hermitian basis of su(2) (XY = Z, YZ = X, ZX = Y, X^2 = Y^2 = Z^2 = -I).
struct GroupElement {
  double c = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static GroupElement identity() { return {}; }
  // exp(t * V) for V one of the basis directions.
  static GroupElement exp(Direction dir, double t);

  double norm_sq() const { return c * c + x * x + y * y + z * z; }
  GroupElement inverse() const { return {c, -x, -y, -z}; }
  GroupElement normalized() const;
};

GroupElement operator*(const GroupElement& g, const GroupElement& h);

// Generators phi_m(X), phi_m(Y), phi_m(Z) of the m-dimensional irrep in the
// basis |1>, ..., |m> diagonalizing Z_m = i diag(m - 2j + 1). They are
// skew-Hermitian and obey [X,Y] = 2Z, [Y,Z] = 2X, [Z,X] = 2Y.
class IrrepGenerators {
public:
  int m() const { return m_; }
  const CMatrix& x() const { return x_; }
  const CMatrix& y() const { return y_; }
  const CMatrix& z() const { return z_; }
  const CMatrix& operator[](Direction d) const;

  // Unitary J with conj(pi_m(g)) = J pi_m(g) J^* for every g. The spin
  // representations are self-conjugate; J = pi_m(exp(pi/2 X)).
  const CMatrix& conjugator() const { return conj_; }

  // X_m (x) I_n and friends for the amplified algebra M_m (x) M_n.
  CMatrix amplified(Direction d, int n) const;

private:
  friend IrrepGenerators build_generators(int m);
  int m_ = 0;
  CMatrix x_, y_, z_, conj_;
};

IrrepGenerators build_generators(int m);

HermitianMatrix casimir(const IrrepGenerators& gen);

// X_m^2 + Y_m^2, diagonal in the Z-eigenbasis with entries
// -(m^2 - 1) + (m - 2j + 1)^2.
HermitianMatrix horizontal_symbol(const IrrepGenerators& gen);

// pi_m(g) = exp(phi_m(log g)).
CMatrix pi_m(const IrrepGenerators& gen, const GroupElement& g);

// The defining 2x2 matrix c I + x X + y Y + z Z.
CMatrix su2_matrix(const GroupElement& g);

// Haar-uniform samples (normalized standard Gaussian 4-vectors).
std::vector<GroupElement> haar_sample(std::uint64_t seed, std::size_t count);
std::vector<GroupElement> haar_sample(Rng& rng, std::size_t count);

} // namespace hypolog

#include "hypolog/su2.hpp"

#include <cmath>
#include <numbers>

namespace hypolog {

GroupElement GroupElement::exp(Direction dir, double t) {
  GroupElement g{std::cos(t), 0.0, 0.0, 0.0};
  const double s = std::sin(t);
  switch (dir) {
  case Direction::X: g.x = s; break;
  case Direction::Y: g.y = s; break;
  case Direction::Z: g.z = s; break;
  }
  return g;
}

GroupElement GroupElement::normalized() const {
  const double r = std::sqrt(norm_sq());
  return {c / r, x / r, y / r, z / r};
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  // Hamilton product with i = X, j = Y, k = Z.
  return {
      g.c * h.c - g.x * h.x - g.y * h.y - g.z * h.z,
      g.c * h.x + g.x * h.c + g.y * h.z - g.z * h.y,
      g.c * h.y - g.x * h.z + g.y * h.c + g.z * h.x,
      g.c * h.z + g.x * h.y - g.y * h.x + g.z * h.c,
  };
}

const CMatrix& IrrepGenerators::operator[](Direction d) const {
  switch (d) {
  case Direction::X: return x_;
  case Direction::Y: return y_;
  case Direction::Z: return z_;
  }
  return x_;
}

CMatrix IrrepGenerators::amplified(Direction d, int n) const {
  if (n == 1) {
    return (*this)[d];
  }
  return kron((*this)[d], CMatrix::Identity(n, n));
}

IrrepGenerators build_generators(int m) {
  if (m < 1) {
    throw InvalidInput("build_generators: m must be >= 1");
  }
  const cplx i1(0.0, 1.0);
  // Raising operator J+ |j> = sqrt((j-1)(m-j+1)) |j-1>, j = 1..m (1-based);
  // lowering is its adjoint, J- |j> = sqrt(j(m-j)) |j+1>.
  RMatrix raise = RMatrix::Zero(m, m);
  for (int j = 2; j <= m; ++j) {
    raise(j - 2, j - 1) = std::sqrt(static_cast<double>((j - 1) * (m - j + 1)));
  }
  const CMatrix up = raise.cast<cplx>();
  const CMatrix down = up.adjoint();

  IrrepGenerators gen;
  gen.m_ = m;
  gen.x_ = up - down;
  gen.y_ = i1 * (up + down);
  gen.z_ = CMatrix::Zero(m, m);
  for (int j = 1; j <= m; ++j) {
    gen.z_(j - 1, j - 1) = i1 * static_cast<double>(m - 2 * j + 1);
  }
  gen.conj_ = expm_skew(gen.x_ * (std::numbers::pi / 2.0));
  return gen;
}

HermitianMatrix casimir(const IrrepGenerators& gen) {
  return HermitianMatrix(gen.x() * gen.x() + gen.y() * gen.y() + gen.z() * gen.z());
}

HermitianMatrix horizontal_symbol(const IrrepGenerators& gen) {
  return HermitianMatrix(gen.x() * gen.x() + gen.y() * gen.y());
}

CMatrix pi_m(const IrrepGenerators& gen, const GroupElement& g) {
  const double vnorm = std::sqrt(g.x * g.x + g.y * g.y + g.z * g.z);
  const int m = gen.m();
  if (vnorm == 0.0) {
    if (g.c >= 0.0) {
      return CMatrix::Identity(m, m);
    }
    // g = -I: theta = pi about the fixed axis X.
    return expm_skew(gen.x() * std::numbers::pi);
  }
  const double theta = std::atan2(vnorm, g.c);
  const double scale = theta / vnorm;
  const CMatrix log_g = scale * (g.x * gen.x() + g.y * gen.y() + g.z * gen.z());
  return expm_skew(log_g);
}

CMatrix su2_matrix(const GroupElement& g) {
  const cplx i1(0.0, 1.0);
  CMatrix out(2, 2);
  out(0, 0) = g.c + i1 * g.z;
  out(0, 1) = g.x + i1 * g.y;
  out(1, 0) = -g.x + i1 * g.y;
  out(1, 1) = g.c - i1 * g.z;
  return out;
}

std::vector<GroupElement> haar_sample(Rng& rng, std::size_t count) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<GroupElement> out;
  out.reserve(count);
  while (out.size() < count) {
    GroupElement g;
    g.c = normal(rng);
    g.x = normal(rng);
    g.y = normal(rng);
    g.z = normal(rng);
    if (g.norm_sq() < 1e-24) {
      continue;
    }
    out.push_back(g.normalized());
  }
  return out;
}

std::vector<GroupElement> haar_sample(std::uint64_t seed, std::size_t count) {
  if (count == 0) {
    throw InvalidInput("haar_sample: count must be >= 1");
  }
  Rng rng(seed);
  return haar_sample(rng, count);
}

} // namespace hypolog

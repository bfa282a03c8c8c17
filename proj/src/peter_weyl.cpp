#include "hypolog/peter_weyl.hpp"

#include <cmath>
#include <string>

namespace hypolog {

namespace {

constexpr int kMaxCachedIrrep = 48;

const std::vector<IrrepGenerators>& irrep_table() {
  static const std::vector<IrrepGenerators> table = [] {
    std::vector<IrrepGenerators> t;
    t.reserve(kMaxCachedIrrep);
    for (int m = 1; m <= kMaxCachedIrrep; ++m) {
      t.push_back(build_generators(m));
    }
    return t;
  }();
  return table;
}

void require_same_shape(const BandLimitedFunction& a, const BandLimitedFunction& b,
                        const char* where) {
  if (a.m_max() != b.m_max() || a.value_dim() != b.value_dim()) {
    throw InvalidInput(std::string(where) + ": band or value dimension mismatch");
  }
}

RVector heat_symbol(int m) { return horizontal_symbol(irrep(m)).matrix().diagonal().real(); }

} // namespace

const IrrepGenerators& irrep(int m) {
  if (m < 1 || m > kMaxCachedIrrep) {
    throw InvalidInput("irrep: m out of range 1.." + std::to_string(kMaxCachedIrrep));
  }
  return irrep_table()[static_cast<std::size_t>(m - 1)];
}

std::size_t band_dimension(int m_max) {
  std::size_t total = 0;
  for (int m = 1; m <= m_max; ++m) {
    total += static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  }
  return total;
}

BandLimitedFunction::BandLimitedFunction(int m_max, int value_dim) : m_max_(m_max), n_(value_dim) {
  if (m_max < 1 || value_dim < 1) {
    throw InvalidInput("BandLimitedFunction: m_max and value_dim must be >= 1");
  }
  coeffs_.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) {
    coeffs_.push_back(CMatrix::Zero(m * n_, m * n_));
  }
}

BandLimitedFunction BandLimitedFunction::constant(const CMatrix& value, int m_max) {
  if (value.rows() != value.cols()) {
    throw InvalidInput("BandLimitedFunction::constant: value must be square");
  }
  BandLimitedFunction f(m_max, static_cast<int>(value.rows()));
  f.block(1) = value;
  return f;
}

BandLimitedFunction BandLimitedFunction::matrix_coefficient(int m, int a, int b, int m_max) {
  if (m > m_max || a < 0 || b < 0 || a >= m || b >= m) {
    throw InvalidInput("matrix_coefficient: index out of range");
  }
  BandLimitedFunction f(m_max, 1);
  f.block(m)(b, a) = 1.0;
  return f;
}

BandLimitedFunction BandLimitedFunction::from_entries(
    const std::vector<std::vector<BandLimitedFunction>>& entries) {
  const int n = static_cast<int>(entries.size());
  if (n == 0) {
    throw InvalidInput("from_entries: empty");
  }
  const int m_max = entries[0][0].m_max();
  BandLimitedFunction f(m_max, n);
  for (int p = 0; p < n; ++p) {
    if (static_cast<int>(entries[static_cast<std::size_t>(p)].size()) != n) {
      throw InvalidInput("from_entries: entries must be square");
    }
    for (int q = 0; q < n; ++q) {
      const BandLimitedFunction& e = entries[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      if (e.value_dim() != 1 || e.m_max() != m_max) {
        throw InvalidInput("from_entries: entries must be scalar with a common band");
      }
      for (int m = 1; m <= m_max; ++m) {
        for (int a = 0; a < m; ++a) {
          for (int b = 0; b < m; ++b) {
            f.block(m)(a * n + p, b * n + q) = e.block(m)(a, b);
          }
        }
      }
    }
  }
  return f;
}

BandLimitedFunction BandLimitedFunction::entry(int p, int q) const {
  BandLimitedFunction e(m_max_, 1);
  for (int m = 1; m <= m_max_; ++m) {
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        e.block(m)(a, b) = block(m)(a * n_ + p, b * n_ + q);
      }
    }
  }
  return e;
}

BandLimitedFunction BandLimitedFunction::widened(int m_max) const {
  if (m_max < m_max_) {
    throw InvalidInput("widened: cannot shrink the band");
  }
  BandLimitedFunction out(m_max, n_);
  for (int m = 1; m <= m_max_; ++m) {
    out.block(m) = block(m);
  }
  return out;
}

BandLimitedFunction& BandLimitedFunction::operator+=(const BandLimitedFunction& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    coeffs_[k] += other.coeffs_[k];
  }
  return *this;
}

BandLimitedFunction& BandLimitedFunction::operator-=(const BandLimitedFunction& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    coeffs_[k] -= other.coeffs_[k];
  }
  return *this;
}

BandLimitedFunction& BandLimitedFunction::operator*=(cplx s) {
  for (CMatrix& c : coeffs_) {
    c *= s;
  }
  return *this;
}

BandLimitedFunction BandLimitedFunction::adjoint() const {
  // conj(tr(A pi)) = tr(J^* conj(A) J pi), and the (p, q) entry of f^* is the
  // conjugate of the (q, p) entry of f.
  BandLimitedFunction out(m_max_, n_);
  for (int m = 1; m <= m_max_; ++m) {
    const CMatrix& j = irrep(m).conjugator();
    for (int p = 0; p < n_; ++p) {
      for (int q = 0; q < n_; ++q) {
        CMatrix a(m, m);
        for (int x = 0; x < m; ++x) {
          for (int y = 0; y < m; ++y) {
            a(x, y) = std::conj(block(m)(x * n_ + q, y * n_ + p));
          }
        }
        const CMatrix b = j.adjoint() * a * j;
        for (int x = 0; x < m; ++x) {
          for (int y = 0; y < m; ++y) {
            out.block(m)(x * n_ + p, y * n_ + q) = b(x, y);
          }
        }
      }
    }
  }
  return out;
}

BandLimitedFunction operator+(BandLimitedFunction a, const BandLimitedFunction& b) {
  a += b;
  return a;
}

BandLimitedFunction operator-(BandLimitedFunction a, const BandLimitedFunction& b) {
  a -= b;
  return a;
}

BandLimitedFunction operator*(cplx s, BandLimitedFunction a) {
  a *= s;
  return a;
}

SampleGrid::SampleGrid(std::vector<GroupElement> points, int max_band)
    : points_(std::move(points)), max_band_(max_band) {
  reps_.reserve(points_.size());
  for (const GroupElement& g : points_) {
    std::vector<CMatrix> row;
    row.reserve(static_cast<std::size_t>(max_band));
    for (int m = 1; m <= max_band; ++m) {
      row.push_back(pi_m(irrep(m), g));
    }
    reps_.push_back(std::move(row));
  }
}

namespace {

CMatrix synthesize(const BandLimitedFunction& f, int m, const CMatrix& pi, CMatrix& acc) {
  const int n = f.value_dim();
  const CMatrix& a = f.block(m);
  if (n == 1) {
    acc(0, 0) += (a.transpose().cwiseProduct(pi)).sum();
    return acc;
  }
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const cplx w = pi(y, x);
      if (w != cplx(0.0)) {
        acc += w * a.block(x * n, y * n, n, n);
      }
    }
  }
  return acc;
}

} // namespace

CMatrix evaluate(const BandLimitedFunction& f, const GroupElement& g) {
  CMatrix acc = CMatrix::Zero(f.value_dim(), f.value_dim());
  for (int m = 1; m <= f.m_max(); ++m) {
    synthesize(f, m, pi_m(irrep(m), g), acc);
  }
  return acc;
}

CMatrix evaluate_at(const BandLimitedFunction& f, const SampleGrid& grid, std::size_t k) {
  if (grid.max_band() < f.m_max()) {
    throw InvalidInput("evaluate: grid band smaller than function band");
  }
  CMatrix acc = CMatrix::Zero(f.value_dim(), f.value_dim());
  for (int m = 1; m <= f.m_max(); ++m) {
    synthesize(f, m, grid.rep(k, m), acc);
  }
  return acc;
}

std::vector<CMatrix> evaluate(const BandLimitedFunction& f, const SampleGrid& grid) {
  std::vector<CMatrix> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.push_back(evaluate_at(f, grid, k));
  }
  return out;
}

BandLimitedFunction vector_field(const BandLimitedFunction& f, Direction dir) {
  BandLimitedFunction out(f.m_max(), f.value_dim());
  for (int m = 1; m <= f.m_max(); ++m) {
    out.block(m) = irrep(m).amplified(dir, f.value_dim()) * f.block(m);
  }
  return out;
}

BandLimitedFunction sub_laplacian(const BandLimitedFunction& f) {
  const int n = f.value_dim();
  BandLimitedFunction out(f.m_max(), n);
  for (int m = 1; m <= f.m_max(); ++m) {
    const RVector h = heat_symbol(m);
    for (int j = 0; j < m; ++j) {
      out.block(m).middleRows(j * n, n) = h(j) * f.block(m).middleRows(j * n, n);
    }
  }
  return out;
}

BandLimitedFunction heat_semigroup(const BandLimitedFunction& f, double t) {
  if (t < 0.0) {
    throw InvalidInput("heat_semigroup: t must be nonnegative");
  }
  const int n = f.value_dim();
  BandLimitedFunction out = f;
  for (int m = 2; m <= f.m_max(); ++m) {
    const RVector h = heat_symbol(m);
    for (int j = 0; j < m; ++j) {
      out.block(m).middleRows(j * n, n) *= std::exp(t * h(j));
    }
  }
  return out;
}

SampledField gamma(const BandLimitedFunction& f, const BandLimitedFunction& h,
                   const SampleGrid& grid) {
  if (f.value_dim() != h.value_dim()) {
    throw InvalidInput("gamma: value dimension mismatch");
  }
  const BandLimitedFunction xf = vector_field(f, Direction::X);
  const BandLimitedFunction yf = vector_field(f, Direction::Y);
  const BandLimitedFunction xh = vector_field(h, Direction::X);
  const BandLimitedFunction yh = vector_field(h, Direction::Y);
  SampledField out;
  out.points = grid.points();
  out.values.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const CMatrix vxf = evaluate_at(xf, grid, k);
    const CMatrix vyf = evaluate_at(yf, grid, k);
    const CMatrix vxh = evaluate_at(xh, grid, k);
    const CMatrix vyh = evaluate_at(yh, grid, k);
    out.values.push_back(vxf.adjoint() * vxh + vyf.adjoint() * vyh);
  }
  return out;
}

CMatrix mean(const BandLimitedFunction& f) { return f.block(1); }

cplx inner(const BandLimitedFunction& f, const BandLimitedFunction& h) {
  require_same_shape(f, h, "inner");
  cplx total = 0.0;
  for (int m = 1; m <= f.m_max(); ++m) {
    total += hs_inner(f.block(m), h.block(m)) / static_cast<double>(m);
  }
  return total;
}

double schur_norm(const BandLimitedFunction& f) { return std::sqrt(inner(f, f).real()); }

BandLimitedFunction random_real_function(int m_max, Rng& rng) {
  BandLimitedFunction f(m_max, 1);
  for (int m = 1; m <= m_max; ++m) {
    f.block(m) = random_gaussian_matrix(m, m, rng);
  }
  BandLimitedFunction real = 0.5 * (f + f.adjoint());
  real *= 1.0 / schur_norm(real);
  return real;
}

BandLimitedFunction random_hermitian_function(int m_max, int value_dim, Rng& rng) {
  BandLimitedFunction f(m_max, value_dim);
  for (int m = 1; m <= m_max; ++m) {
    f.block(m) = random_gaussian_matrix(m * value_dim, m * value_dim, rng);
  }
  BandLimitedFunction herm = 0.5 * (f + f.adjoint());
  herm *= 1.0 / schur_norm(herm);
  return herm;
}

double sup_norm_bound(const BandLimitedFunction& f) {
  const int n = f.value_dim();
  double total = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const BandLimitedFunction e = f.entry(p, q);
      double bound = 0.0;
      for (int m = 1; m <= f.m_max(); ++m) {
        Eigen::JacobiSVD<CMatrix> svd(e.block(m));
        bound += svd.singularValues().sum();
      }
      total += bound * bound;
    }
  }
  return std::sqrt(total);
}

BandProjector::BandProjector(const SampleGrid& grid, int m_max, double ridge) : m_max_(m_max) {
  if (grid.max_band() < m_max) {
    throw InvalidInput("BandProjector: grid band smaller than projection band");
  }
  const std::size_t dim = band_dimension(m_max);
  if (grid.size() < 2 * dim) {
    throw InvalidInput("BandProjector: underdetermined system (" + std::to_string(grid.size()) +
                       " points for " + std::to_string(dim) + " coefficients)");
  }
  if (ridge < 0.0) {
    throw InvalidInput("BandProjector: ridge must be nonnegative");
  }
  phi_.resize(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Eigen::Index col = 0;
    for (int m = 1; m <= m_max; ++m) {
      const CMatrix& pi = grid.rep(k, m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          phi_(static_cast<Eigen::Index>(k), col++) = pi(b, a);
        }
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(grid.size());
  CMatrix gram = scale * (phi_.adjoint() * phi_);
  gram.diagonal().array() += ridge;
  gram_.compute(gram);
  if (gram_.info() != Eigen::Success) {
    throw InvalidInput("BandProjector: Gram matrix is not positive definite");
  }
}

BandProjection BandProjector::project(const std::vector<CMatrix>& values) const {
  if (values.size() != static_cast<std::size_t>(phi_.rows())) {
    throw InvalidInput("BandProjector::project: value count does not match the grid");
  }
  const int n = static_cast<int>(values.front().rows());
  CMatrix rhs(phi_.rows(), n * n);
  for (Eigen::Index k = 0; k < phi_.rows(); ++k) {
    const CMatrix& v = values[static_cast<std::size_t>(k)];
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        rhs(k, p * n + q) = v(p, q);
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(phi_.rows());
  const CMatrix coef = gram_.solve(scale * (phi_.adjoint() * rhs));

  BandProjection out{BandLimitedFunction(m_max_, n), 0.0};
  Eigen::Index row = 0;
  for (int m = 1; m <= m_max_; ++m) {
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b, ++row) {
        for (int p = 0; p < n; ++p) {
          for (int q = 0; q < n; ++q) {
            out.fit.block(m)(a * n + p, b * n + q) = coef(row, p * n + q);
          }
        }
      }
    }
  }
  const double norm = rhs.norm();
  out.residual = norm > 0.0 ? (phi_ * coef - rhs).norm() / norm : (phi_ * coef).norm();
  return out;
}

CVector BandProjector::point_weights(const CVector& functional) const {
  if (functional.size() != phi_.cols()) {
    throw InvalidInput("BandProjector::point_weights: functional size mismatch");
  }
  // c = G^{-1} Phi^* v / N, so functional^T c = (conj(Phi G^{-1} conj(functional)) / N)^T v.
  const CVector y = gram_.solve(functional.conjugate());
  return (phi_ * y).conjugate() / static_cast<double>(phi_.rows());
}

BandProjection project_band(const SampledField& samples, int m_max, double ridge) {
  if (samples.points.size() != samples.values.size() || samples.values.empty()) {
    throw InvalidInput("project_band: points and values must be nonempty and of equal length");
  }
  const auto n = static_cast<std::size_t>(samples.values.front().rows());
  const std::size_t needed = 2 * band_dimension(m_max) * n * n;
  if (samples.points.size() < needed) {
    throw InvalidInput("project_band: underdetermined system, need at least " +
                       std::to_string(needed) + " points");
  }
  const SampleGrid grid(samples.points, m_max);
  return BandProjector(grid, m_max, ridge).project(samples.values);
}

} // namespace hypolog

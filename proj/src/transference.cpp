#include "hypolog/transference.hpp"

#include <cmath>

namespace hypolog {

namespace {

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

CMatrix amplified_rep(int m, int n, const GroupElement& g) {
  return kron(pi_m(irrep(m), g), CMatrix::Identity(n, n));
}

} // namespace

CoherentEmbedding::CoherentEmbedding(int m, int amplification, CMatrix rho)
    : m_(m), n_(amplification), rho_(std::move(rho)) {
  if (m < 1 || amplification < 1 || rho_.rows() != rho_.cols() ||
      rho_.rows() != static_cast<Eigen::Index>(m) * amplification) {
    throw InvalidInput("embed: state dimension does not match m * n");
  }
}

CMatrix CoherentEmbedding::operator()(const GroupElement& g) const {
  const CMatrix u = amplified_rep(m_, n_, g);
  return u * rho_ * u.adjoint();
}

BandLimitedFunction CoherentEmbedding::coefficients(std::uint64_t seed, double ridge) const {
  const int wide = 2 * m_ - 1;
  const SampleGrid grid(haar_sample(seed, 4 * band_dimension(wide)), wide);
  std::vector<CMatrix> values;
  values.reserve(grid.size());
  for (const GroupElement& g : grid.points()) {
    values.push_back((*this)(g));
  }
  return BandProjector(grid, wide, ridge).project(values).fit;
}

CoherentEmbedding embed(const IrrepGenerators& gen, const CMatrix& rho, int amplification) {
  return CoherentEmbedding(gen.m(), amplification, rho);
}

GeneratorTransferenceReport generator_transference_check(const IrrepGenerators& gen,
                                                         const CMatrix& rho, std::size_t points,
                                                         std::uint64_t seed, int amplification,
                                                         double fd_step, double fd_step2) {
  const int n = amplification;
  const CoherentEmbedding alpha = embed(gen, rho, n);
  const BandLimitedFunction f = alpha.coefficients(seed ^ 0x5eedULL);
  const Direction dirs[2] = {Direction::X, Direction::Y};
  const BandLimitedFunction vf[2] = {vector_field(f, dirs[0]), vector_field(f, dirs[1])};
  const BandLimitedFunction lf = sub_laplacian(f);
  const CMatrix comm[2] = {commutator(gen.amplified(dirs[0], n), rho),
                           commutator(gen.amplified(dirs[1], n), rho)};
  const CMatrix lrho = apply_lindbladian(gen, n, rho);
  const CoherentEmbedding a_comm[2] = {embed(gen, comm[0], n), embed(gen, comm[1], n)};
  const CoherentEmbedding a_l = embed(gen, lrho, n);

  GeneratorTransferenceReport report;
  report.scale = std::max(1.0, rho.norm());
  for (const GroupElement& g : haar_sample(seed, points)) {
    ++report.points;
    const CMatrix al = a_l(g);
    report.exact_residual = std::max(report.exact_residual, max_abs(evaluate(lf, g) - al));
    CMatrix second = CMatrix::Zero(rho.rows(), rho.cols());
    for (int d = 0; d < 2; ++d) {
      const CMatrix ac = a_comm[d](g);
      report.exact_residual = std::max(report.exact_residual, max_abs(evaluate(vf[d], g) - ac));
      const CMatrix fd = (alpha(g * GroupElement::exp(dirs[d], fd_step)) -
                          alpha(g * GroupElement::exp(dirs[d], -fd_step))) /
                         (2.0 * fd_step);
      report.fd_residual = std::max(report.fd_residual, max_abs(fd - ac));
      second += (alpha(g * GroupElement::exp(dirs[d], fd_step2)) - 2.0 * alpha(g) +
                 alpha(g * GroupElement::exp(dirs[d], -fd_step2))) /
                (fd_step2 * fd_step2);
    }
    report.fd_residual = std::max(report.fd_residual, max_abs(second - al));
  }
  return report;
}

SemigroupTransferenceReport semigroup_transference_check(const IrrepGenerators& gen,
                                                         const DensityMatrix& rho,
                                                         const std::vector<double>& times,
                                                         std::size_t points, std::uint64_t seed,
                                                         int amplification) {
  const int n = amplification;
  const SpectralSemigroup sg(lindblad_generator(gen, n));
  const std::vector<GroupElement> pts = haar_sample(seed, points);
  const CoherentEmbedding a0 = embed(gen, rho.matrix(), n);
  const CoherentEmbedding s0 = embed(gen, sg.apply(rho.matrix(), 0.0), n);

  SemigroupTransferenceReport report;
  for (const GroupElement& g : pts) {
    report.initial_residual = std::max(report.initial_residual, max_abs(s0(g) - a0(g)));
  }
  report.max_residual = report.initial_residual;
  for (double t : times) {
    const CMatrix rt = sg.apply(rho.matrix(), t);
    const CoherentEmbedding at = embed(gen, rt, n);
    const CoherentEmbedding dt = embed(gen, apply_lindbladian(gen, n, rt), n);
    const BandLimitedFunction lf = sub_laplacian(at.coefficients(seed ^ 0x5eedULL));
    double r = 0.0;
    for (const GroupElement& g : pts) {
      r = std::max(r, max_abs(dt(g) - evaluate(lf, g)));
    }
    report.times.push_back(t);
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  return report;
}

double entropy_transference_residual(const IrrepGenerators& gen, const DensityMatrix& rho,
                                     double t, std::size_t points, std::uint64_t seed,
                                     int amplification) {
  const int n = amplification;
  const SpectralSemigroup sg(lindblad_generator(gen, n));
  const CMatrix rt = sg.apply(rho.matrix(), t);
  const CMatrix fixed = conditional_expectation(rho.matrix(), gen.m(), n);
  const double quantum = relative_entropy(rt, fixed);
  const CoherentEmbedding at = embed(gen, rt, n);
  double r = 0.0;
  for (const GroupElement& g : haar_sample(seed, points)) {
    r = std::max(r, std::abs(relative_entropy(at(g), fixed) - quantum));
  }
  return r;
}

FisherTransferenceReport fisher_transference_check(const IrrepGenerators& gen,
                                                   const DensityMatrix& rho, std::size_t points,
                                                   std::uint64_t seed, int amplification) {
  const int n = amplification;
  if (points < 2) {
    throw InvalidInput("fisher_transference_check: need at least two points");
  }
  const CoherentEmbedding alpha = embed(gen, rho.matrix(), n);
  const BandLimitedFunction lf = sub_laplacian(alpha.coefficients(seed ^ 0x5eedULL));
  std::vector<double> vals;
  for (const GroupElement& g : haar_sample(seed, points)) {
    const CMatrix log_a =
        matrix_function(HermitianMatrix(alpha(g)), MatrixFunction::log()).matrix();
    vals.push_back(-(evaluate(lf, g) * log_a).trace().real());
  }
  FisherTransferenceReport report;
  report.points = vals.size();
  report.quantum = fisher_information(gen, rho, n);
  double mean = 0.0;
  for (double v : vals) {
    mean += v / static_cast<double>(vals.size());
  }
  double var = 0.0;
  for (double v : vals) {
    var += (v - mean) * (v - mean);
  }
  report.classical = mean;
  report.std_error = std::sqrt(var / static_cast<double>(vals.size() - 1) /
                               static_cast<double>(vals.size()));
  return report;
}

} // namespace hypolog

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hypolog/gradient_estimate.hpp"
#include "hypolog/io.hpp"
#include "hypolog/mlsi.hpp"
#include "hypolog/transference.hpp"
#include "hypolog/version.hpp"
#include "render.hpp"

namespace hypolog::cli {

namespace {

double tol(const ResolvedConfig& rc, const char* name) { return rc.tolerances.at(name).get<double>(); }

std::string fmt(double v) { return format_double(v); }

void check(CommandOutput& out, bool ok, const std::string& what) {
  if (!ok) {
    out.failures.push_back(what);
  }
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

CommandOutput repr_validate(const ResolvedConfig& rc) {
  CommandOutput out;
  Json rows = Json::array();
  for (int m = 1; m <= rc.cfg.m; ++m) {
    const IrrepGenerators gen = build_generators(m);
    const CMatrix& x = gen.x();
    const CMatrix& y = gen.y();
    const CMatrix& z = gen.z();
    const double bxy = max_abs(commutator(x, y) - 2.0 * z);
    const double byz = max_abs(commutator(y, z) - 2.0 * x);
    const double bzx = max_abs(commutator(z, x) - 2.0 * y);
    const double cas =
        max_abs(casimir(gen).matrix() + double(m * m - 1) * CMatrix::Identity(m, m));
    RVector d(m);
    for (int j = 1; j <= m; ++j) {
      const double k = m - 2 * j + 1;
      d(j - 1) = -double(m * m - 1) + k * k;
    }
    const double sym = max_abs(horizontal_symbol(gen).matrix() - d.cast<cplx>().asDiagonal().toDenseMatrix());
    const double skew = std::max({max_abs(x + x.adjoint()), max_abs(y + y.adjoint()),
                                  max_abs(z + z.adjoint())});
    rows.push_back({{"m", m},         {"bracket_xy", bxy}, {"bracket_yz", byz},
                    {"bracket_zx", bzx}, {"casimir", cas},  {"symbol", sym},
                    {"skew", skew}});
    check(out, std::max({bxy, byz, bzx}) <= tol(rc, "bracket"), "bracket relations at m=" + std::to_string(m));
    check(out, cas <= tol(rc, "casimir"), "casimir at m=" + std::to_string(m));
    check(out, sym <= tol(rc, "symbol"), "horizontal symbol at m=" + std::to_string(m));
    check(out, skew <= tol(rc, "bracket"), "skew-Hermitian generators at m=" + std::to_string(m));
  }
  out.result["residuals"] = rows;
  if (rc.cfg.m >= 2) {
    const IrrepGenerators g2 = build_generators(2);
    const cplx i(0.0, 1.0);
    CMatrix X(2, 2), Y(2, 2), Z(2, 2);
    X << 0.0, 1.0, -1.0, 0.0;
    Y << 0.0, i, i, 0.0;
    Z << i, 0.0, 0.0, -i;
    const bool exact = g2.x() == X && g2.y() == Y && g2.z() == Z;
    out.result["m2_exact"] = exact;
    check(out, exact, "m=2 generators differ from the standard matrices");
  }
  return out;
}

CommandOutput qms_spectrum(const ResolvedConfig& rc) {
  CommandOutput out;
  const int m = rc.cfg.m;
  const int n = rc.cfg.n;
  const IrrepGenerators gen = build_generators(m);
  const Superoperator L = lindblad_generator(gen, n);
  const double sym = max_abs(L.matrix - L.matrix.adjoint());
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(L.matrix);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  int kernel = 0;
  for (double v : ev) {
    kernel += std::abs(v) <= tol(rc, "kernel") ? 1 : 0;
  }
  out.result["eigenvalues"] = ev;
  out.result["symmetry_residual"] = sym;
  out.result["kernel_dim"] = kernel;
  if (m >= 2) {
    out.result["gap"] = spectral_gap(L);
  }
  Json cp = Json::array();
  for (double t : {0.1, 1.0}) {
    const CpReport r = verify_cp(L, t);
    cp.push_back({{"t", t}, {"choi_min_eig", r.choi_min_eig}, {"trace_defect", r.trace_defect}});
    check(out, r.choi_min_eig >= -tol(rc, "choi_floor"), "Choi matrix not PSD at t=" + fmt(t));
    check(out, r.trace_defect <= tol(rc, "trace_defect"), "trace defect at t=" + fmt(t));
  }
  out.result["cp"] = cp;
  check(out, sym <= tol(rc, "symmetry"), "generator not self-adjoint");
  check(out, ev.front() <= tol(rc, "kernel"), "generator has a positive eigenvalue");
  check(out, kernel == n * n, "kernel dimension " + std::to_string(kernel) + " != n^2");
  CsvOutput csv;
  csv.columns = {"index", "eigenvalue"};
  for (std::size_t k = 0; k < ev.size(); ++k) {
    csv.rows.push_back({double(k), ev[k]});
  }
  out.csv = csv;
  return out;
}

MlsiConfig mlsi_config(const ResolvedConfig& rc, int threads) {
  MlsiConfig c;
  c.multistarts = rc.cfg.multistarts;
  c.budget = rc.cfg.budget;
  c.seed = rc.cfg.seed;
  c.threads = threads;
  return c;
}

Json starts_json(const std::vector<OptimizerStart>& starts) {
  Json a = Json::array();
  for (const OptimizerStart& s : starts) {
    a.push_back({{"kind", s.kind},
                 {"seed", s.seed},
                 {"initial_ratio", s.initial_ratio},
                 {"final_ratio", s.final_ratio},
                 {"evaluations", s.evaluations},
                 {"converged", s.converged}});
  }
  return a;
}

CommandOutput mlsi_estimate(const ResolvedConfig& rc, int threads) {
  CommandOutput out;
  const IrrepGenerators gen = build_generators(rc.cfg.m);
  const LambdaReport r = estimate_lambda(gen, rc.cfg.n, mlsi_config(rc, threads));
  out.result = {{"lambda_hat", r.lambda_hat},
                {"gap", r.gap},
                {"converged", r.converged},
                {"argmin", to_json(r.argmin.rho)},
                {"argmin_ratio", r.argmin.ratio},
                {"argmin_grad_norm", r.argmin.grad_norm},
                {"starts", r.starts.size()}};
  check(out, r.lambda_hat <= r.gap + tol(rc, "gap_slack"), "lambda_hat exceeds the spectral gap");
  if (rc.cfg.trace) {
    out.trace = Json{{"starts", starts_json(r.starts)}};
  }
  return out;
}

CommandOutput cmlsi(const ResolvedConfig& rc, int threads) {
  CommandOutput out;
  const std::vector<CmlsiCell> cells = cmlsi_table(rc.cfg.m_list, rc.n_list, mlsi_config(rc, threads));
  CsvOutput csv;
  csv.columns = {"m", "n", "lambda_hat", "gap", "starts", "budget", "seed"};
  Json rows = Json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const CmlsiCell& c = cells[i];
    csv.rows.push_back({double(c.m), double(c.n), c.lambda_hat, c.gap, double(c.starts),
                        double(c.budget), double(c.seed)});
    rows.push_back({{"m", c.m}, {"n", c.n}, {"lambda_hat", c.lambda_hat}, {"gap", c.gap},
                    {"starts", c.starts}, {"budget", c.budget}, {"seed", c.seed}});
    const std::string cell = "(m=" + std::to_string(c.m) + ", n=" + std::to_string(c.n) + ")";
    check(out, c.lambda_hat <= c.gap + tol(rc, "gap_slack"), "lambda_hat exceeds gap at " + cell);
    if (i > 0 && cells[i - 1].m == c.m) {
      check(out, c.lambda_hat <= cells[i - 1].lambda_hat * (1.0 + tol(rc, "monotone_band")),
            "lambda_hat increases in n at " + cell);
    }
  }
  out.result["cells"] = rows;
  out.csv = csv;
  return out;
}

GradientEstimateCurve curve_for(const ResolvedConfig& rc, int threads) {
  GradientEstimateConfig g;
  g.ensemble = rc.cfg.ensemble;
  g.points = static_cast<std::size_t>(rc.points);
  g.m_max = rc.cfg.m_max;
  g.seed = rc.cfg.seed;
  g.threads = threads;
  return estimate_curve(rc.times, g);
}

CsvOutput curve_csv(const GradientEstimateCurve& c) {
  CsvOutput csv;
  csv.columns = {"t", "C_hat", "stderr", "skipped_points"};
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    csv.rows.push_back({c.times[i], c.c_hat[i], c.std_error[i], double(c.skipped[i])});
  }
  return csv;
}

Json fit_json(const GradientEstimateCurve& c) {
  try {
    const DecayFit f = fit_decay(c, 1.0);
    return {{"t_min", 1.0}, {"rate", f.rate}, {"prefactor", f.prefactor}, {"R2", f.r2},
            {"points", f.points}};
  } catch (const InvalidInput&) {
    return nullptr;
  }
}

CommandOutput gradient_curve(const ResolvedConfig& rc, int threads) {
  CommandOutput out;
  const GradientEstimateCurve c = curve_for(rc, threads);
  out.result = {{"times", c.times},     {"C_hat", c.c_hat},      {"stderr", c.std_error},
                {"skipped", c.skipped}, {"fit", fit_json(c)},
                {"seeds", {{"base", c.seed}, {"ensemble", c.ensemble_size}, {"points", c.points}}}};
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    if (c.times[i] == 0.0) {
      check(out, std::abs(c.c_hat[i] - 1.0) <= tol(rc, "c0"), "C_hat(0) != 1");
    }
  }
  out.csv = curve_csv(c);
  return out;
}

CommandOutput kappa_lambda(const ResolvedConfig& rc, int threads) {
  CommandOutput out;
  const GradientEstimateCurve c = curve_for(rc, threads);
  out.csv = curve_csv(c);
  out.result["fit"] = fit_json(c);
  out.result["seeds"] = {{"base", c.seed}, {"ensemble", c.ensemble_size}, {"points", c.points}};
  CmlsiEstimate k;
  try {
    k = kappa_and_lambda(c, 1.0);
  } catch (const NonIntegrableTail& e) {
    check(out, false, std::string("tail not integrable: ") + e.what());
    return out;
  }
  const double c2 = k.tail_prefactor;
  // the sub-Laplacian spectral gap on the group
  const LambdaEpsScan le = lambda_eps_pipeline(c, 2.0, 1.0);
  out.result.update({{"kappa", k.kappa},
                     {"lambda", k.lambda},
                     {"lambda_error", k.lambda_error},
                     {"t_cutoff", k.t_cutoff},
                     {"tail_model", k.tail_model},
                     {"tail_rate", k.tail_rate},
                     {"tail_prefactor", k.tail_prefactor},
                     {"R2", k.r2},
                     {"kappa_grid", k.kappa_grid},
                     {"kappa_tail", k.kappa_tail},
                     {"prefactor_readings", {{"two_over_C2", 2.0 / c2}, {"C2_over_8", c2 / 8.0}}},
                     {"lambda_eps",
                      {{"eps", le.best.eps},
                       {"t_eps", le.best.t_eps},
                       {"kappa_eps", le.best.kappa_eps},
                       {"lambda_eps", le.best.lambda_eps}}}});
  const bool finite = std::isfinite(k.kappa) && k.kappa > 0.0 && std::isfinite(k.lambda) && k.lambda > 0.0;
  check(out, finite, "kappa or lambda not finite and positive");
  check(out, std::abs(k.lambda * 2.0 * k.kappa - 1.0) <= tol(rc, "lambda_identity"),
        "lambda != 1/(2 kappa)");
  const double target = tol(rc, "tail_rate_target");
  check(out, std::abs(k.tail_rate - target) <= tol(rc, "tail_rate_band") * std::abs(target),
        "tail rate " + fmt(k.tail_rate) + " outside the band around " + fmt(target));
  return out;
}

DensityMatrix seeded_state(const ResolvedConfig& rc, std::uint64_t stream) {
  Rng rng(sub_seed(rc.cfg.seed, stream, 0));
  return DensityMatrix(random_density_matrix(rc.cfg.m * rc.cfg.n, rng, 0.01));
}

CommandOutput transference(const ResolvedConfig& rc) {
  CommandOutput out;
  const int n = rc.cfg.n;
  const IrrepGenerators gen = build_generators(rc.cfg.m);
  const DensityMatrix rho = seeded_state(rc, 20);
  const auto pts = static_cast<std::size_t>(rc.points);
  const GeneratorTransferenceReport g =
      generator_transference_check(gen, rho.matrix(), pts, sub_seed(rc.cfg.seed, 21, 0), n);
  const SemigroupTransferenceReport s =
      semigroup_transference_check(gen, rho, rc.times, pts, sub_seed(rc.cfg.seed, 22, 0), n);
  std::vector<double> ent;
  for (double t : rc.times) {
    ent.push_back(entropy_transference_residual(gen, rho, t, pts, sub_seed(rc.cfg.seed, 23, 0), n));
  }
  const FisherTransferenceReport f =
      fisher_transference_check(gen, rho, pts, sub_seed(rc.cfg.seed, 24, 0), n);
  out.result = {{"state", to_json(rho)},
                {"generator", {{"exact_residual", g.exact_residual}, {"fd_residual", g.fd_residual}, {"scale", g.scale}}},
                {"semigroup", {{"times", s.times}, {"residuals", s.residuals}, {"initial_residual", s.initial_residual}}},
                {"entropy", {{"times", rc.times}, {"residuals", ent}}},
                {"fisher", {{"quantum", f.quantum}, {"classical", f.classical}, {"std_error", f.std_error}}},
                {"points", pts}};
  check(out, g.exact_residual <= tol(rc, "exact"), "exact generator transference residual");
  check(out, g.fd_residual <= tol(rc, "fd") * g.scale, "finite-difference transference residual");
  check(out, s.initial_residual <= tol(rc, "semigroup") && s.max_residual <= tol(rc, "semigroup"),
        "semigroup transference residual");
  for (std::size_t i = 0; i < ent.size(); ++i) {
    check(out, ent[i] <= tol(rc, "entropy"), "entropy transference at t=" + fmt(rc.times[i]));
  }
  check(out, std::abs(f.classical - f.quantum) <= tol(rc, "fisher_sigmas") * f.std_error + 1e-9,
        "Fisher transference outside the Monte-Carlo band");
  return out;
}

CommandOutput decay(const ResolvedConfig& rc, int threads) {
  CommandOutput out;
  const IrrepGenerators gen = build_generators(rc.cfg.m);
  const LambdaReport lr = estimate_lambda(gen, rc.cfg.n, mlsi_config(rc, threads));
  const DensityMatrix rho0 = seeded_state(rc, 30);
  const DecayTrajectory d = decay_trajectory(gen, rc.cfg.n, rho0, rc.times, lr.lambda_hat);
  out.result = {{"rho0", to_json(rho0)},
                {"lambda_hat", d.lambda_hat},
                {"times", d.times},
                {"entropy", d.entropies},
                {"fisher", d.fisher},
                {"max_bound_excess", d.max_bound_excess},
                {"max_derivative_error", d.max_derivative_error},
                {"monotone", d.monotone}};
  check(out, d.monotone, "entropy not monotone");
  check(out, d.max_derivative_error <= tol(rc, "derivative_rtol"), "-dD/dt differs from I");
  check(out, d.max_bound_excess <= tol(rc, "bound_slack"), "entropy above exp(-2 lambda t) D(0)");
  CsvOutput csv;
  csv.columns = {"t", "entropy", "fisher"};
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    csv.rows.push_back({d.times[i], d.entropies[i], d.fisher[i]});
  }
  csv.meta = {{"lambda_hat", fmt(d.lambda_hat)}};
  out.csv = csv;
  if (rc.cfg.trace) {
    out.trace = Json{{"starts", starts_json(lr.starts)}};
  }
  return out;
}

CommandOutput prop_gradient(const ResolvedConfig& rc) {
  CommandOutput out;
  const int mm = rc.cfg.m_max;
  const auto pts = static_cast<std::size_t>(rc.points);
  const BandSupremum sup(mm);
  Json matrix = Json::array();
  for (int n : rc.n_list) {
    Rng rng(sub_seed(rc.cfg.seed, 40, n));
    std::vector<BandLimitedFunction> fs;
    for (int i = 0; i < n; ++i) {
      fs.push_back(random_real_function(mm, rng));
    }
    for (double t : rc.times) {
      const double c = sup.at(t);
      const MatrixGeReport r = matrix_ge_check(fs, t, c, pts, sub_seed(rc.cfg.seed, 41, n));
      matrix.push_back({{"n", n}, {"t", t}, {"C", c}, {"min_margin", r.min_margin}, {"scale", r.scale}});
      check(out, r.min_margin >= -tol(rc, "matrix_margin") * r.scale,
            "matrix inequality at n=" + std::to_string(n) + ", t=" + fmt(t));
    }
  }
  Rng rng(sub_seed(rc.cfg.seed, 42, 0));
  const int vd = 2;
  const BandLimitedFunction F =
      random_hermitian_function(mm, vd, rng) + cplx(0.0, 1.0) * random_hermitian_function(mm, vd, rng);
  const auto positive = [&] {
    const BandLimitedFunction h = random_hermitian_function(mm, vd, rng);
    return h + BandLimitedFunction::constant(1.5 * sup_norm_bound(h) * CMatrix::Identity(vd, vd), mm);
  };
  const BandLimitedFunction A = positive();
  const BandLimitedFunction B = positive();
  Json lieb = Json::array();
  for (double t : rc.times) {
    const double c = sup.at(t);
    for (double s : {0.25, 0.5, 0.75}) {
      const LiebFormReport r = lieb_form_check(F, A, B, s, t, c, pts, sub_seed(rc.cfg.seed, 43, 0));
      lieb.push_back({{"s", s}, {"t", t}, {"C", c}, {"lhs", r.lhs}, {"rhs", r.rhs},
                      {"margin", r.margin}, {"std_error", r.std_error}});
      check(out, r.margin >= -tol(rc, "lieb_sigmas") * r.std_error,
            "Lieb-type form at s=" + fmt(s) + ", t=" + fmt(t));
    }
  }
  out.result = {{"matrix_ge", matrix}, {"lieb_form", lieb}, {"points", pts}};
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int thread_count(int requested) {
  if (requested > 0) {
    return requested;
  }
  if (const char* env = std::getenv("HYPOLOG_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) {
        return v;
      }
    } catch (const std::logic_error&) {
    }
    throw UsageError(std::string("HYPOLOG_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

void write_artifacts(const ResolvedConfig& rc, const CommandOutput& out) {
  namespace fs = std::filesystem;
  const fs::path dir(rc.cfg.output_dir);
  fs::create_directories(dir);
  ArtifactHeader h;
  h.command = rc.cfg.command;
  h.config_hash = rc.hash;
  h.seed = rc.cfg.seed;
  h.version = kVersion;
  h.tolerances = rc.tolerances;
  h.generated_at = utc_timestamp();

  Json result = out.result;
  result["validation"] = {{"passed", out.failures.empty()}, {"failures", out.failures}};
  std::ofstream js(dir / (rc.cfg.command + ".json"));
  js << artifact_json(h, rc.echo, result).dump(2) << "\n";

  if (out.csv) {
    std::ofstream cs(dir / (rc.cfg.command + ".csv"));
    write_csv_header(cs, h, out.csv->meta);
    for (std::size_t i = 0; i < out.csv->columns.size(); ++i) {
      cs << (i ? "," : "") << out.csv->columns[i];
    }
    cs << "\n";
    for (const auto& row : out.csv->rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        cs << (i ? "," : "") << format_double(row[i]);
      }
      cs << "\n";
    }
  }
  if (out.trace) {
    std::ofstream ts(dir / (rc.cfg.command + ".trace.json"));
    ts << artifact_json(h, rc.echo, *out.trace).dump(2) << "\n";
  }
}

int report_render(const std::string& input, const std::string& svg) {
  std::string missing;
  if (input.empty()) missing = "--input";
  if (svg.empty()) missing += (missing.empty() ? "" : ", ") + std::string("--svg");
  if (!missing.empty()) {
    throw UsageError("report-render: missing " + missing);
  }
  std::ifstream in(input);
  if (!in) {
    throw UsageError("cannot read " + input);
  }
  CsvTable table;
  try {
    table = read_csv(in);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  std::ostringstream os;
  render_svg(table, os);
  std::ofstream(svg) << os.str();
  return 0;
}

} // namespace

CommandOutput run_command(const ResolvedConfig& rc, int threads) {
  const std::string& c = rc.cfg.command;
  if (c == "repr-validate") return repr_validate(rc);
  if (c == "qms-spectrum") return qms_spectrum(rc);
  if (c == "mlsi-estimate") return mlsi_estimate(rc, threads);
  if (c == "cmlsi-table") return cmlsi(rc, threads);
  if (c == "gradient-curve") return gradient_curve(rc, threads);
  if (c == "kappa-lambda") return kappa_lambda(rc, threads);
  if (c == "transference-check") return transference(rc);
  if (c == "decay-trajectory") return decay(rc, threads);
  return prop_gradient(rc);
}

int run(int argc, char** argv) {
  CLI::App app{"Sub-Laplacian and quantum Markov semigroup experiments"};
  std::string command, config_path, input, svg, t_grid, out_dir;
  int m = 0, n = 0, m_max = 0, ensemble = 0, points = 0, multistarts = 0, budget = 0, threads = 0;
  std::uint64_t seed = 0;
  std::vector<int> m_list, n_list;
  std::vector<std::string> tol_overrides;
  bool trace = false;
  std::string commands;
  for (const std::string& c : command_names()) {
    commands += c + ", ";
  }
  app.add_option("command", command, "one of: " + commands + "report-render");
  app.add_option("--config", config_path, "JSON config file; flags override its fields");
  auto* o_m = app.add_option("--m", m, "irrep dimension");
  auto* o_n = app.add_option("--n", n, "amplification");
  auto* o_mm = app.add_option("--m-max", m_max, "band limit of the test functions");
  auto* o_ens = app.add_option("--ensemble", ensemble, "number of random functions");
  auto* o_pts = app.add_option("--points", points, "Haar sample points");
  auto* o_ms = app.add_option("--multistarts", multistarts, "optimizer starts");
  auto* o_bud = app.add_option("--budget", budget, "objective evaluations per start");
  auto* o_seed = app.add_option("--seed", seed, "base seed");
  auto* o_ml = app.add_option("--m-list", m_list, "m values for cmlsi-table")->delimiter(',');
  auto* o_nl = app.add_option("--n-list", n_list, "n values")->delimiter(',');
  auto* o_tg = app.add_option("--t-grid", t_grid, "log:COUNT:TMIN:TMAX, linear:COUNT:TMIN:TMAX or a comma list");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  app.add_option("--tol", tol_overrides, "tolerance override NAME=VALUE (repeatable)");
  auto* o_thr = app.add_option("--threads", threads, "worker threads (fallback HYPOLOG_THREADS)");
  auto* o_tr = app.add_flag("--trace", trace, "write optimizer traces as JSON");
  app.add_option("--input", input, "report-render: results CSV");
  app.add_option("--svg", svg, "report-render: output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (command == "report-render") {
      return report_render(input, svg);
    }
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        throw UsageError("cannot read config " + config_path);
      }
      Json j;
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("malformed config: ") + e.what());
      }
      cfg = config_from_json(j);
    }
    if (!command.empty()) cfg.command = command;
    if (o_m->count()) cfg.m = m;
    if (o_n->count()) cfg.n = n;
    if (o_mm->count()) cfg.m_max = m_max;
    if (o_ens->count()) cfg.ensemble = ensemble;
    if (o_pts->count()) cfg.points = points;
    if (o_ms->count()) cfg.multistarts = multistarts;
    if (o_bud->count()) cfg.budget = budget;
    if (o_seed->count()) cfg.seed = seed;
    if (o_ml->count()) cfg.m_list = m_list;
    if (o_nl->count()) cfg.n_list = n_list;
    if (o_tg->count()) cfg.t_grid = parse_time_grid(t_grid);
    if (o_out->count()) cfg.output_dir = out_dir;
    if (o_thr->count()) cfg.threads = threads;
    if (o_tr->count()) cfg.trace = trace;
    for (const std::string& kv : tol_overrides) {
      const auto eq = kv.find('=');
      try {
        if (eq == std::string::npos) throw std::invalid_argument(kv);
        cfg.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      } catch (const std::logic_error&) {
        throw UsageError("--tol expects NAME=VALUE, got '" + kv + "'");
      }
    }
    const ResolvedConfig rc = resolve(cfg);
    const int nthreads = thread_count(cfg.threads);
    const CommandOutput out = run_command(rc, nthreads);
    write_artifacts(rc, out);
    for (const std::string& f : out.failures) {
      std::cerr << "validation failed: " << f << "\n";
    }
    return out.failures.empty() ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace hypolog::cli

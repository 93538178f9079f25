#include "stolev/runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stolev/density.hpp"
#include "stolev/lattice.hpp"
#include "stolev/parallel.hpp"
#include "stolev/rng.hpp"
#include "stolev/solver.hpp"
#include "stolev/stability.hpp"

namespace stolev {

namespace fs = std::filesystem;

namespace {

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct OutputSet {
  fs::path dir;
  std::vector<fs::path> files;

  fs::path file(const std::string& name) {
    files.push_back(dir / name);
    return files.back();
  }
};

void run_simulate(const SimulateConfig& c, std::uint64_t master_seed, int /*workers*/,
                  OutputSet& out, RunOutcome& outcome) {
  const PathGrid grid{c.horizon, c.n_steps};
  for (std::size_t p = 0; p < c.n_paths; ++p) {
    const LevyPath path = simulate_path(c.params, grid, rng::derive_seed(master_seed, p));
    std::ofstream os(out.file("path_" + std::to_string(p) + ".csv"), std::ios::binary);
    write_path_csv(path, os);
  }
  outcome.summary = "simulated " + std::to_string(c.n_paths) + " path(s)";
}

SolutionPath inject_cubic(const PathGrid& grid) {
  SolutionPath sol;
  sol.grid = grid;
  sol.x0 = 0.0;
  sol.provenance = Provenance::injected;
  sol.values.resize(grid.n_steps + 1);
  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    const double t = grid.time_at(k);
    sol.values[k] = t * t * t;
  }
  return sol;
}

void run_lattice(const LatticeConfig& c, std::uint64_t master_seed, int workers,
                 OutputSet& out, RunOutcome& outcome) {
  report::CsvTable table;
  table.columns = {"trial", "r1", "r2", "rmin", "rmax", "verdict"};
  if (c.mode == "ode") {
    const PathGrid grid{c.horizon, c.n_steps};
    const LevyPath noise = zero_path(grid);
    SolutionPath flat;
    flat.grid = grid;
    flat.x0 = 0.0;
    flat.provenance = Provenance::injected;
    flat.values.assign(grid.n_steps + 1, 0.0);
    const SolutionPath cubic = inject_cubic(grid);
    const double r1 = integral_residual(flat, c.drift, noise);
    const double r2 = integral_residual(cubic, c.drift, noise);
    const auto [lo, hi] = pointwise_min_max(flat, cubic);
    const double rmin = integral_residual(lo, c.drift, noise);
    const double rmax = integral_residual(hi, c.drift, noise);
    const double tol = c.ode_residual_factor * grid.dt();
    const bool pass = rmin <= tol && rmax <= tol;
    table.rows.push_back({0.0, r1, r2, rmin, rmax, pass ? 1.0 : 0.0});
    outcome.verdict_pass = pass;
    std::ostringstream ss;
    ss << "ode showcase: rmin " << report::fmt(rmin) << ", rmax " << report::fmt(rmax)
       << ", tolerance " << report::fmt(tol);
    outcome.summary = ss.str();
  } else {
    const PathGrid grid{c.horizon, c.n_steps};
    std::vector<LatticeReport> reports(c.n_trials);
    par::for_index(c.n_trials, workers, [&](std::size_t trial) {
      const LevyPath path =
          simulate_path(c.params, grid, rng::derive_seed(master_seed, trial));
      const SolutionPath s1 = euler_solve(c.x0, c.drift, path);
      const SolutionPath s2 = euler_solve(c.x0, c.drift_variant, path);
      reports[trial] = lattice_check(s1, s2, c.drift, path, c.safety_factor);
    });
    std::size_t passed = 0;
    for (std::size_t trial = 0; trial < c.n_trials; ++trial) {
      const auto& r = reports[trial];
      if (r.pass) ++passed;
      table.rows.push_back({static_cast<double>(trial), r.residual_1, r.residual_2,
                            r.residual_min, r.residual_max, r.pass ? 1.0 : 0.0});
    }
    const double frac = static_cast<double>(passed) / static_cast<double>(c.n_trials);
    outcome.verdict_pass = frac >= c.min_pass_fraction;
    std::ostringstream ss;
    ss << "stochastic census: " << passed << "/" << c.n_trials
       << " trials within tolerance (fraction " << report::fmt(frac) << ")";
    outcome.summary = ss.str();
  }
  report::write_csv(table, out.file("lattice.csv"));
}

void run_uniqueness(const UniquenessConfig& c, std::uint64_t master_seed, int workers,
                    OutputSet& out, RunOutcome& outcome) {
  const auto rows = uniqueness_probe(c.x0, c.drift, c.params, c.horizon, c.level_steps,
                                     c.n_paths, master_seed, workers);
  report::CsvTable table;
  table.columns = {"level_steps", "median", "q1", "q3"};
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.rows.push_back({static_cast<double>(rows[i].n_steps), rows[i].median,
                          rows[i].q1, rows[i].q3});
    if (i > 0 && !(rows[i].median < rows[i - 1].median)) decreasing = false;
  }
  report::write_csv(table, out.file("uniqueness.csv"));
  outcome.verdict_pass = !c.require_decreasing || decreasing;
  outcome.summary = decreasing ? "medians strictly decreasing across levels"
                               : "medians not strictly decreasing";
}

void run_stability_experiment(const StabilityConfig& c, std::uint64_t master_seed,
                              int workers, OutputSet& out, RunOutcome& outcome) {
  StabilitySpec spec = c.spec;
  spec.master_seed = master_seed;
  const StabilityReport report = run_stability(spec, workers);
  report::CsvTable table;
  table.columns = {"n", "epsilon", "p_hat", "ci_lo", "ci_hi", "mean_sup"};
  for (const auto& cell : report.cells)
    table.rows.push_back({static_cast<double>(cell.n), cell.epsilon, cell.p_hat,
                          cell.ci_lo, cell.ci_hi, cell.mean_sup});
  report::write_csv(table, out.file("stability.csv"));

  std::ostringstream txt;
  txt << "hypothesis report\n=================\n";
  for (const auto& h : report.hypotheses) {
    const char* status = h.status == ConditionOutcome::Status::pass     ? "pass"
                         : h.status == ConditionOutcome::Status::fail   ? "FAIL"
                                                                        : "analytic";
    txt << "condition " << h.name << ": " << status << " -- " << h.detail << "\n";
  }
  txt << "\nnote: " << report.analytic_note << "\n";
  report::write_text(txt.str(), out.file("hypotheses.txt"));

  bool trend = true;
  for (double eps : spec.epsilons) {
    double prev = -1.0;
    double first = -1.0, last = -1.0;
    for (const auto& cell : report.cells) {
      if (cell.epsilon != eps) continue;
      if (first < 0.0) first = cell.p_hat;
      if (prev >= 0.0 && cell.p_hat > prev) trend = false;
      prev = cell.p_hat;
      last = cell.p_hat;
    }
    if (!(last < first)) trend = false;
  }
  outcome.verdict_pass = !c.require_trend || trend;
  outcome.summary = trend ? "exceedance probabilities decay over n"
                          : "exceedance probabilities do not decay";
}

void run_density_experiment(const DensityConfig& c, std::uint64_t master_seed,
                            int workers, OutputSet& out, RunOutcome& outcome) {
  const auto y_grid = make_uniform_grid(c.grid_lo, c.grid_hi, c.grid_points);
  const auto samples = sample_terminal(c.params, c.drift, c.x, c.t, c.sample_count,
                                       c.n_steps, master_seed, workers);
  const DensityEstimate est = kde(samples, c.t, c.x, y_grid, c.bandwidth, workers);
  // density of x + Z(t) on the grid: the noise-only reference
  std::vector<double> shifted(y_grid.size());
  for (std::size_t i = 0; i < y_grid.size(); ++i) shifted[i] = y_grid[i] - c.x;
  const auto oracle = stable_density_oracle(c.params, c.t, shifted, workers);
  const BoundFit fit = fit_bound_constant(est, c.params.alpha, c.x);

  report::CsvTable table;
  table.columns = {"y", "p_hat", "oracle_p", "bound_envelope"};
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    const double envelope =
        fit.n_hat * c.t / std::pow(c.t + std::abs(c.x - y_grid[i]), c.params.alpha + 1.0);
    table.rows.push_back({y_grid[i], est.p_hat[i], oracle[i], envelope});
  }
  report::write_csv(table, out.file("density.csv"));

  double linf = 0.0;
  for (std::size_t i = 0; i < y_grid.size(); ++i)
    linf = std::max(linf, std::abs(est.p_hat[i] - oracle[i]));
  const double mass = trapezoid_mass(y_grid, est.p_hat);
  std::vector<double> centered(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) centered[i] = samples[i] - c.x;
  const double tail = tail_exponent_estimate(centered, c.k_fraction);

  bool pass = mass >= c.mass_lo && mass <= 1.0 + 1e-9;
  if (c.compare_oracle) pass = pass && linf <= c.linf_tol;
  pass = pass && std::isfinite(fit.n_hat) && fit.n_hat <= c.n_hat_ceiling;

  std::ostringstream txt;
  txt << "density report\n==============\n"
      << "bandwidth " << report::fmt(est.bandwidth) << "\n"
      << "trapezoid mass " << report::fmt(mass) << "\n"
      << "L-inf distance to noise-only reference " << report::fmt(linf) << "\n"
      << "N_hat " << report::fmt(fit.n_hat) << " at y = " << report::fmt(fit.argmax_y)
      << "\n"
      << "tail exponent estimate " << report::fmt(tail) << "\n";
  report::write_text(txt.str(), out.file("density_report.txt"));

  outcome.verdict_pass = pass;
  std::ostringstream ss;
  ss << "mass " << report::fmt(mass) << ", linf " << report::fmt(linf) << ", N_hat "
     << report::fmt(fit.n_hat) << ", tail " << report::fmt(tail);
  outcome.summary = ss.str();
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config) {
  RunOutcome outcome;
  outcome.manifest.config_digest = report::string_digest(serialize_config(config));
  outcome.manifest.toolkit_version = report::kToolkitVersion;
  outcome.manifest.started = timestamp_now();

  OutputSet out;
  out.dir = config.output_dir;
  std::error_code ec;
  fs::create_directories(out.dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out.dir.string());

  const int workers = config.workers;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SimulateConfig>)
          run_simulate(c, config.master_seed, workers, out, outcome);
        else if constexpr (std::is_same_v<T, LatticeConfig>)
          run_lattice(c, config.master_seed, workers, out, outcome);
        else if constexpr (std::is_same_v<T, UniquenessConfig>)
          run_uniqueness(c, config.master_seed, workers, out, outcome);
        else if constexpr (std::is_same_v<T, StabilityConfig>)
          run_stability_experiment(c, config.master_seed, workers, out, outcome);
        else if constexpr (std::is_same_v<T, DensityConfig>)
          run_density_experiment(c, config.master_seed, workers, out, outcome);
      },
      config.payload);

  outcome.manifest.finished = timestamp_now();
  for (const auto& f : out.files)
    outcome.manifest.output_checksums[f.filename().string()] =
        report::file_checksum(f);
  report::write_manifest(outcome.manifest, out.dir / "manifest.json");
  return outcome;
}

}  // namespace stolev

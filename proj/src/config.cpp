#include "stolev/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stolev {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError("config: " + what); }

template <class T>
T field(const ordered_json& j, const char* name, const T& fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + name + "' has the wrong type");
  }
}

template <class T>
T required(const ordered_json& j, const char* name) {
  if (!j.contains(name)) bad(std::string("missing required field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + name + "' has the wrong type");
  }
}

DriftSpec drift_from_json_impl(const ordered_json& j);

DriftSpec drift_from_json(const ordered_json& j) {
  DriftSpec spec = drift_from_json_impl(j);
  if (j.contains("declared_bound"))
    spec.declared_bound = required<double>(j, "declared_bound");
  return spec;
}

DriftSpec drift_from_json_impl(const ordered_json& j) {
  const auto kind = required<std::string>(j, "kind");
  try {
    if (kind == "zero") return DriftSpec::zero();
    if (kind == "constant") return DriftSpec::constant(required<double>(j, "value"));
    if (kind == "sign") return DriftSpec::sign();
    if (kind == "sign_plus") return DriftSpec::sign_plus();
    if (kind == "mollified_sign")
      return DriftSpec::mollified_sign(required<double>(j, "epsilon"));
    if (kind == "holder_power")
      return DriftSpec::holder_power(required<double>(j, "beta"),
                                     required<double>(j, "scale"));
    if (kind == "piecewise_constant")
      return DriftSpec::piecewise_constant(
          required<std::vector<double>>(j, "breakpoints"),
          required<std::vector<double>>(j, "values"));
    if (kind == "linear_growth_capped")
      return DriftSpec::linear_growth_capped(required<double>(j, "slope"),
                                             required<double>(j, "cap"));
  } catch (const std::domain_error& e) {
    bad(std::string("drift: ") + e.what());
  }
  bad("unknown drift kind '" + kind + "'");
}

ordered_json drift_to_json(const DriftSpec& d) {
  ordered_json j;
  switch (d.kind) {
    case DriftKind::zero: j["kind"] = "zero"; break;
    case DriftKind::constant:
      j["kind"] = "constant";
      j["value"] = d.value;
      break;
    case DriftKind::sign: j["kind"] = "sign"; break;
    case DriftKind::sign_plus: j["kind"] = "sign_plus"; break;
    case DriftKind::mollified_sign:
      j["kind"] = "mollified_sign";
      j["epsilon"] = d.epsilon;
      break;
    case DriftKind::holder_power:
      j["kind"] = "holder_power";
      j["beta"] = d.beta;
      j["scale"] = d.scale;
      break;
    case DriftKind::piecewise_constant:
      j["kind"] = "piecewise_constant";
      j["breakpoints"] = d.breakpoints;
      j["values"] = d.values;
      break;
    case DriftKind::linear_growth_capped:
      j["kind"] = "linear_growth_capped";
      j["slope"] = d.slope;
      j["cap"] = d.cap;
      break;
  }
  if (d.declared_bound && d.declared_bound != d.analytic_bound())
    j["declared_bound"] = *d.declared_bound;
  return j;
}

DriftSequence sequence_from_json(const ordered_json& j) {
  const auto family = required<std::string>(j, "family");
  if (family == "mollified_sign_family")
    return DriftSequence::mollified_sign_family(field<double>(j, "scale", 1.0));
  if (family == "constant_to")
    return DriftSequence::constant_to(required<double>(j, "k0"),
                                      required<double>(j, "amplitude"));
  if (family == "shifted_sign")
    return DriftSequence::shifted_sign(field<double>(j, "shift", 1.0));
  if (family == "growing_constant") return DriftSequence::growing_constant();
  if (family == "stationary")
    return DriftSequence::stationary(drift_from_json(j.at("drift")));
  bad("unknown drift-sequence family '" + family + "'");
}

ordered_json sequence_to_json(const DriftSequence& seq) {
  ordered_json j;
  j["family"] = seq.family;
  if (seq.family == "mollified_sign_family") {
    j["scale"] = seq.term(1).epsilon;
  } else if (seq.family == "constant_to") {
    j["k0"] = seq.limit.value;
    j["amplitude"] = seq.term(1).value - seq.limit.value;
  } else if (seq.family == "shifted_sign") {
    j["shift"] = seq.term(1).breakpoints.at(0);
  } else if (seq.family == "stationary") {
    j["drift"] = drift_to_json(seq.limit);
  }
  return j;
}

InitialSequence xs_from_json(const ordered_json& j) {
  const auto kind = required<std::string>(j, "kind");
  if (kind == "harmonic")
    return InitialSequence::harmonic(required<double>(j, "x0"),
                                     required<double>(j, "amplitude"));
  if (kind == "fixed") return InitialSequence::fixed(required<double>(j, "x0"));
  if (kind == "alternating")
    return InitialSequence::alternating(required<double>(j, "x0"),
                                        required<double>(j, "amplitude"));
  bad("unknown initial-sequence kind '" + kind + "'");
}

ordered_json xs_to_json(const InitialSequence& xs) {
  ordered_json j;
  switch (xs.kind) {
    case InitialSequence::Kind::harmonic: j["kind"] = "harmonic"; break;
    case InitialSequence::Kind::fixed: j["kind"] = "fixed"; break;
    case InitialSequence::Kind::alternating: j["kind"] = "alternating"; break;
  }
  j["x0"] = xs.x0;
  if (xs.kind != InitialSequence::Kind::fixed) j["amplitude"] = xs.amplitude;
  return j;
}

StableParams params_from_json(const ordered_json& j) {
  StableParams p{field<double>(j, "alpha", 1.5), field<double>(j, "c", 1.0)};
  try {
    p.validate();
  } catch (const std::domain_error& e) {
    bad(e.what());
  }
  return p;
}

}  // namespace

DriftSpec drift_from_json_text(const std::string& json_text) {
  return drift_from_json(ordered_json::parse(json_text));
}

ExperimentConfig parse_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.kind = required<std::string>(j, "kind");
  if (!j.contains("master_seed")) bad("master_seed is mandatory (no wall-clock seeding)");
  cfg.master_seed = required<std::uint64_t>(j, "master_seed");
  if (j.contains("workers")) {
    if (j.at("workers").is_string()) {
      if (j.at("workers").get<std::string>() != "auto")
        bad("workers must be an integer or \"auto\"");
      cfg.workers = 0;
    } else {
      cfg.workers = required<int>(j, "workers");
      if (cfg.workers < 1) bad("workers must be >= 1");
    }
  }
  cfg.output_dir = field<std::string>(j, "output_dir", "out");

  if (cfg.kind == "simulate") {
    SimulateConfig c;
    c.params = params_from_json(j);
    c.horizon = field<double>(j, "horizon", 1.0);
    c.n_steps = field<std::size_t>(j, "n_steps", 4096);
    c.n_paths = field<std::size_t>(j, "n_paths", 1);
    cfg.payload = c;
  } else if (cfg.kind == "lattice") {
    LatticeConfig c;
    c.mode = field<std::string>(j, "mode", "stochastic");
    if (c.mode != "ode" && c.mode != "stochastic")
      bad("lattice mode must be 'ode' or 'stochastic'");
    if (j.contains("drift")) c.drift = drift_from_json(j.at("drift"));
    if (j.contains("drift_variant"))
      c.drift_variant = drift_from_json(j.at("drift_variant"));
    c.params = params_from_json(j);
    c.horizon = field<double>(j, "horizon", 1.0);
    c.n_steps = field<std::size_t>(j, "n_steps", 4096);
    c.n_trials = field<std::size_t>(j, "n_trials", 500);
    c.safety_factor = field<double>(j, "safety_factor", 2.0);
    c.x0 = field<double>(j, "x0", 0.0);
    c.min_pass_fraction = field<double>(j, "min_pass_fraction", 0.99);
    c.ode_residual_factor = field<double>(j, "ode_residual_factor", 3.0);
    cfg.payload = c;
  } else if (cfg.kind == "uniqueness") {
    UniquenessConfig c;
    if (j.contains("drift")) c.drift = drift_from_json(j.at("drift"));
    c.params = params_from_json(j);
    c.horizon = field<double>(j, "horizon", 1.0);
    c.x0 = field<double>(j, "x0", 0.0);
    c.level_steps = required<std::vector<std::size_t>>(j, "level_steps");
    c.n_paths = field<std::size_t>(j, "n_paths", 200);
    c.require_decreasing = field<bool>(j, "require_decreasing", true);
    cfg.payload = c;
  } else if (cfg.kind == "stability") {
    StabilityConfig c;
    c.spec.xs = xs_from_json(j.at("initial_values"));
    c.spec.drifts = sequence_from_json(j.at("drift_sequence"));
    c.spec.params = params_from_json(j);
    c.spec.horizon = field<double>(j, "horizon", 1.0);
    c.spec.epsilons = required<std::vector<double>>(j, "epsilons");
    c.spec.indices = required<std::vector<std::size_t>>(j, "indices");
    c.spec.n_paths = field<std::size_t>(j, "n_paths", 2000);
    c.spec.finest_n = field<std::size_t>(j, "finest_n", 4096);
    c.spec.master_seed = cfg.master_seed;
    c.spec.mu = MeasureSpec{field<double>(j, "mu_alpha", c.spec.params.alpha)};
    c.spec.common_noise = field<bool>(j, "common_noise", true);
    c.spec.cond1_tol = field<double>(j, "cond1_tol", 0.01);
    c.spec.cond4_delta = field<double>(j, "cond4_delta", 0.01);
    c.spec.cond4_truncation = field<double>(j, "cond4_truncation", 1.0e4);
    c.spec.cond4_quad_points = field<std::size_t>(j, "cond4_quad_points", 200000);
    c.require_trend = field<bool>(j, "require_trend", true);
    try {
      c.spec.validate();
    } catch (const std::domain_error& e) {
      bad(e.what());
    }
    cfg.payload = c;
  } else if (cfg.kind == "density") {
    DensityConfig c;
    c.params = params_from_json(j);
    if (j.contains("drift")) c.drift = drift_from_json(j.at("drift"));
    c.x = field<double>(j, "x", 0.0);
    c.t = field<double>(j, "t", 1.0);
    c.sample_count = field<std::size_t>(j, "sample_count", 1000000);
    c.n_steps = field<std::size_t>(j, "n_steps", 16);
    c.grid_lo = field<double>(j, "grid_lo", -20.0);
    c.grid_hi = field<double>(j, "grid_hi", 20.0);
    c.grid_points = field<std::size_t>(j, "grid_points", 2001);
    c.bandwidth = field<double>(j, "bandwidth", 0.0);
    c.k_fraction = field<double>(j, "k_fraction", 0.01);
    c.compare_oracle = field<bool>(j, "compare_oracle", true);
    c.linf_tol = field<double>(j, "linf_tol", 0.01);
    c.mass_lo = field<double>(j, "mass_lo", 0.95);
    c.n_hat_ceiling = field<double>(j, "n_hat_ceiling", 1000.0);
    cfg.payload = c;
  } else {
    bad("unknown experiment kind '" + cfg.kind + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& file) {
  std::ifstream is(file);
  if (!is) throw ConfigError("config: cannot open file " + file);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  ordered_json j;
  j["kind"] = cfg.kind;
  j["master_seed"] = cfg.master_seed;
  if (cfg.workers > 0)
    j["workers"] = cfg.workers;
  else
    j["workers"] = "auto";
  j["output_dir"] = cfg.output_dir;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SimulateConfig>) {
          j["alpha"] = c.params.alpha;
          j["c"] = c.params.c;
          j["horizon"] = c.horizon;
          j["n_steps"] = c.n_steps;
          j["n_paths"] = c.n_paths;
        } else if constexpr (std::is_same_v<T, LatticeConfig>) {
          j["mode"] = c.mode;
          j["drift"] = drift_to_json(c.drift);
          j["drift_variant"] = drift_to_json(c.drift_variant);
          j["alpha"] = c.params.alpha;
          j["c"] = c.params.c;
          j["horizon"] = c.horizon;
          j["n_steps"] = c.n_steps;
          j["n_trials"] = c.n_trials;
          j["safety_factor"] = c.safety_factor;
          j["x0"] = c.x0;
          j["min_pass_fraction"] = c.min_pass_fraction;
          j["ode_residual_factor"] = c.ode_residual_factor;
        } else if constexpr (std::is_same_v<T, UniquenessConfig>) {
          j["drift"] = drift_to_json(c.drift);
          j["alpha"] = c.params.alpha;
          j["c"] = c.params.c;
          j["horizon"] = c.horizon;
          j["x0"] = c.x0;
          j["level_steps"] = c.level_steps;
          j["n_paths"] = c.n_paths;
          j["require_decreasing"] = c.require_decreasing;
        } else if constexpr (std::is_same_v<T, StabilityConfig>) {
          j["initial_values"] = xs_to_json(c.spec.xs);
          j["drift_sequence"] = sequence_to_json(c.spec.drifts);
          j["alpha"] = c.spec.params.alpha;
          j["c"] = c.spec.params.c;
          j["horizon"] = c.spec.horizon;
          j["epsilons"] = c.spec.epsilons;
          j["indices"] = c.spec.indices;
          j["n_paths"] = c.spec.n_paths;
          j["finest_n"] = c.spec.finest_n;
          j["mu_alpha"] = c.spec.mu.alpha;
          j["common_noise"] = c.spec.common_noise;
          j["cond1_tol"] = c.spec.cond1_tol;
          j["cond4_delta"] = c.spec.cond4_delta;
          j["cond4_truncation"] = c.spec.cond4_truncation;
          j["cond4_quad_points"] = c.spec.cond4_quad_points;
          j["require_trend"] = c.require_trend;
        } else if constexpr (std::is_same_v<T, DensityConfig>) {
          j["alpha"] = c.params.alpha;
          j["c"] = c.params.c;
          j["drift"] = drift_to_json(c.drift);
          j["x"] = c.x;
          j["t"] = c.t;
          j["sample_count"] = c.sample_count;
          j["n_steps"] = c.n_steps;
          j["grid_lo"] = c.grid_lo;
          j["grid_hi"] = c.grid_hi;
          j["grid_points"] = c.grid_points;
          j["bandwidth"] = c.bandwidth;
          j["k_fraction"] = c.k_fraction;
          j["compare_oracle"] = c.compare_oracle;
          j["linf_tol"] = c.linf_tol;
          j["mass_lo"] = c.mass_lo;
          j["n_hat_ceiling"] = c.n_hat_ceiling;
        }
      },
      cfg.payload);
  return j.dump(2) + "\n";
}

}  // namespace stolev

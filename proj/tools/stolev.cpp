#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "stolev/config.hpp"
#include "stolev/runner.hpp"
#include "stolev/stability.hpp"

namespace {

// exit-code taxonomy: 0 pass, 1 verdict failure, 2 invalid config, 3 runtime/I-O
constexpr int kExitPass = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::string workers;
  std::string out_dir;
};

void attach_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_file, "experiment config file (JSON)")
      ->required();
  sub->add_option("--seed", args.seed, "override the config's master seed");
  sub->add_option("--workers", args.workers, "worker count or 'auto'");
  sub->add_option("--out", args.out_dir, "output directory");
}

int execute(const CommonArgs& args, const std::string& expected_kind) {
  stolev::ExperimentConfig cfg;
  try {
    cfg = stolev::load_config(args.config_file);
    if (cfg.kind != expected_kind)
      throw stolev::ConfigError("config: kind '" + cfg.kind +
                                "' does not match subcommand '" + expected_kind + "'");
    if (args.seed) {
      cfg.master_seed = *args.seed;
      if (auto* s = std::get_if<stolev::StabilityConfig>(&cfg.payload))
        s->spec.master_seed = *args.seed;
    }
    if (!args.workers.empty()) {
      if (args.workers == "auto")
        cfg.workers = 0;
      else
        cfg.workers = std::stoi(args.workers);
    }
    if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
  } catch (const stolev::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: invalid arguments: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const stolev::RunOutcome outcome = stolev::run_experiment(cfg);
    std::cout << outcome.summary << "\n"
              << "outputs in " << cfg.output_dir << " (config digest "
              << outcome.manifest.config_digest << ")\n";
    if (!outcome.verdict_pass) {
      std::cout << "verdict: FAIL\n";
      return kExitVerdict;
    }
    std::cout << "verdict: pass\n";
    return kExitPass;
  } catch (const stolev::HypothesisError& e) {
    std::cerr << "verdict: FAIL (" << e.what() << ")\n";
    return kExitVerdict;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stolev: simulation and verification toolkit for SDEs with "
               "additive symmetric alpha-stable noise"};
  app.require_subcommand(1);

  const char* env_workers = std::getenv("STOLEV_WORKERS");

  struct Sub {
    const char* command;
    const char* kind;
    const char* help;
  };
  const Sub subs[] = {
      {"simulate", "simulate", "sample noise paths and dump them as CSV"},
      {"lattice-check", "lattice", "min/max closure residual checks"},
      {"uniqueness", "uniqueness", "coupled-grid self-convergence probe"},
      {"stability", "stability", "continuous-dependence Monte Carlo experiment"},
      {"density", "density", "transition-density estimate and bound fit"},
  };

  CommonArgs args[5];
  std::string selected_kind;
  for (std::size_t i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(subs[i].command, subs[i].help);
    attach_common(sub, args[i]);
    if (env_workers && args[i].workers.empty()) args[i].workers = env_workers;
    const std::string kind = subs[i].kind;
    sub->callback([&selected_kind, kind] { selected_kind = kind; });
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < 5; ++i)
    if (subs[i].kind == selected_kind) return execute(args[i], selected_kind);
  return kExitConfig;
}

// SPDX-License-Identifier: Apache-2.0
// Command-line front end: run sweeps, audit the closed form, dump configs.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rishst/scenario.hpp"
#include "rishst/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;

rishst::ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& sets) {
  if (path.empty()) {
    auto cfg = rishst::default_scenario();
    for (const auto& s : sets) rishst::apply_override(cfg, s);
    cfg.validate();
    cfg.finalize();
    return cfg;
  }
  return rishst::load_scenario_file(path, sets);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-assisted high-speed-train coverage simulator"};
  app.require_subcommand(1);

  std::string config_path, spec_path, out_dir;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  int threads = 0;
  std::int64_t slots = 20, trials = 100000;

  auto* run = app.add_subcommand("run", "Run a sweep and write <out>/<family>.csv");
  run->add_option("--config", config_path, "Scenario file (defaults when omitted)");
  run->add_option("--spec", spec_path, "Sweep spec (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  auto* run_seed = run->add_option("--seed", seed, "Overrides the spec seed");
  run->add_option("--set", sets, "key=value override, repeatable");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* validate = app.add_subcommand("validate", "Compare analytic and Monte Carlo coverage");
  validate->add_option("--config", config_path, "Scenario file (defaults when omitted)");
  validate->add_option("--slots", slots, "Number of sampled slots");
  validate->add_option("--trials", trials, "Monte Carlo trials per slot");
  auto* validate_seed = validate->add_option("--seed", seed, "Seed (defaults to the config seed)");
  validate->add_option("--set", sets, "key=value override, repeatable");
  validate->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* dump = app.add_subcommand("config", "Print the resolved configuration and its hash");
  dump->add_option("--config", config_path, "Scenario file (defaults when omitted)");
  dump->add_option("--set", sets, "key=value override, repeatable");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = load_config(config_path, sets);

    if (*run) {
      auto spec = rishst::load_sweep_spec(spec_path);
      if (run_seed->count() > 0) spec.seed = seed;
      const auto output = rishst::run_sweep(cfg, spec, threads);
      rishst::write_sweep(out_dir, spec, output);
      std::printf("wrote %zu rows to %s/%s.csv\n", output.rows.size(), out_dir.c_str(),
                  std::string(rishst::to_string(spec.family)).c_str());
      return kExitOk;
    }

    if (*validate) {
      const std::uint64_t s = validate_seed->count() > 0 ? seed : cfg.run.seed;
      const auto report = rishst::validate_run(cfg, slots, trials, s, threads);
      std::printf("%8s %12s %12s %12s %12s %12s %s\n", "slot", "analytic", "monte_carlo", "stderr",
                  "abs_delta", "bound", "status");
      for (const auto& r : report.rows) {
        std::printf("%8lld %12.6f %12.6f %12.6f %12.6f %12.6f %s\n", static_cast<long long>(r.t),
                    r.analytic, r.monte_carlo, r.std_error, r.delta, r.bound,
                    r.pass ? "pass" : "FAIL");
      }
      std::printf("max_abs_delta %.6g  %s\n", report.max_abs_delta,
                  report.all_pass ? "all slots within bound" : "validation failed");
      return report.all_pass ? kExitOk : kExitValidation;
    }

    if (*dump) {
      std::cout << rishst::serialize(cfg) << "# config_hash = " << rishst::config_hash(cfg) << '\n';
      return kExitOk;
    }
  } catch (const rishst::SpecError& e) {
    std::fprintf(stderr, "invalid sweep spec: %s\n", e.what());
    return kExitValidation;
  } catch (const rishst::ConfigError& e) {
    std::fprintf(stderr, "invalid configuration (%s): %s\n", e.key().c_str(), e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}

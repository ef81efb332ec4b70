// Command line front end: Monte Carlo sweeps over slot budgets or antenna
// counts (simulate), a one-shot capacity bound for a single trial (bound),
// and config checking (validate-config). Every config-file key has a CLI
// flag of the same name; flags override file values.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pamac/capacity.hpp"
#include "pamac/experiment.hpp"

namespace {

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "trials", "seed",      "k",           "dx",
      "dy",     "d",         "carrier_frequency", "n_eff",
      "delta_multiple", "noise_dbm", "power_dbm",  "sweep",
      "m_list", "n_list",    "n",           "m",
      "schemes", "out",      "summary_out", "threads"};
  return keys;
}

struct ConfigCli {
  std::string config_path;
  std::vector<std::string> values;
  std::vector<CLI::Option*> options;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "key = value config file");
    const auto& keys = config_keys();
    values.resize(keys.size());
    options.resize(keys.size());
    for (size_t i = 0; i < keys.size(); ++i)
      options[i] = app.add_option("--" + keys[i], values[i],
                                  "config key '" + keys[i] + "'");
  }

  pamac::ExperimentConfig resolve() const {
    pamac::ExperimentConfig cfg;
    if (!config_path.empty()) pamac::load_config_file(cfg, config_path);
    const auto& keys = config_keys();
    for (size_t i = 0; i < keys.size(); ++i)
      if (options[i]->count() > 0)
        pamac::set_config_key(cfg, keys[i], values[i]);
    return cfg;
  }
};

int require_valid(const pamac::ExperimentConfig& cfg) {
  const auto errs = pamac::config_errors(cfg);
  for (const auto& e : errs) std::fprintf(stderr, "config error: %s\n", e.c_str());
  return errs.empty() ? 0 : 2;
}

int run_simulate(const ConfigCli& cli) {
  const pamac::ExperimentConfig cfg = cli.resolve();
  if (const int rc = require_valid(cfg)) return rc;
  const auto result = pamac::run_sweep(cfg);
  std::printf("wrote %zu rows to %s\n", result.rows.size(), cfg.out.c_str());
  std::printf("wrote summary to %s\n", pamac::summary_path(cfg).c_str());
  std::printf("%-6s %-12s %-8s %-14s %s\n", "sweep", "value", "scheme",
              "mean rate", "std");
  for (const auto& row : result.summary)
    std::printf("%-6s %-12d %-8s %-14.6f %.6f\n", row.sweep.c_str(),
                row.sweep_value, row.scheme.c_str(), row.mean_rate,
                row.std_rate);
  return 0;
}

int run_bound(const ConfigCli& cli, int trial) {
  const pamac::ExperimentConfig cfg = cli.resolve();
  if (const int rc = require_valid(cfg)) return rc;
  const pamac::Scenario s = pamac::scenario_for_trial(cfg, trial, cfg.n);
  const auto res = pamac::capacity_bound(s, pamac::default_search_config(s));
  std::printf("trial %d, k=%d, n=%d\n", trial, cfg.k, cfg.n);
  std::printf("sum capacity bound: %.12g bits/s/Hz\n", res.bound);
  std::printf("%-5s %-12s %-12s %-14s %s\n", "user", "x", "y", "gain",
              "slot (duration, power)");
  for (size_t k = 0; k < res.gains.size(); ++k) {
    const auto& slot = res.schedule.slots[k];
    std::printf("%-5zu %-12.4f %-12.4f %-14.6e (%.6f, %.6e)\n", k,
                s.users[k].x, s.users[k].y, res.gains[k], slot.duration,
                slot.powers[k]);
  }
  return 0;
}

int run_validate(const ConfigCli& cli) {
  const pamac::ExperimentConfig cfg = cli.resolve();
  if (const int rc = require_valid(cfg)) return rc;
  std::printf("config ok\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pinching-antenna uplink sum-capacity simulator"};
  app.require_subcommand(1);

  ConfigCli sim_cli;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run a Monte Carlo sweep, write CSVs");
  sim_cli.attach(*simulate);

  ConfigCli bound_cli;
  int bound_trial = 0;
  CLI::App* bound =
      app.add_subcommand("bound", "capacity bound and schedule of one trial");
  bound_cli.attach(*bound);
  bound->add_option("--trial", bound_trial, "trial index (default 0)");

  ConfigCli validate_cli;
  CLI::App* validate =
      app.add_subcommand("validate-config", "check a config and exit");
  validate_cli.attach(*validate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim_cli);
    if (bound->parsed()) return run_bound(bound_cli, bound_trial);
    return run_validate(validate_cli);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}

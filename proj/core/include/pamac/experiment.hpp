// Trial generation and sweep execution: reproducible random user drops, the
// flat key=value run configuration, scheme evaluation across a sweep axis,
// and CSV emission of per-trial rows plus per-sweep-point summaries.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pamac/baselines.hpp"
#include "pamac/capacity.hpp"
#include "pamac/scenario.hpp"

namespace pamac {

/// Run configuration. Every field maps to one config-file key and one CLI
/// flag of the same name. Distances in meters, powers in dBm.
struct ExperimentConfig {
  int trials = 100;
  std::uint64_t seed = 1;
  int k = 10;                      // users per trial
  double dx = 100.0;               // region extent along the waveguide
  double dy = 40.0;                // region extent across it
  double d = 3.0;                  // waveguide height
  double carrier_frequency = 28e9; // Hz
  double n_eff = 1.4;              // effective refractive index
  double delta_multiple = 0.5;     // min spacing as a wavelength multiple
  double noise_dbm = -80.0;
  double power_dbm = 10.0;
  std::string sweep = "m";         // sweep axis: "m" or "n"
  std::vector<int> m_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<int> n_list = {1, 2, 3, 4};
  int n = 1;                       // antennas when sweeping m
  int m = 4;                       // slot budget when sweeping n
  std::vector<std::string> schemes = {"cas", "static", "dyn", "bound"};
  std::string out = "results.csv";
  std::string summary_out;         // empty: derived from `out`
  int threads = 0;                 // worker threads, 0 = hardware default
};

/// Applies one key=value assignment. Throws std::invalid_argument on an
/// unknown key or an unparsable value.
void set_config_key(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

/// Reads a flat key=value file ('#' starts a comment) into cfg. Throws
/// std::runtime_error on I/O failure, std::invalid_argument on bad content.
void load_config_file(ExperimentConfig& cfg, const std::string& path);

/// All validation failures, empty when the config is runnable.
std::vector<std::string> config_errors(const ExperimentConfig& cfg);

std::string summary_path(const ExperimentConfig& cfg);

/// Stateless trial user drop: position j of trial t depends only on
/// (seed, t, j), uniform over the centered dx-by-dy ground rectangle.
std::vector<Vec3> generate_users(const ExperimentConfig& cfg, int trial);

/// Scenario for one trial at a given antenna count. Span = [-dx/2, dx/2],
/// feed at the low end, spacing delta_multiple * lambda, period 1.
Scenario scenario_for_trial(const ExperimentConfig& cfg, int trial,
                            int antenna_count);

struct ResultRow {
  std::uint64_t seed = 0;
  int trial = 0;
  int k = 0;
  int n = 0;
  int m = 0;
  std::string scheme;
  double sum_rate = 0.0;     // bits/s/Hz
  double wallclock_ms = 0.0; // compute time of this scheme result
  RateReport report;         // full diagnostics, not serialized to CSV
};

struct SummaryRow {
  std::string sweep;  // "m" or "n"
  int sweep_value = 0;
  std::string scheme;
  int trials = 0;
  double mean_rate = 0.0;
  double std_rate = 0.0;  // sample standard deviation
};

struct SweepResult {
  std::vector<ResultRow> rows;        // (trial, sweep value, scheme) order
  std::vector<SummaryRow> summary;
};

/// Runs all trials across the sweep axis on a small worker pool and writes
/// both CSV files. Row order and all numeric content are deterministic for a
/// given config; wallclock_ms is the only rerun-dependent column. Throws on
/// invalid configs and unwritable output paths.
SweepResult run_sweep(const ExperimentConfig& cfg);

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path);
void write_summary_csv(const std::vector<SummaryRow>& summary,
                       const std::string& path);

}  // namespace pamac

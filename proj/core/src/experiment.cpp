#include "pamac/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pamac/units.hpp"

namespace pamac {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Counter-based uniform in [0, 1): no generator state, so any (trial, draw)
// can be reproduced in isolation and in any order.
double uniform01(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw) {
  std::uint64_t z = mix64(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
  z = mix64(z ^ (0xd1b54a32d192ed03ULL * (draw + 1)));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::invalid_argument("value for '" + key + "' is not a number: " +
                                value);
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::invalid_argument("value for '" + key +
                                "' is not an integer: " + value);
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::invalid_argument("value for '" + key +
                                "' is not an unsigned integer: " + value);
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  for (const std::string& item : split_list(value))
    out.push_back(static_cast<int>(parse_int(key, item)));
  return out;
}

std::string format_rate(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

void set_config_key(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "trials")
    cfg.trials = static_cast<int>(parse_int(key, value));
  else if (key == "seed")
    cfg.seed = parse_u64(key, value);
  else if (key == "k")
    cfg.k = static_cast<int>(parse_int(key, value));
  else if (key == "dx")
    cfg.dx = parse_double(key, value);
  else if (key == "dy")
    cfg.dy = parse_double(key, value);
  else if (key == "d")
    cfg.d = parse_double(key, value);
  else if (key == "carrier_frequency")
    cfg.carrier_frequency = parse_double(key, value);
  else if (key == "n_eff")
    cfg.n_eff = parse_double(key, value);
  else if (key == "delta_multiple")
    cfg.delta_multiple = parse_double(key, value);
  else if (key == "noise_dbm")
    cfg.noise_dbm = parse_double(key, value);
  else if (key == "power_dbm")
    cfg.power_dbm = parse_double(key, value);
  else if (key == "sweep")
    cfg.sweep = trim(value);
  else if (key == "m_list")
    cfg.m_list = parse_int_list(key, value);
  else if (key == "n_list")
    cfg.n_list = parse_int_list(key, value);
  else if (key == "n")
    cfg.n = static_cast<int>(parse_int(key, value));
  else if (key == "m")
    cfg.m = static_cast<int>(parse_int(key, value));
  else if (key == "schemes")
    cfg.schemes = split_list(value);
  else if (key == "out")
    cfg.out = trim(value);
  else if (key == "summary_out")
    cfg.summary_out = trim(value);
  else if (key == "threads")
    cfg.threads = static_cast<int>(parse_int(key, value));
  else
    throw std::invalid_argument("unknown config key '" + key + "'");
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected 'key = value'";
      throw std::invalid_argument(msg.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      set_config_key(cfg, key, value);
    } catch (const std::invalid_argument& err) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": " << err.what();
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<std::string> config_errors(const ExperimentConfig& cfg) {
  std::vector<std::string> errs;
  if (cfg.trials < 1) errs.push_back("trials must be at least 1");
  if (cfg.k < 1) errs.push_back("k must be at least 1");
  if (!(cfg.dx > 0.0)) errs.push_back("dx must be positive");
  if (!(cfg.dy >= 0.0)) errs.push_back("dy must be nonnegative");
  if (!(cfg.d > 0.0)) errs.push_back("d must be positive");
  if (!(cfg.carrier_frequency > 0.0))
    errs.push_back("carrier_frequency must be positive");
  if (!(cfg.n_eff > 0.0)) errs.push_back("n_eff must be positive");
  if (!(cfg.delta_multiple > 0.0))
    errs.push_back("delta_multiple must be positive");
  if (cfg.sweep != "m" && cfg.sweep != "n")
    errs.push_back("sweep must be 'm' or 'n'");
  if (cfg.m_list.empty()) errs.push_back("m_list must not be empty");
  for (int m : cfg.m_list)
    if (m < 1) {
      errs.push_back("m_list entries must be at least 1");
      break;
    }
  if (cfg.n_list.empty()) errs.push_back("n_list must not be empty");
  for (int n : cfg.n_list)
    if (n < 1) {
      errs.push_back("n_list entries must be at least 1");
      break;
    }
  if (cfg.n < 1) errs.push_back("n must be at least 1");
  if (cfg.m < 1) errs.push_back("m must be at least 1");
  if (cfg.schemes.empty()) errs.push_back("schemes must not be empty");
  for (const std::string& scheme : cfg.schemes)
    if (scheme != "cas" && scheme != "static" && scheme != "dyn" &&
        scheme != "bound")
      errs.push_back("unknown scheme '" + scheme + "'");
  if (cfg.threads < 0) errs.push_back("threads must be nonnegative");
  if (cfg.out.empty()) errs.push_back("out must not be empty");

  // every antenna count in play must fit the span at min spacing
  const double lambda = kSpeedOfLight / cfg.carrier_frequency;
  const double spacing = cfg.delta_multiple * lambda;
  int max_n = cfg.n;
  if (cfg.sweep == "n")
    for (int n : cfg.n_list) max_n = std::max(max_n, n);
  if (cfg.carrier_frequency > 0.0 && cfg.dx > 0.0 &&
      static_cast<double>(max_n - 1) * spacing > cfg.dx)
    errs.push_back("span too short for the largest antenna count");
  return errs;
}

std::string summary_path(const ExperimentConfig& cfg) {
  if (!cfg.summary_out.empty()) return cfg.summary_out;
  const std::string& out = cfg.out;
  if (out.size() >= 4 && out.substr(out.size() - 4) == ".csv")
    return out.substr(0, out.size() - 4) + "_summary.csv";
  return out + "_summary.csv";
}

std::vector<Vec3> generate_users(const ExperimentConfig& cfg, int trial) {
  std::vector<Vec3> users(cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    const auto t = static_cast<std::uint64_t>(trial);
    const auto j = static_cast<std::uint64_t>(2 * i);
    users[i].x = (uniform01(cfg.seed, t, j) - 0.5) * cfg.dx;
    users[i].y = (uniform01(cfg.seed, t, j + 1) - 0.5) * cfg.dy;
    users[i].z = 0.0;
  }
  return users;
}

Scenario scenario_for_trial(const ExperimentConfig& cfg, int trial,
                            int antenna_count) {
  const double lambda = kSpeedOfLight / cfg.carrier_frequency;
  return make_scenario(cfg.carrier_frequency, cfg.n_eff, cfg.d,
                       cfg.delta_multiple * lambda, -cfg.dx / 2.0,
                       cfg.dx / 2.0, generate_users(cfg, trial),
                       dbm_to_watts(cfg.noise_dbm),
                       dbm_to_watts(cfg.power_dbm), 1.0, antenna_count);
}

namespace {

struct SweepPoint {
  int n = 0;
  int m = 0;
};

RateReport run_scheme(const Scenario& s, const SearchConfig& search,
                      const std::string& scheme, int m) {
  if (scheme == "cas") return cas_rate(s);
  if (scheme == "static") return static_pass_rate(s, search);
  if (scheme == "dyn") return finite_m_rate(s, m, search);
  return capacity_bound_report(s, search);
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  {
    const auto errs = config_errors(cfg);
    if (!errs.empty()) {
      std::string all = "invalid config:";
      for (const auto& e : errs) all += " " + e + ";";
      throw std::invalid_argument(all);
    }
  }

  std::vector<SweepPoint> points;
  if (cfg.sweep == "m")
    for (int m : cfg.m_list) points.push_back({cfg.n, m});
  else
    for (int n : cfg.n_list) points.push_back({n, cfg.m});

  const size_t per_trial = points.size() * cfg.schemes.size();
  SweepResult result;
  result.rows.resize(static_cast<size_t>(cfg.trials) * per_trial);

  using clock = std::chrono::steady_clock;
  const auto run_trial = [&](int trial) {
    // Along an m sweep the scenario is fixed, so schemes that do not depend
    // on the slot budget are computed once and replayed at every point.
    const bool m_sweep = (cfg.sweep == "m");
    Scenario scenario;
    int scenario_n = -1;
    std::vector<ResultRow> cached(cfg.schemes.size());
    std::vector<bool> have(cfg.schemes.size(), false);

    for (size_t p = 0; p < points.size(); ++p) {
      if (points[p].n != scenario_n) {
        scenario = scenario_for_trial(cfg, trial, points[p].n);
        scenario_n = points[p].n;
      }
      const SearchConfig search = default_search_config(scenario);
      for (size_t si = 0; si < cfg.schemes.size(); ++si) {
        const std::string& scheme = cfg.schemes[si];
        ResultRow row;
        const bool reusable = m_sweep && scheme != "dyn";
        if (reusable && have[si]) {
          row = cached[si];
        } else {
          const auto start = clock::now();
          row.report = run_scheme(scenario, search, scheme, points[p].m);
          row.wallclock_ms =
              std::chrono::duration<double, std::milli>(clock::now() - start)
                  .count();
          row.seed = cfg.seed;
          row.trial = trial;
          row.k = cfg.k;
          row.scheme = scheme;
          row.sum_rate = row.report.average_sum_rate;
          if (reusable) {
            cached[si] = row;
            have[si] = true;
          }
        }
        row.n = points[p].n;
        row.m = points[p].m;
        result.rows[(static_cast<size_t>(trial) * points.size() + p) *
                        cfg.schemes.size() +
                    si] = std::move(row);
      }
    }
  };

  unsigned pool = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                  : std::thread::hardware_concurrency();
  if (pool == 0) pool = 1;
  pool = std::min<unsigned>(pool, static_cast<unsigned>(cfg.trials));

  if (pool <= 1) {
    for (int trial = 0; trial < cfg.trials; ++trial) run_trial(trial);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (int trial = next.fetch_add(1); trial < cfg.trials;
           trial = next.fetch_add(1)) {
        try {
          run_trial(trial);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // per-(sweep point, scheme) mean and sample standard deviation
  for (size_t p = 0; p < points.size(); ++p) {
    for (size_t si = 0; si < cfg.schemes.size(); ++si) {
      double sum = 0.0, sumsq = 0.0;
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const double r =
            result
                .rows[(static_cast<size_t>(trial) * points.size() + p) *
                          cfg.schemes.size() +
                      si]
                .sum_rate;
        sum += r;
        sumsq += r * r;
      }
      const double n_trials = static_cast<double>(cfg.trials);
      SummaryRow srow;
      srow.sweep = cfg.sweep;
      srow.sweep_value = cfg.sweep == "m" ? points[p].m : points[p].n;
      srow.scheme = cfg.schemes[si];
      srow.trials = cfg.trials;
      srow.mean_rate = sum / n_trials;
      srow.std_rate =
          cfg.trials > 1
              ? std::sqrt(std::max(0.0, (sumsq - sum * sum / n_trials) /
                                            (n_trials - 1.0)))
              : 0.0;
      result.summary.push_back(srow);
    }
  }

  write_results_csv(result.rows, cfg.out);
  write_summary_csv(result.summary, summary_path(cfg));
  return result;
}

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write results CSV: " + path);
  out << "seed,trial,k,n,m,scheme,sum_rate_bps_hz,wallclock_ms\n";
  char wall[32];
  for (const ResultRow& row : rows) {
    std::snprintf(wall, sizeof wall, "%.3f", row.wallclock_ms);
    out << row.seed << ',' << row.trial << ',' << row.k << ',' << row.n << ','
        << row.m << ',' << row.scheme << ',' << format_rate(row.sum_rate)
        << ',' << wall << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing results CSV: " + path);
}

void write_summary_csv(const std::vector<SummaryRow>& summary,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary CSV: " + path);
  out << "sweep,sweep_value,scheme,trials,mean_rate_bps_hz,std_rate_bps_hz\n";
  for (const SummaryRow& row : summary) {
    out << row.sweep << ',' << row.sweep_value << ',' << row.scheme << ','
        << row.trials << ',' << format_rate(row.mean_rate) << ','
        << format_rate(row.std_rate) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing summary CSV: " + path);
}

}  // namespace pamac

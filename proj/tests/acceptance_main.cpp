// Acceptance gate: every release-blocking behavior of the library checked
// end to end at the default desk scale, one PASS/FAIL line per criterion.
// Run with no arguments for the full gate or with criterion numbers (e.g.
// "3 6 10") to run a subset while iterating.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pamac/baselines.hpp"
#include "pamac/capacity.hpp"
#include "pamac/experiment.hpp"

using namespace pamac;

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared 100-trial desk matrix at N = 1 (default geometry, seed 1): the
// capacity bound with its schedule plus every comparison scheme. Built
// lazily so a filtered run only pays for what it checks.
struct DeskMatrix {
  static constexpr int kTrials = 100;
  static constexpr int kUsers = 10;
  static constexpr int kBudgetMax = 10;

  ExperimentConfig cfg;
  std::vector<Scenario> scenarios;
  std::vector<CapacityResult> bounds;
  std::vector<double> closed_forms;
  double bound_seconds = 0.0;  // capacity_bound + closed form only

  std::vector<double> cas_rates;
  std::vector<double> static_rates;
  std::vector<std::array<double, kBudgetMax>> dyn_rates;

  bool have_bounds = false;
  bool have_schemes = false;

  DeskMatrix() {
    cfg.trials = kTrials;
    cfg.k = kUsers;
    cfg.seed = 1;
  }

  void ensure_bounds() {
    if (have_bounds) return;
    scenarios.reserve(kTrials);
    bounds.reserve(kTrials);
    closed_forms.reserve(kTrials);
    for (int t = 0; t < kTrials; ++t)
      scenarios.push_back(scenario_for_trial(cfg, t, 1));
    const Stopwatch sw;
    for (int t = 0; t < kTrials; ++t) {
      bounds.push_back(capacity_bound(scenarios[t], default_search_config(scenarios[t])));
      closed_forms.push_back(single_antenna_closed_form(scenarios[t]));
    }
    bound_seconds = sw.seconds();
    have_bounds = true;
  }

  void ensure_schemes() {
    if (have_schemes) return;
    ensure_bounds();
    cas_rates.resize(kTrials);
    static_rates.resize(kTrials);
    dyn_rates.resize(kTrials);
    for (int t = 0; t < kTrials; ++t) {
      const Scenario& s = scenarios[t];
      const SearchConfig search = default_search_config(s);
      cas_rates[t] = cas_rate(s).average_sum_rate;
      static_rates[t] = static_pass_rate(s, search).average_sum_rate;
      for (int m = 1; m <= kBudgetMax; ++m)
        dyn_rates[t][m - 1] = finite_m_rate(s, m, search).average_sum_rate;
      if ((t + 1) % 25 == 0)
        std::fprintf(stderr, "  desk matrix: %d/%d trials\n", t + 1, kTrials);
    }
    have_schemes = true;
  }

  double mean_dyn(int budget) const {
    double sum = 0.0;
    for (const auto& row : dyn_rates) sum += row[budget - 1];
    return sum / kTrials;
  }
};

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------

Outcome criterion_closed_form(DeskMatrix& desk) {
  desk.ensure_bounds();
  double worst = 0.0;
  for (int t = 0; t < DeskMatrix::kTrials; ++t)
    worst = std::max(worst, rel_diff(desk.bounds[t].bound, desk.closed_forms[t]));
  const bool pass = worst < 1e-9 && desk.bound_seconds < 1.0;
  return {pass, fmt("max rel %.2e, %.3f s", worst, desk.bound_seconds)};
}

Outcome criterion_stationarity(DeskMatrix& desk) {
  desk.ensure_bounds();
  double worst_active = 0.0;
  double worst_inactive = -1e300;
  for (int t = 0; t < DeskMatrix::kTrials; ++t) {
    const auto kkt = kkt_stationarity_residual(desk.scenarios[t],
                                               desk.bounds[t].gains,
                                               desk.bounds[t].patterns);
    for (const auto& r : kkt) {
      worst_active = std::max(worst_active, std::abs(r.active));
      worst_inactive = std::max(worst_inactive, r.worst_inactive);
    }
  }
  const bool pass = worst_active < 1e-9 && worst_inactive <= 1e-9;
  return {pass, fmt("max |active| %.2e, max inactive %.2e", worst_active,
                    worst_inactive)};
}

Outcome criterion_schedule(DeskMatrix& desk) {
  desk.ensure_bounds();
  double worst_duration = 0.0;
  double worst_power = 0.0;
  for (int t = 0; t < DeskMatrix::kTrials; ++t) {
    const Scenario& s = desk.scenarios[t];
    const Schedule& sched = desk.bounds[t].schedule;
    double duration_sum = 0.0;
    std::vector<double> energy(s.users.size(), 0.0);
    for (const Slot& slot : sched.slots) {
      duration_sum += slot.duration;
      for (size_t k = 0; k < energy.size(); ++k)
        energy[k] += slot.powers[k] * slot.duration;
    }
    worst_duration =
        std::max(worst_duration, rel_diff(duration_sum, s.period));
    for (double e : energy)
      worst_power = std::max(
          worst_power, rel_diff(e / s.period, s.power_budget));
  }
  const bool pass = worst_duration < 1e-10 && worst_power < 1e-10;
  return {pass, fmt("max duration rel %.2e, max power rel %.2e",
                    worst_duration, worst_power)};
}

Outcome criterion_duration_oracle() {
  oracles::TestRng rng(401);
  const Stopwatch sw;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m_count = rng.uniform_int(1, 5);
    std::vector<double> c(m_count, 0.0);
    bool any = false;
    for (double& v : c) {
      if (rng.unit() < 0.15 && m_count > 1) continue;  // keep some zeros
      v = rng.uniform(0.01, 20.0);
      any = true;
    }
    if (!any) c[0] = rng.uniform(0.01, 20.0);
    const auto t = time_allocation_solve(c, 1.0);
    const auto ref = oracles::duration_grid_reference(c, 1.0, 1e-5);
    worst = std::max(worst, rel_diff(oracles::duration_objective(c, t),
                                     oracles::duration_objective(c, ref)));
  }
  const double elapsed = sw.seconds();
  const bool pass = worst < 1e-6 && elapsed < 10.0;
  return {pass, fmt("max obj rel %.2e, %.2f s", worst, elapsed)};
}

Outcome criterion_scheme_ordering(DeskMatrix& desk) {
  desk.ensure_schemes();
  const double mean_cas = mean(desk.cas_rates);
  const double mean_static = mean(desk.static_rates);
  const double mean_dyn4 = desk.mean_dyn(4);
  double mean_bound = 0.0;
  for (const auto& b : desk.bounds) mean_bound += b.bound;
  mean_bound /= DeskMatrix::kTrials;

  const bool means_ok = mean_cas < mean_static && mean_static < mean_dyn4 &&
                        mean_dyn4 < mean_bound;
  int violations = 0;
  for (int t = 0; t < DeskMatrix::kTrials; ++t) {
    if (!(desk.cas_rates[t] <= desk.static_rates[t] + 1e-9)) ++violations;
    for (int m = 1; m <= DeskMatrix::kBudgetMax; ++m) {
      const double dyn = desk.dyn_rates[t][m - 1];
      if (!(desk.static_rates[t] <= dyn + 1e-9)) ++violations;
      if (!(dyn <= desk.bounds[t].bound + 1e-9)) ++violations;
    }
  }
  const bool pass = means_ok && violations == 0;
  return {pass,
          fmt("means %.3f < %.3f < %.3f < %.3f, pointwise violations %d",
              mean_cas, mean_static, mean_dyn4, mean_bound, violations)};
}

Outcome criterion_full_budget(DeskMatrix& desk) {
  desk.ensure_schemes();
  double worst_gap = 0.0;
  double worst_drop = 0.0;  // largest decrease along the budget axis
  for (int t = 0; t < DeskMatrix::kTrials; ++t) {
    worst_gap = std::max(
        worst_gap, rel_diff(desk.dyn_rates[t][DeskMatrix::kUsers - 1],
                            desk.bounds[t].bound));
    for (int m = 1; m < DeskMatrix::kBudgetMax; ++m)
      worst_drop =
          std::max(worst_drop,
                   desk.dyn_rates[t][m - 1] - desk.dyn_rates[t][m]);
  }
  const bool pass = worst_gap < 1e-6 && worst_drop <= 1e-9;
  return {pass,
          fmt("max gap rel %.2e, worst budget-step drop %.2e", worst_gap,
              worst_drop)};
}

Outcome criterion_saturation(DeskMatrix& desk) {
  desk.ensure_schemes();
  double mean_bound = 0.0;
  for (const auto& b : desk.bounds) mean_bound += b.bound;
  mean_bound /= DeskMatrix::kTrials;
  const double mean_dyn7 = desk.mean_dyn(7);
  const double ratio = mean_dyn7 / mean_bound;
  return {ratio >= 0.98, fmt("mean dyn(7)/bound = %.4f", ratio)};
}

Outcome criterion_antenna_trend() {
  ExperimentConfig cfg;
  cfg.trials = 200;
  cfg.k = 10;
  cfg.seed = 1;
  const std::array<int, 4> antenna_counts{1, 2, 3, 4};
  const int kSchemes = 4;  // cas, static, dyn(4), bound
  std::array<std::array<double, 4>, kSchemes> sums{};

  const Stopwatch sw;
  for (int t = 0; t < cfg.trials; ++t) {
    for (size_t ni = 0; ni < antenna_counts.size(); ++ni) {
      const Scenario s = scenario_for_trial(cfg, t, antenna_counts[ni]);
      const SearchConfig search = default_search_config(s);
      sums[0][ni] += cas_rate(s).average_sum_rate;
      sums[1][ni] += static_pass_rate(s, search).average_sum_rate;
      sums[2][ni] += finite_m_rate(s, 4, search).average_sum_rate;
      sums[3][ni] += capacity_bound(s, search).bound;
    }
    if ((t + 1) % 20 == 0)
      std::fprintf(stderr, "  antenna trend: %d/%d trials, %.0f s\n", t + 1,
                   cfg.trials, sw.seconds());
  }

  const char* names[kSchemes] = {"cas", "static", "dyn", "bound"};
  double worst_drop = -1e300;
  std::ostringstream detail;
  bool pass = true;
  for (int si = 0; si < kSchemes; ++si) {
    for (size_t ni = 0; ni + 1 < antenna_counts.size(); ++ni) {
      const double drop =
          sums[si][ni] / cfg.trials - sums[si][ni + 1] / cfg.trials;
      worst_drop = std::max(worst_drop, drop);
      if (drop > 1e-3) pass = false;
    }
    detail << names[si] << " " << fmt("%.3f", sums[si][3] / cfg.trials)
           << (si + 1 < kSchemes ? ", " : "");
  }
  return {pass, fmt("worst mean drop %.2e; means at N=4: %s", worst_drop,
                    detail.str().c_str())};
}

Outcome criterion_concavity() {
  oracles::TestRng rng(901);
  double worst = -1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const auto users = oracles::random_users(rng, 10, 100, 40);
    const double pa = rng.uniform(1e-4, 1.0);
    const double pb = rng.uniform(1e-4, 1.0);
    const auto bound_at = [&](double power) {
      const Scenario s = oracles::test_scenario(users, 1, 100.0, power);
      return capacity_bound(s, default_search_config(s)).bound;
    };
    const double gap =
        0.5 * (bound_at(pa) + bound_at(pb)) - bound_at(0.5 * (pa + pb));
    worst = std::max(worst, gap);  // positive gap breaks concavity
  }
  return {worst <= 1e-9, fmt("worst chord excess %.2e", worst)};
}

Outcome criterion_channel_oracle() {
  oracles::TestRng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int users = rng.uniform_int(1, 10);
    const int antennas = rng.uniform_int(1, 8);
    const Scenario s =
        oracles::test_scenario(oracles::random_users(rng, users, 100, 40),
                               antennas);
    PinchingPattern p;
    for (int n = 0; n < antennas; ++n)
      p.positions.push_back(rng.uniform(s.span_lo, s.span_hi));
    std::sort(p.positions.begin(), p.positions.end());
    const int k = rng.uniform_int(0, users - 1);
    const auto got = effective_channel(s, p, k);
    const auto want = oracles::gamma_terms(s, p.positions, k);
    worst = std::max(worst, rel_diff(got.value.real(), want[0]));
    worst = std::max(worst, rel_diff(got.value.imag(), want[1]));
    worst = std::max(
        worst, rel_diff(got.gain, want[0] * want[0] + want[1] * want[1]));
  }
  return {worst < 1e-12, fmt("max rel %.2e over 1000 inputs", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  DeskMatrix desk;
  struct Criterion {
    int id;
    const char* what;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "bound matches the single-antenna closed form",
       [&] { return criterion_closed_form(desk); }},
      {2, "bound passes stationarity diagnostics",
       [&] { return criterion_stationarity(desk); }},
      {3, "bound schedules are tight and on budget",
       [&] { return criterion_schedule(desk); }},
      {4, "duration solver matches the exhaustive grid",
       [] { return criterion_duration_oracle(); }},
      {5, "scheme ordering cas < static < dyn(4) < bound",
       [&] { return criterion_scheme_ordering(desk); }},
      {6, "full slot budget attains the bound, rate monotone in budget",
       [&] { return criterion_full_budget(desk); }},
      {7, "seven slots reach 98% of the bound",
       [&] { return criterion_saturation(desk); }},
      {8, "mean rates nondecreasing in the antenna count",
       [] { return criterion_antenna_trend(); }},
      {9, "bound is midpoint-concave in the power budget",
       [] { return criterion_concavity(); }},
      {10, "effective channel matches the term-by-term oracle",
       [] { return criterion_channel_oracle(); }},
  };

  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    ++ran;
    const Stopwatch sw;
    const Outcome out = c.run();
    if (!out.pass) ++failures;
    std::printf("[%s] C%d %s (%s; %.1f s)\n", out.pass ? "PASS" : "FAIL",
                c.id, c.what, out.detail.c_str(), sw.seconds());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}

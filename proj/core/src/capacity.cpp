#include "pamac/capacity.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pamac {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;  // 1 / ln 2

void check_slot_shape(const Scenario& s, const Slot& slot) {
  if (static_cast<int>(slot.powers.size()) != s.user_count())
    throw std::invalid_argument("slot powers must cover every user");
  if (slot.pattern.size() != s.antenna_count)
    throw std::invalid_argument("slot pattern size must match antenna count");
  for (double p : slot.powers)
    if (!(p >= 0.0)) throw std::invalid_argument("slot powers must be >= 0");
  if (!(slot.duration >= 0.0))
    throw std::invalid_argument("slot duration must be >= 0");
}

}  // namespace

double noma_slot_rate(const Scenario& s, const Slot& slot) {
  check_slot_shape(s, slot);
  const auto gains = channel_gains(s, slot.pattern);
  double received = 0.0;
  for (int k = 0; k < s.user_count(); ++k)
    received += slot.powers[k] * gains[k];
  const double noise = static_cast<double>(s.antenna_count) * s.noise_power;
  return std::log2(1.0 + received / noise);
}

double average_rate(const Scenario& s, const Schedule& sched) {
  double acc = 0.0;
  for (const Slot& slot : sched.slots)
    acc += slot.duration * noma_slot_rate(s, slot);
  return acc / sched.period;
}

std::optional<std::string> schedule_error(const Scenario& s,
                                          const Schedule& sched) {
  if (!(sched.period > 0.0)) return "schedule period must be positive";
  double duration_sum = 0.0;
  std::vector<double> energy(s.users.size(), 0.0);
  for (size_t m = 0; m < sched.slots.size(); ++m) {
    const Slot& slot = sched.slots[m];
    if (static_cast<int>(slot.powers.size()) != s.user_count())
      return "slot " + std::to_string(m) + " powers do not cover every user";
    if (slot.pattern.size() != s.antenna_count)
      return "slot " + std::to_string(m) + " pattern size mismatch";
    if (!(slot.duration >= 0.0))
      return "slot " + std::to_string(m) + " has negative duration";
    const PatternCheck check = validate_pattern(s, slot.pattern);
    if (!check.ok)
      return "slot " + std::to_string(m) + " pattern invalid: " + check.detail;
    duration_sum += slot.duration;
    for (int k = 0; k < s.user_count(); ++k) {
      if (!(slot.powers[k] >= 0.0))
        return "slot " + std::to_string(m) + " has negative power";
      energy[k] += slot.powers[k] * slot.duration;
    }
  }
  if (std::abs(duration_sum - sched.period) > 1e-10 * sched.period)
    return "slot durations sum to " + std::to_string(duration_sum) +
           ", expected the period";
  for (int k = 0; k < s.user_count(); ++k) {
    if (energy[k] > s.power_budget * sched.period * (1.0 + 1e-10)) {
      std::ostringstream msg;
      msg << "user " << k << " average power exceeds the budget";
      return msg.str();
    }
  }
  return std::nullopt;
}

CapacityResult capacity_bound(const Scenario& s, const SearchConfig& cfg) {
  const int K = s.user_count();
  CapacityResult res;
  res.gains.resize(K);
  res.patterns.reserve(K);
  for (int k = 0; k < K; ++k) {
    PinchingPattern pat = refine_single_user_pattern(
        s, initial_single_user_pattern(s, k), k, cfg);
    res.gains[k] = effective_channel(s, pat, k).gain;
    if (!(res.gains[k] > 0.0))
      throw std::runtime_error("degenerate zero gain in bound pipeline");
    res.patterns.push_back(std::move(pat));
  }
  const double gain_sum =
      std::accumulate(res.gains.begin(), res.gains.end(), 0.0);
  const double noise = static_cast<double>(s.antenna_count) * s.noise_power;
  res.bound = std::log2(1.0 + s.power_budget * gain_sum / noise);

  // One slot per user. Durations proportional to the gain make every slot's
  // rate equal to the bound; inverse-gain powers keep each user's average at
  // exactly the budget.
  res.schedule.period = s.period;
  res.schedule.slots.resize(K);
  for (int k = 0; k < K; ++k) {
    Slot& slot = res.schedule.slots[k];
    slot.pattern = res.patterns[k];
    slot.duration = s.period * res.gains[k] / gain_sum;
    slot.powers.assign(K, 0.0);
    slot.powers[k] = s.power_budget * gain_sum / res.gains[k];
  }
  return res;
}

RateReport capacity_bound_report(const Scenario& s, const SearchConfig& cfg) {
  CapacityResult res = capacity_bound(s, cfg);
  RateReport report;
  report.scheme = "bound";
  report.average_sum_rate = res.bound;
  report.schedule = std::move(res.schedule);
  report.user_gains = std::move(res.gains);
  return report;
}

double single_antenna_closed_form(const Scenario& s) {
  if (s.antenna_count != 1)
    throw std::invalid_argument(
        "closed form only valid for a single antenna");
  double inv_dist_sq = 0.0;
  for (const Vec3& u : s.users) {
    inv_dist_sq +=
        1.0 / (u.y * u.y + s.waveguide_height * s.waveguide_height);
  }
  return std::log2(1.0 + s.path_constant * s.power_budget / s.noise_power *
                             inv_dist_sq);
}

std::vector<KktResidual> kkt_stationarity_residual(
    const Scenario& s, const std::vector<double>& gains,
    const std::vector<PinchingPattern>& patterns) {
  const int K = s.user_count();
  if (static_cast<int>(gains.size()) != K ||
      static_cast<int>(patterns.size()) != K)
    throw std::invalid_argument("need one gain and one pattern per user");
  for (double g : gains)
    if (!(g > 0.0)) throw std::invalid_argument("gains must be positive");

  const double gain_sum = std::accumulate(gains.begin(), gains.end(), 0.0);
  const double noise = static_cast<double>(s.antenna_count) * s.noise_power;
  const double dual_denom = noise + s.power_budget * gain_sum;

  std::vector<KktResidual> out(K);
  for (int k = 0; k < K; ++k) {
    const auto cross = channel_gains(s, patterns[k]);
    const double power_k = s.power_budget * gain_sum / gains[k];
    const double slot_denom = noise + power_k * cross[k];
    KktResidual r;
    r.active = cross[k] / slot_denom - gains[k] / dual_denom;
    r.worst_inactive = 0.0;
    bool any = false;
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      const double resid = cross[i] / slot_denom - gains[i] / dual_denom;
      if (!any || resid > r.worst_inactive) r.worst_inactive = resid;
      any = true;
    }
    out[k] = r;
  }
  return out;
}

std::vector<double> time_allocation_solve(const std::vector<double>& coeffs,
                                          double period) {
  if (!(period > 0.0))
    throw std::invalid_argument("period must be positive");
  if (coeffs.empty()) throw std::invalid_argument("no slot coefficients");
  for (double c : coeffs)
    if (!(c >= 0.0) || !std::isfinite(c))
      throw std::invalid_argument("slot coefficients must be finite and >= 0");

  std::vector<int> active;
  for (size_t m = 0; m < coeffs.size(); ++m)
    if (coeffs[m] > 0.0) active.push_back(static_cast<int>(m));
  if (active.empty())
    throw std::invalid_argument("all slot coefficients are zero");

  std::vector<double> t(coeffs.size(), 0.0);
  if (active.size() == 1) {
    t[active[0]] = period;
    return t;
  }

  // d/dt of t*log2(1 + c/t); strictly decreasing from +inf to 0.
  const auto slope = [](double c, double tt) {
    const double x = c / tt;
    return (std::log1p(x) - x / (1.0 + x)) * kInvLn2;
  };
  const double t_tol = 1e-14 * period;
  const auto duration_at = [&](double c, double mu) {
    double hi = period;
    for (int i = 0; i < 200 && slope(c, hi) > mu; ++i) hi *= 2.0;
    double lo = 0.0;  // slope(c, 0+) = +inf
    while (hi - lo > t_tol) {
      const double mid = 0.5 * (lo + hi);
      if (slope(c, mid) > mu)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  double mu_lo = std::numeric_limits<double>::infinity();
  double mu_hi = 0.0;
  const double even_share = period / static_cast<double>(active.size());
  for (int m : active) {
    mu_lo = std::min(mu_lo, slope(coeffs[m], period));
    mu_hi = std::max(mu_hi, slope(coeffs[m], even_share));
  }

  const double sum_tol = 1e-12 * period;
  std::vector<double> best(coeffs.size(), 0.0);
  double best_resid = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double mu = 0.5 * (mu_lo + mu_hi);
    double sum = 0.0;
    for (int m : active) {
      t[m] = duration_at(coeffs[m], mu);
      sum += t[m];
    }
    const double resid = sum - period;
    if (std::abs(resid) < best_resid) {
      best_resid = std::abs(resid);
      best = t;
    }
    if (best_resid <= sum_tol) break;
    if (resid > 0.0)
      mu_lo = mu;
    else
      mu_hi = mu;
  }

  double sum = std::accumulate(best.begin(), best.end(), 0.0);
  const double scale = period / sum;
  for (double& v : best) v *= scale;
  return best;
}

RateReport finite_m_rate(const Scenario& s, int slot_budget,
                         const SearchConfig& cfg) {
  if (slot_budget < 1)
    throw std::invalid_argument("slot budget must be at least 1");
  const int K = s.user_count();
  CapacityResult dedicated = capacity_bound(s, cfg);

  if (slot_budget >= K) {
    RateReport report;
    report.scheme = "dyn";
    report.average_sum_rate = dedicated.bound;
    report.schedule = std::move(dedicated.schedule);
    report.user_gains = std::move(dedicated.gains);
    return report;
  }

  // strongest users keep their own slots; the tail shares one pattern
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (dedicated.gains[a] != dedicated.gains[b])
      return dedicated.gains[a] > dedicated.gains[b];
    return a < b;
  });
  const std::vector<int> shared(order.begin() + slot_budget - 1, order.end());

  double weight = 0.0, center = 0.0;
  for (int k : shared) {
    weight += dedicated.gains[k];
    center += dedicated.gains[k] * s.users[k].x;
  }
  const PinchingPattern shared_pattern = common_pattern(
      s, shared, centered_pattern(s, center / weight), cfg);

  std::vector<double> user_gains = dedicated.gains;
  double shared_gain_sum = 0.0;
  for (int k : shared) {
    user_gains[k] = effective_channel(s, shared_pattern, k).gain;
    shared_gain_sum += user_gains[k];
  }

  const double noise = static_cast<double>(s.antenna_count) * s.noise_power;
  const double energy = s.power_budget * s.period;
  std::vector<double> slot_coeffs(slot_budget, 0.0);
  for (int r = 0; r + 1 < slot_budget; ++r)
    slot_coeffs[r] = energy * dedicated.gains[order[r]] / noise;
  slot_coeffs[slot_budget - 1] = energy * shared_gain_sum / noise;

  const std::vector<double> durations =
      time_allocation_solve(slot_coeffs, s.period);

  RateReport report;
  report.scheme = "dyn";
  report.user_gains = std::move(user_gains);
  report.schedule.period = s.period;
  report.schedule.slots.resize(slot_budget);
  double objective = 0.0;
  for (int r = 0; r < slot_budget; ++r) {
    Slot& slot = report.schedule.slots[r];
    slot.duration = durations[r];
    slot.powers.assign(K, 0.0);
    if (durations[r] > 0.0) {
      const double burst = energy / durations[r];
      if (r + 1 < slot_budget) {
        slot.pattern = dedicated.patterns[order[r]];
        slot.powers[order[r]] = burst;
      } else {
        slot.pattern = shared_pattern;
        for (int k : shared) slot.powers[k] = burst;
      }
      objective +=
          durations[r] * std::log2(1.0 + slot_coeffs[r] / durations[r]);
    } else {
      // zero-length slot still needs a well-formed pattern
      slot.pattern =
          (r + 1 < slot_budget) ? dedicated.patterns[order[r]] : shared_pattern;
    }
  }
  report.average_sum_rate = objective / s.period;
  return report;
}

}  // namespace pamac

#include "pamac/baselines.hpp"

#include <numeric>

#include "pamac/optimizer.hpp"

namespace pamac {

namespace {

RateReport full_period_report(const Scenario& s, std::string scheme,
                              PinchingPattern pattern) {
  Slot slot;
  slot.pattern = std::move(pattern);
  slot.powers.assign(s.users.size(), s.power_budget);
  slot.duration = s.period;

  RateReport report;
  report.scheme = std::move(scheme);
  report.user_gains = channel_gains(s, slot.pattern);
  report.average_sum_rate = noma_slot_rate(s, slot);
  report.schedule.period = s.period;
  report.schedule.slots.push_back(std::move(slot));
  return report;
}

}  // namespace

PinchingPattern cas_pattern(const Scenario& s) {
  // All N elements sit at the stated fixed point x = 0. A conventional
  // array is not bound by the pinching spacing constraint, and stacking the
  // elements makes the waveguide sum combine coherently: |gamma|^2 =
  // N^2 |h|^2, so the rate grows with N even though the noise does too.
  PinchingPattern p;
  p.positions.assign(static_cast<size_t>(s.antenna_count), 0.0);
  return p;
}

RateReport cas_rate(const Scenario& s) {
  return full_period_report(s, "cas", cas_pattern(s));
}

RateReport static_pass_rate(const Scenario& s, const SearchConfig& cfg) {
  const int K = s.user_count();
  std::vector<int> everyone(K);
  std::iota(everyone.begin(), everyone.end(), 0);

  // Start 1: the spacing-feasible array centered on the CAS point. At N = 1
  // this is exactly the CAS pattern, so the AO ascent guarantee keeps this
  // scheme from losing to cas_rate there.
  const PinchingPattern from_cas =
      common_pattern(s, everyone, centered_pattern(s, 0.0), cfg);

  // Start 2: centered where the dedicated-gain mass sits.
  double weight = 0.0, center = 0.0;
  for (int k = 0; k < K; ++k) {
    const PinchingPattern own = refine_single_user_pattern(
        s, initial_single_user_pattern(s, k), k, cfg);
    const double gain = effective_channel(s, own, k).gain;
    weight += gain;
    center += gain * s.users[k].x;
  }
  const PinchingPattern from_center = common_pattern(
      s, everyone, centered_pattern(s, center / weight), cfg);

  auto total = [&](const PinchingPattern& p) {
    const auto gains = channel_gains(s, p);
    return std::accumulate(gains.begin(), gains.end(), 0.0);
  };
  const PinchingPattern& winner =
      total(from_center) > total(from_cas) ? from_center : from_cas;
  return full_period_report(s, "static", winner);
}

}  // namespace pamac

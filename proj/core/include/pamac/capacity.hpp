// Sum-rate machinery: per-slot NOMA rate, schedule averaging, the sum
// capacity upper bound with its achieving schedule, KKT diagnostics, the
// concave slot-duration program, and the finite-slot-budget rate.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pamac/optimizer.hpp"
#include "pamac/scenario.hpp"

namespace pamac {

/// One scheduling slot: a pinching pattern, per-user transmit powers (W) and
/// a duration (s). Users absent from the slot carry power 0.
struct Slot {
  PinchingPattern pattern;
  std::vector<double> powers;
  double duration = 0.0;
};

struct Schedule {
  std::vector<Slot> slots;
  double period = 1.0;
};

/// First violated schedule invariant (duration sum, nonnegativity, per-user
/// average power budget, slot shape) or nullopt.
std::optional<std::string> schedule_error(const Scenario& s,
                                          const Schedule& sched);

struct RateReport {
  std::string scheme;          // "cas", "static", "dyn" or "bound"
  double average_sum_rate = 0; // bits/s/Hz
  Schedule schedule;
  std::vector<double> user_gains;  // per-user |gamma|^2 diagnostic
};

/// Successive-decoding sum rate log2(1 + sum_k p_k |gamma_k|^2 / (N sigma^2))
/// of one slot. Noise scales with the antenna count N.
double noma_slot_rate(const Scenario& s, const Slot& slot);

/// Duration-weighted mean slot rate (1/T) * sum_m t_m * R_m.
double average_rate(const Scenario& s, const Schedule& sched);

struct CapacityResult {
  double bound = 0.0;                     // bits/s/Hz
  Schedule schedule;                      // achieving schedule
  std::vector<double> gains;              // G_k at each user's own pattern
  std::vector<PinchingPattern> patterns;  // per-user refined patterns
};

/// Sum-capacity upper bound log2(1 + P_ave * sum_k G_k / (N sigma^2)) with
/// G_k the refined dedicated gain of user k, plus the schedule that attains
/// it: one slot per user, durations proportional to G_k, inverse-gain powers.
CapacityResult capacity_bound(const Scenario& s, const SearchConfig& cfg);

/// capacity_bound wrapped as a RateReport with scheme "bound".
RateReport capacity_bound_report(const Scenario& s, const SearchConfig& cfg);

/// Single-antenna closed form log2(1 + eta * P_ave / sigma^2 *
/// sum_k (y_k^2 + d^2)^{-1}); requires antenna_count == 1 (the antenna then
/// sits at each user's foot, so the dedicated gain is exact).
double single_antenna_closed_form(const Scenario& s);

/// Stationarity diagnostics of the weighted-power program behind the bound,
/// in natural-log units. For the solution slot of user k, `active` is the
/// residual of user k's own first-order condition (zero at the optimum) and
/// `worst_inactive` the largest residual over the other users (nonpositive
/// at the optimum). patterns/gains must come from the same capacity_bound.
struct KktResidual {
  double active = 0.0;
  double worst_inactive = 0.0;
};
std::vector<KktResidual> kkt_stationarity_residual(
    const Scenario& s, const std::vector<double>& gains,
    const std::vector<PinchingPattern>& patterns);

/// Maximizes sum_m t_m * log2(1 + c_m / t_m) over durations summing to T.
/// Water-filling style: bisection on the duration-sum multiplier with an
/// inner bisection per slot; the result is rescaled so the sum is exactly T.
/// Zero coefficients receive zero duration. Throws std::invalid_argument on
/// negative coefficients, nonpositive T, or an all-zero coefficient vector.
std::vector<double> time_allocation_solve(const std::vector<double>& coeffs,
                                          double period);

/// Best dynamic-pinching rate with at most slot_budget reconfigurations per
/// period. With slot_budget >= K this is the capacity bound. Otherwise the
/// strongest slot_budget - 1 users keep dedicated refined patterns, the rest
/// share one AO-optimized pattern, and slot durations come from
/// time_allocation_solve. Scheme label "dyn".
RateReport finite_m_rate(const Scenario& s, int slot_budget,
                         const SearchConfig& cfg);

}  // namespace pamac

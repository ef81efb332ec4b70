// Deployment description for a pinched-waveguide uplink: geometry, carrier
// constants, budgets, plus the pinching pattern type and its validity checks.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pamac {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact by definition

// Geometric checks (span membership, spacing, ordering) carry this absolute
// slack in meters so patterns assembled from rounded arithmetic at exact
// spacing do not flicker between valid and invalid. 1 nm is far below any
// search tolerance used here and far above double rounding at meter scale.
inline constexpr double kGeometrySlack = 1e-9;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// One uplink deployment. Users lie in the ground plane (z = 0); the
/// dielectric waveguide runs parallel to the x-axis at height z = d and is
/// fed at feed_point. Antennas may be pinched anywhere on [span_lo, span_hi]
/// subject to the min_spacing separation rule. Plain data: build through
/// make_scenario so the derived carrier fields stay consistent.
struct Scenario {
  double carrier_frequency = 0.0;  // Hz
  double wavelength = 0.0;         // m, c / f
  double guided_wavelength = 0.0;  // m, wavelength / refractive_index
  double refractive_index = 1.0;   // effective index of the guide
  double path_constant = 0.0;      // wavelength^2 / (16 pi^2)
  double waveguide_height = 0.0;   // m
  double min_spacing = 0.0;        // m, minimum separation between antennas
  double span_lo = 0.0;            // m, admissible antenna x range
  double span_hi = 0.0;
  Vec3 feed_point;                 // where the guided wave enters
  std::vector<Vec3> users;         // transmitter positions, z = 0
  double noise_power = 0.0;        // W, receiver noise power sigma^2
  double power_budget = 0.0;       // W, per-user average power P_ave
  double period = 1.0;             // s, scheduling period T
  int antenna_count = 0;           // N

  int user_count() const { return static_cast<int>(users.size()); }
};

/// Builds a scenario with derived fields filled in. The feed sits at the low
/// end of the span, at waveguide height, directly above (span_lo, 0).
Scenario make_scenario(double carrier_frequency, double refractive_index,
                       double waveguide_height, double min_spacing,
                       double span_lo, double span_hi,
                       std::vector<Vec3> users, double noise_power,
                       double power_budget, double period, int antenna_count);

/// First violated scenario invariant as a message, or nullopt if consistent.
std::optional<std::string> scenario_error(const Scenario& s);

/// Antenna x-coordinates along the waveguide, ascending.
struct PinchingPattern {
  std::vector<double> positions;

  int size() const { return static_cast<int>(positions.size()); }
};

enum class PatternViolation { none, count, ordering, spacing, out_of_span };

struct PatternCheck {
  bool ok = true;
  PatternViolation kind = PatternViolation::none;
  int index = -1;       // offending element (left element for pair rules)
  std::string detail;   // human-readable description
};

/// Checks count, span membership, ordering and spacing left to right and
/// reports the first violation. Never throws.
PatternCheck validate_pattern(const Scenario& s,
                              const std::vector<double>& positions);
PatternCheck validate_pattern(const Scenario& s, const PinchingPattern& p);

}  // namespace pamac

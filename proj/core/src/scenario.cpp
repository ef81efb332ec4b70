#include "pamac/scenario.hpp"

#include <cmath>
#include <sstream>

namespace pamac {

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Scenario make_scenario(double carrier_frequency, double refractive_index,
                       double waveguide_height, double min_spacing,
                       double span_lo, double span_hi,
                       std::vector<Vec3> users, double noise_power,
                       double power_budget, double period, int antenna_count) {
  Scenario s;
  s.carrier_frequency = carrier_frequency;
  s.wavelength = kSpeedOfLight / carrier_frequency;
  s.refractive_index = refractive_index;
  s.guided_wavelength = s.wavelength / refractive_index;
  s.path_constant = s.wavelength * s.wavelength / (16.0 * M_PI * M_PI);
  s.waveguide_height = waveguide_height;
  s.min_spacing = min_spacing;
  s.span_lo = span_lo;
  s.span_hi = span_hi;
  s.feed_point = {span_lo, 0.0, waveguide_height};
  s.users = std::move(users);
  s.noise_power = noise_power;
  s.power_budget = power_budget;
  s.period = period;
  s.antenna_count = antenna_count;
  return s;
}

std::optional<std::string> scenario_error(const Scenario& s) {
  auto rel_off = [](double a, double b) {
    return std::abs(a - b) > 1e-9 * std::max(std::abs(a), std::abs(b));
  };
  if (!(s.carrier_frequency > 0.0)) return "carrier_frequency must be positive";
  if (!(s.refractive_index > 0.0)) return "refractive_index must be positive";
  if (rel_off(s.wavelength, kSpeedOfLight / s.carrier_frequency))
    return "wavelength inconsistent with carrier_frequency";
  if (rel_off(s.guided_wavelength, s.wavelength / s.refractive_index))
    return "guided_wavelength inconsistent with wavelength";
  if (rel_off(s.path_constant, s.wavelength * s.wavelength / (16.0 * M_PI * M_PI)))
    return "path_constant inconsistent with wavelength";
  if (!(s.waveguide_height > 0.0)) return "waveguide_height must be positive";
  if (!(s.min_spacing > 0.0)) return "min_spacing must be positive";
  if (!(s.span_hi > s.span_lo)) return "antenna span is empty";
  if (s.antenna_count < 1) return "antenna_count must be at least 1";
  if (static_cast<double>(s.antenna_count - 1) * s.min_spacing >
      (s.span_hi - s.span_lo) + kGeometrySlack)
    return "span too short for antenna_count at min_spacing";
  if (s.users.empty()) return "at least one user required";
  for (size_t k = 0; k < s.users.size(); ++k) {
    if (s.users[k].z != 0.0) {
      std::ostringstream msg;
      msg << "user " << k << " not in the ground plane";
      return msg.str();
    }
  }
  if (!(s.noise_power > 0.0)) return "noise_power must be positive";
  if (!(s.power_budget > 0.0)) return "power_budget must be positive";
  if (!(s.period > 0.0)) return "period must be positive";
  return std::nullopt;
}

namespace {

PatternCheck fail(PatternViolation kind, int index, std::string detail) {
  PatternCheck c;
  c.ok = false;
  c.kind = kind;
  c.index = index;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

PatternCheck validate_pattern(const Scenario& s,
                              const std::vector<double>& positions) {
  if (static_cast<int>(positions.size()) != s.antenna_count) {
    std::ostringstream msg;
    msg << "pattern has " << positions.size() << " positions, scenario needs "
        << s.antenna_count;
    return fail(PatternViolation::count, -1, msg.str());
  }
  for (size_t n = 0; n < positions.size(); ++n) {
    const double v = positions[n];
    if (v < s.span_lo - kGeometrySlack || v > s.span_hi + kGeometrySlack) {
      std::ostringstream msg;
      msg << "position " << n << " = " << v << " outside span [" << s.span_lo
          << ", " << s.span_hi << "]";
      return fail(PatternViolation::out_of_span, static_cast<int>(n), msg.str());
    }
    if (n + 1 < positions.size()) {
      const double diff = positions[n + 1] - v;
      if (diff <= 0.0) {
        std::ostringstream msg;
        msg << "positions " << n << " and " << n + 1 << " not increasing";
        return fail(PatternViolation::ordering, static_cast<int>(n), msg.str());
      }
      if (diff < s.min_spacing - kGeometrySlack) {
        std::ostringstream msg;
        msg << "gap " << diff << " between positions " << n << " and " << n + 1
            << " below min spacing " << s.min_spacing;
        return fail(PatternViolation::spacing, static_cast<int>(n), msg.str());
      }
    }
  }
  return PatternCheck{};
}

PatternCheck validate_pattern(const Scenario& s, const PinchingPattern& p) {
  return validate_pattern(s, p.positions);
}

}  // namespace pamac

#include "pamac/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace pamac {

namespace {

void check_user(const Scenario& s, int user_index) {
  if (user_index < 0 || user_index >= s.user_count())
    throw std::out_of_range("user index out of range");
}

}  // namespace

std::complex<double> channel_coefficient(const Scenario& s, int user_index,
                                         const Vec3& antenna_pos) {
  check_user(s, user_index);
  const double r = distance(antenna_pos, s.users[user_index]);
  if (r == 0.0)
    throw std::domain_error("antenna coincides with user: channel undefined");
  const double amp = std::sqrt(s.path_constant) / r;
  const double phase = -(2.0 * M_PI / s.wavelength) * r;
  return std::polar(amp, phase);
}

std::vector<std::complex<double>> waveguide_response(const Scenario& s,
                                                     const PinchingPattern& p) {
  std::vector<std::complex<double>> g;
  g.reserve(p.positions.size());
  for (double v : p.positions) {
    const Vec3 pinch{v, 0.0, s.waveguide_height};
    const double travel = distance(pinch, s.feed_point);
    g.push_back(std::polar(1.0, -(2.0 * M_PI / s.guided_wavelength) * travel));
  }
  return g;
}

EffectiveChannel effective_channel(const Scenario& s, const PinchingPattern& p,
                                   int user_index) {
  check_user(s, user_index);
  const auto g = waveguide_response(s, p);
  std::complex<double> sum{0.0, 0.0};
  for (size_t n = 0; n < g.size(); ++n) {
    const Vec3 pinch{p.positions[n], 0.0, s.waveguide_height};
    sum += g[n] * channel_coefficient(s, user_index, pinch);
  }
  EffectiveChannel ec;
  ec.user_index = user_index;
  ec.value = sum;
  ec.gain = std::norm(sum);
  return ec;
}

std::vector<double> channel_gains(const Scenario& s, const PinchingPattern& p) {
  const auto g = waveguide_response(s, p);
  std::vector<double> gains(s.users.size(), 0.0);
  for (int k = 0; k < s.user_count(); ++k) {
    std::complex<double> sum{0.0, 0.0};
    for (size_t n = 0; n < g.size(); ++n) {
      const Vec3 pinch{p.positions[n], 0.0, s.waveguide_height};
      sum += g[n] * channel_coefficient(s, k, pinch);
    }
    gains[k] = std::norm(sum);
  }
  return gains;
}

double effective_gain_ceiling(const Scenario& s, int user_index) {
  check_user(s, user_index);
  const Vec3& u = s.users[user_index];
  const double closest =
      std::sqrt(u.y * u.y + s.waveguide_height * s.waveguide_height);
  const double peak = static_cast<double>(s.antenna_count) *
                      std::sqrt(s.path_constant) / closest;
  return peak * peak;
}

}  // namespace pamac

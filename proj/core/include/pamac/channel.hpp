// Line-of-sight channel between pinched antennas and ground users, and the
// in-waveguide propagation from the feed to each pinch. The effective scalar
// channel of a user is the phase-weighted sum over all antennas.
#pragma once

#include <complex>
#include <vector>

#include "pamac/scenario.hpp"

namespace pamac {

/// Free-space coefficient sqrt(eta) * exp(-i * (2 pi / lambda) * r) / r for
/// the link between antenna_pos and user k, with r the 3-D distance.
/// Throws std::domain_error if the distance is zero.
std::complex<double> channel_coefficient(const Scenario& s, int user_index,
                                         const Vec3& antenna_pos);

/// Unit-magnitude guided phase exp(-i * (2 pi / guided_lambda) * s_n) per
/// antenna, where s_n is the distance from the feed to pinch n.
std::vector<std::complex<double>> waveguide_response(const Scenario& s,
                                                     const PinchingPattern& p);

struct EffectiveChannel {
  int user_index = -1;
  std::complex<double> value;  // sum_n g_n * h_k(v_n)
  double gain = 0.0;           // |value|^2
};

/// Effective scalar channel of user k under pattern p.
EffectiveChannel effective_channel(const Scenario& s, const PinchingPattern& p,
                                   int user_index);

/// |gamma_k|^2 for every user under pattern p.
std::vector<double> channel_gains(const Scenario& s, const PinchingPattern& p);

/// Coherent ceiling (N * sqrt(eta) / sqrt(y_k^2 + d^2))^2 that no pattern can
/// exceed for user k; useful as a sanity bound.
double effective_gain_ceiling(const Scenario& s, int user_index);

}  // namespace pamac

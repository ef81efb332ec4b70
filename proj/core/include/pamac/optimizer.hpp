// Pinching-position search: closed-form initial placement around a user,
// anchored per-antenna refinement of a single user's gain, and element-wise
// alternating optimization of a sum of gains over a user subset.
#pragma once

#include <vector>

#include "pamac/channel.hpp"
#include "pamac/scenario.hpp"

namespace pamac {

struct SearchConfig {
  double coarse_step = 0.0;       // grid step inside refinement windows
  double golden_tolerance = 0.0;  // final bracket width for 1-D refinement
  double ao_rel_tolerance = 1e-8; // stop when a pass improves less than this
  int ao_max_iters = 200;         // hard cap on AO passes
  double refine_window = 0.0;     // half-width of per-antenna refine window
};

/// Wavelength-scaled defaults: coarse_step = lambda/20, golden_tolerance =
/// lambda/1e4, refine_window = guided_lambda/2.
SearchConfig default_search_config(const Scenario& s);

/// Spacing-exact pattern of antenna_count positions centered at center_x,
/// translated minimally to fit the span. Throws std::invalid_argument when
/// the span cannot hold the pattern.
PinchingPattern centered_pattern(const Scenario& s, double center_x);

/// Closed-form start for a dedicated slot: centered_pattern at the user's x.
PinchingPattern initial_single_user_pattern(const Scenario& s, int user_index);

/// Cyclic per-antenna golden refinement of |gamma_k|^2 inside windows of
/// half-width refine_window anchored at the INPUT positions, intersected with
/// the spacing-feasible interval. Moves are kept only when they strictly
/// improve, so the output gain never falls below the input gain; with one
/// antenna the input is returned unchanged.
PinchingPattern refine_single_user_pattern(const Scenario& s,
                                           const PinchingPattern& start,
                                           int user_index,
                                           const SearchConfig& cfg);

/// Element-wise alternating maximization of sum_{k in subset} |gamma_k|^2.
/// Each element is searched over [prev + spacing, next - spacing] within the
/// span by a coarse grid (step min_spacing/10) plus golden refinement; grid
/// ties resolve to the smallest coordinate. Ascent from init is guaranteed.
/// Throws std::invalid_argument on an invalid init or empty/invalid subset.
PinchingPattern common_pattern(const Scenario& s,
                               const std::vector<int>& user_subset,
                               const PinchingPattern& init,
                               const SearchConfig& cfg);

}  // namespace pamac

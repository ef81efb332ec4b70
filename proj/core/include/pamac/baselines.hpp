// Reference schemes the dynamic-pinching results are compared against: a
// conventional fixed antenna array and a single static pinching pattern.
#pragma once

#include "pamac/capacity.hpp"
#include "pamac/scenario.hpp"

namespace pamac {

/// Conventional fixed array: every element at x = 0. Deliberately exempt
/// from the pinching spacing rule (validate_pattern rejects it for N >= 2);
/// colocated elements combine coherently through the waveguide sum.
PinchingPattern cas_pattern(const Scenario& s);

/// Rate of the fixed array, one slot, every user at full budget.
RateReport cas_rate(const Scenario& s);

/// One pinching pattern optimized for the sum of all users' gains and then
/// held for the whole period. AO restarts from the fixed-array pattern and
/// from a gain-weighted centered pattern; the better result wins, so this
/// never falls below cas_rate. Scheme label "static".
RateReport static_pass_rate(const Scenario& s, const SearchConfig& cfg);

}  // namespace pamac

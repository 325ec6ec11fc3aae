#ifndef TONESCALE_TONE_TABLE_HPP
#define TONESCALE_TONE_TABLE_HPP

#include "tonescale/tone.hpp"

#include <span>

namespace tonescale {

/// The fixed 125-entry screentone table corpora draw from: dot, stripe and
/// grid families over periods {4, 6, 8, 12, 16}, duties in [0.2, 0.8] and
/// angles {0, 45, 90, 135}. Every entry renders within 0.05 of its duty and
/// its period is recovered by estimate_period to within 1 px. Dots and grids
/// only use 0 and 45 degrees since 90 and 135 reproduce the same lattices.
std::span<const ToneSpec> tone_table();

}  // namespace tonescale

#endif  // TONESCALE_TONE_TABLE_HPP

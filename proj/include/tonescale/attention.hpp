#ifndef TONESCALE_ATTENTION_HPP
#define TONESCALE_ATTENTION_HPP

#include "tonescale/proposal.hpp"
#include "tonescale/raster.hpp"


namespace tonescale {

using AttentionMap = Plane<double>;
using ConfidenceMap = Plane<double>;

/// 1 where the proposal's label is valid, non-zero and equal to the target label.
AttentionMap phi_label(const LabelProposal& proposal, const LabelMap& target);

inline constexpr Index kPatternWindow = 11;
inline constexpr double kPatternSigma = 0.25;

/// exp(-d^2 / sigma^2), with d the mean over the valid pixels of a window x
/// window neighbourhood of the per-pixel L1 distance between proposal
/// channels [first_channel, first_channel + C) and the C target descriptor
/// channels. Padded pixels score 0.
AttentionMap phi_pattern(const Features& proposal, const Plane<std::uint8_t>& validity, const Features& target,
                         Index first_channel = 0, Index window = kPatternWindow, double sigma = kPatternSigma);

}  // namespace tonescale

#endif  // TONESCALE_ATTENTION_HPP

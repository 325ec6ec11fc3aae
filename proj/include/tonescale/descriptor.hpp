#ifndef TONESCALE_DESCRIPTOR_HPP
#define TONESCALE_DESCRIPTOR_HPP

#include "tonescale/raster.hpp"

#include <utility>

namespace tonescale {

/// Result of the autocorrelation period search on one region.
struct PeriodEstimate {
  bool determinate = false;  // false when the region is too small to measure
  bool periodic = false;
  double period_x = 0.0;     // along `orientation`; 0 when aperiodic
  double period_y = 0.0;     // along orientation + 90; 0 for one-dimensional patterns
  double orientation = 0.0;  // degrees, one of 0, 45, 90, 135
  double peak = 0.0;         // normalized autocorrelation at the chosen peak
};

/// Minimum pixel count and bounding-box side for a measurable region.
inline constexpr Index kMinPeriodRegionPixels = 256;
inline constexpr Index kMinPeriodRegionSide = 16;
/// Off-origin peaks below this fraction of the zero-lag value count as aperiodic.
inline constexpr double kPeriodicPeakThreshold = 0.3;

/// Periods of the masked part of `image`. The mean-removed ink signal is
/// autocorrelated along 0, 45, 90 and 135 degrees; the first off-origin peak
/// in each direction is a period candidate and the shortest one wins.
PeriodEstimate estimate_period(const BitonalImage& image, const Plane<bool>& mask);

/// Channel layout of a descriptor map.
enum DescriptorChannel : Index { kDensity = 0, kPeriodX = 1, kPeriodY = 2, kOrientation = 3, kDescriptorChannels = 4 };

/// Periods are stored divided by this many pixels and clamped to 1.
inline constexpr double kPeriodNormalization = 64.0;

struct ToneDescriptor {
  double density = 0.0;
  double period_x = 0.0;
  double period_y = 0.0;
  double orientation = 0.0;
};

/// Descriptor of the masked part of `image` (density always; periods when measurable).
ToneDescriptor describe_region(const BitonalImage& image, const Plane<bool>& mask);

/// Four-channel map holding each labelled region's descriptor on every pixel
/// of the region; label 0 pixels are zero.
Features build_descriptor_map(const BitonalImage& manga, const LabelMap& labels);

/// Label-free fallback: descriptors of sliding windows, each pixel taking the
/// window whose centre is nearest. Not region-constant.
Features build_descriptor_map_windowed(const BitonalImage& manga, Index window = 32, Index stride = 8);

inline constexpr double kMinSemanticScale = 0.25;
inline constexpr double kMaxSemanticScale = 2.0;

/// Bilinear resampling of the descriptor map and of the line map; resampled
/// lines are re-binarized with ink winning at exactly 0.5 coverage.
std::pair<LineMap, Features> resample_semantics(const LineMap& lines, const Features& descriptors, double k);

}  // namespace tonescale

#endif  // TONESCALE_DESCRIPTOR_HPP

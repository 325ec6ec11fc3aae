#include "tonescale/descriptor.hpp"

#include "tonescale/resample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace tonescale {

namespace {

struct Direction {
  Index dy;
  Index dx;
  double degrees;
  double step_length;
};

constexpr std::array<Direction, 4> kDirections{{
    {0, 1, 0.0, 1.0},
    {1, 1, 45.0, std::numbers::sqrt2},
    {1, 0, 90.0, 1.0},
    {1, -1, 135.0, std::numbers::sqrt2},
}};

constexpr Index kMaxLag = 32;

struct Peak {
  Index lag;
  double value;
};

// First local maximum that clears the threshold and rises at least 0.1 above
// the lowest value seen before it. A profile that never dips (the lag runs
// along a one-dimensional pattern) has no peak.
std::optional<Peak> first_peak(const std::vector<double>& r) {
  double trough = r.front();
  for (std::size_t t = 1; t + 1 < r.size(); ++t) {
    trough = std::min(trough, r[t]);
    const bool local_max = r[t] >= r[t - 1] && r[t] > r[t + 1];
    if (local_max && r[t] >= kPeriodicPeakThreshold && r[t] - trough >= 0.1)
      return Peak{static_cast<Index>(t), r[t]};
  }
  return std::nullopt;
}

}  // namespace

PeriodEstimate estimate_period(const BitonalImage& image, const Plane<bool>& mask) {
  if (mask.rows() != image.height() || mask.cols() != image.width())
    throw std::invalid_argument("estimate_period: mask does not match image");

  PeriodEstimate out;
  const auto count = static_cast<Index>(mask.count());
  if (count < kMinPeriodRegionPixels) return out;

  Index y0 = mask.rows(), y1 = -1, x0 = mask.cols(), x1 = -1;
  for (Index y = 0; y < mask.rows(); ++y)
    for (Index x = 0; x < mask.cols(); ++x)
      if (mask(y, x)) {
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
      }
  const Index h = y1 - y0 + 1;
  const Index w = x1 - x0 + 1;
  if (h < kMinPeriodRegionSide || w < kMinPeriodRegionSide) return out;
  out.determinate = true;

  const Plane<bool> m = mask.block(y0, x0, h, w);
  const Plane<double> ink = (image.pixels().block(y0, x0, h, w) == 0).cast<double>();
  const double mean = (ink * m.cast<double>()).sum() / static_cast<double>(count);
  const Plane<double> f = (ink - mean) * m.cast<double>();
  const double variance = f.square().sum() / static_cast<double>(count);
  if (variance < 1e-12) return out;

  struct Candidate {
    std::size_t dir;
    double distance;
    double value;
  };
  std::array<std::optional<Candidate>, 4> found;
  for (std::size_t d = 0; d < kDirections.size(); ++d) {
    const auto& dir = kDirections[d];
    const Index reach = (dir.dy != 0 && dir.dx != 0) ? std::min(h, w) : (dir.dy != 0 ? h : w);
    const Index max_lag = std::min(kMaxLag, reach / 2);
    std::vector<double> r{1.0};
    for (Index t = 1; t <= max_lag; ++t) {
      const Index sy = dir.dy * t;
      const Index sx = dir.dx * t;
      if (sy >= h || std::abs(sx) >= w) break;
      const Index c0 = std::max<Index>(0, -sx);
      const Index rows = h - sy;
      const Index cols = w - std::abs(sx);
      const double acc = (f.block(0, c0, rows, cols) * f.block(sy, c0 + sx, rows, cols)).sum();
      const auto n = static_cast<Index>((m.block(0, c0, rows, cols) && m.block(sy, c0 + sx, rows, cols)).count());
      if (4 * n < count) break;
      r.push_back(acc / (static_cast<double>(n) * variance));
    }
    if (const auto p = first_peak(r))
      found[d] = Candidate{d, static_cast<double>(p->lag) * dir.step_length, p->value};
  }

  std::optional<Candidate> best;
  for (const auto& c : found)
    if (c && (!best || c->distance < best->distance - 1e-9)) best = c;
  if (!best) return out;

  out.periodic = true;
  out.period_x = best->distance;
  out.orientation = kDirections[best->dir].degrees;
  out.peak = best->value;
  if (const auto& perp = found[(best->dir + 2) % 4]) out.period_y = perp->distance;
  return out;
}

ToneDescriptor describe_region(const BitonalImage& image, const Plane<bool>& mask) {
  ToneDescriptor d;
  const auto count = mask.count();
  if (count == 0) return d;
  d.density = static_cast<double>((mask && (image.pixels() == 0)).count()) / static_cast<double>(count);
  const PeriodEstimate p = estimate_period(image, mask);
  if (p.determinate && p.periodic) {
    d.period_x = p.period_x;
    d.period_y = p.period_y;
    d.orientation = p.orientation;
  }
  return d;
}

namespace {

void write_descriptor(Features& map, const Plane<bool>& where, const ToneDescriptor& d) {
  const std::array<double, 4> v{d.density, std::min(1.0, d.period_x / kPeriodNormalization),
                                std::min(1.0, d.period_y / kPeriodNormalization), d.orientation / 180.0};
  for (Index c = 0; c < kDescriptorChannels; ++c)
    map.channel(c) = where.select(Plane<double>::Constant(where.rows(), where.cols(), v[static_cast<std::size_t>(c)]),
                                  map.channel(c));
}

}  // namespace

Features build_descriptor_map(const BitonalImage& manga, const LabelMap& labels) {
  if (manga.extent() != labels.extent()) throw std::invalid_argument("build_descriptor_map: size mismatch");
  Features map(manga.height(), manga.width(), kDescriptorChannels, 0.0);
  for (const Label l : labels.distinct()) {
    if (l == kNoTone) continue;
    const Plane<bool> mask = labels.labels() == l;
    write_descriptor(map, mask, describe_region(manga, mask));
  }
  return map;
}

Features build_descriptor_map_windowed(const BitonalImage& manga, Index window, Index stride) {
  if (window < 1 || stride < 1) throw std::invalid_argument("build_descriptor_map_windowed: bad window");
  const Index wh = std::min(window, manga.height());
  const Index ww = std::min(window, manga.width());
  const Index ny = (manga.height() - wh) / stride + 1;
  const Index nx = (manga.width() - ww) / stride + 1;

  std::vector<ToneDescriptor> cells(static_cast<std::size_t>(ny * nx));
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      const BitonalImage crop(Plane<std::uint8_t>(manga.pixels().block(j * stride, i * stride, wh, ww)));
      cells[static_cast<std::size_t>(j * nx + i)] = describe_region(crop, Plane<bool>::Constant(wh, ww, true));
    }
  }

  Features map(manga.height(), manga.width(), kDescriptorChannels, 0.0);
  for (Index y = 0; y < manga.height(); ++y) {
    const Index j = std::clamp<Index>(static_cast<Index>(std::lround(static_cast<double>(y - wh / 2) / static_cast<double>(stride))), 0, ny - 1);
    for (Index x = 0; x < manga.width(); ++x) {
      const Index i = std::clamp<Index>(static_cast<Index>(std::lround(static_cast<double>(x - ww / 2) / static_cast<double>(stride))), 0, nx - 1);
      const auto& d = cells[static_cast<std::size_t>(j * nx + i)];
      map.channel(kDensity)(y, x) = d.density;
      map.channel(kPeriodX)(y, x) = std::min(1.0, d.period_x / kPeriodNormalization);
      map.channel(kPeriodY)(y, x) = std::min(1.0, d.period_y / kPeriodNormalization);
      map.channel(kOrientation)(y, x) = d.orientation / 180.0;
    }
  }
  return map;
}

std::pair<LineMap, Features> resample_semantics(const LineMap& lines, const Features& descriptors, double k) {
  if (!(k >= kMinSemanticScale && k <= kMaxSemanticScale))
    throw std::invalid_argument("resample_semantics: scale must lie in [0.25, 2]");
  if (lines.extent() != descriptors.extent()) throw std::invalid_argument("resample_semantics: size mismatch");
  Features desc = resample_bilinear(descriptors, k);
  const Plane<double> paper = resample_bilinear(Plane<double>(lines.pixels().cast<double>()), desc.extent());
  LineMap out(Plane<std::uint8_t>((paper > 0.5).cast<std::uint8_t>()));
  return {std::move(out), std::move(desc)};
}

}  // namespace tonescale

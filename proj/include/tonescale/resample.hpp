#ifndef TONESCALE_RESAMPLE_HPP
#define TONESCALE_RESAMPLE_HPP

#include "tonescale/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tonescale {

namespace detail {

// Center-aligned source coordinate of output sample i: pixel centers sit at
// i + 0.5 in both grids.
inline double source_coord(Index i, Index src_n, Index dst_n) {
  return (static_cast<double>(i) + 0.5) * static_cast<double>(src_n) / static_cast<double>(dst_n) - 0.5;
}

inline Index nearest_index(Index i, Index src_n, Index dst_n) {
  const double s = (static_cast<double>(i) + 0.5) * static_cast<double>(src_n) / static_cast<double>(dst_n);
  return std::clamp<Index>(static_cast<Index>(std::floor(s)), 0, src_n - 1);
}

struct LerpTap {
  Index lo;
  Index hi;
  double t;
};

inline LerpTap lerp_tap(Index i, Index src_n, Index dst_n) {
  const double s = std::clamp(source_coord(i, src_n, dst_n), 0.0, static_cast<double>(src_n - 1));
  const auto lo = static_cast<Index>(std::floor(s));
  const Index hi = std::min(lo + 1, src_n - 1);
  return {lo, hi, s - static_cast<double>(lo)};
}

}  // namespace detail

/// Bilinear resampling of one plane to an explicit extent.
template <typename Scalar>
Plane<Scalar> resample_bilinear(const Plane<Scalar>& src, Extent out) {
  const Index h = src.rows();
  const Index w = src.cols();
  std::vector<detail::LerpTap> xs(static_cast<std::size_t>(out.width));
  for (Index x = 0; x < out.width; ++x) xs[static_cast<std::size_t>(x)] = detail::lerp_tap(x, w, out.width);

  Plane<Scalar> dst(out.height, out.width);
  for (Index y = 0; y < out.height; ++y) {
    const auto ty = detail::lerp_tap(y, h, out.height);
    for (Index x = 0; x < out.width; ++x) {
      const auto& tx = xs[static_cast<std::size_t>(x)];
      // lerp written as a + t(b - a) so constant inputs stay exactly constant
      const double top = src(ty.lo, tx.lo) + tx.t * (src(ty.lo, tx.hi) - src(ty.lo, tx.lo));
      const double bot = src(ty.hi, tx.lo) + tx.t * (src(ty.hi, tx.hi) - src(ty.hi, tx.lo));
      dst(y, x) = static_cast<Scalar>(top + ty.t * (bot - top));
    }
  }
  return dst;
}

template <typename Scalar>
FeatureGrid<Scalar> resample_bilinear(const FeatureGrid<Scalar>& grid, double k) {
  const Extent out = scaled_extent(grid.extent(), k);
  std::vector<Plane<Scalar>> planes;
  planes.reserve(static_cast<std::size_t>(grid.channels()));
  for (const auto& p : grid.planes()) planes.push_back(resample_bilinear(p, out));
  return FeatureGrid<Scalar>(std::move(planes));
}

/// Nearest-neighbour resampling of one plane to an explicit extent.
template <typename T>
Plane<T> resample_nearest(const Plane<T>& src, Extent out) {
  Plane<T> dst(out.height, out.width);
  for (Index y = 0; y < out.height; ++y) {
    const Index sy = detail::nearest_index(y, src.rows(), out.height);
    for (Index x = 0; x < out.width; ++x) dst(y, x) = src(sy, detail::nearest_index(x, src.cols(), out.width));
  }
  return dst;
}

inline LabelMap resample_nearest(const LabelMap& labels, double k) {
  return LabelMap(resample_nearest(labels.labels(), scaled_extent(labels.extent(), k)));
}

template <typename Tag>
BinaryRaster<Tag> resample_nearest(const BinaryRaster<Tag>& r, double k) {
  return BinaryRaster<Tag>(resample_nearest(r.pixels(), scaled_extent(r.extent(), k)));
}

/// Pixel is paper (1) iff value >= threshold.
template <typename Scalar>
BitonalImage binarize(const FeatureGrid<Scalar>& grid, Index channel, double threshold) {
  if (channel < 0 || channel >= grid.channels()) throw std::out_of_range("binarize: channel out of range");
  const auto& p = grid.channel(channel);
  return BitonalImage((p >= static_cast<Scalar>(threshold)).template cast<std::uint8_t>());
}

}  // namespace tonescale

#endif  // TONESCALE_RESAMPLE_HPP

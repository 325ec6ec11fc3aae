#ifndef TONESCALE_RASTER_HPP
#define TONESCALE_RASTER_HPP

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tonescale {

using Index = Eigen::Index;

/// Row-major dense plane; rows are image rows (y), columns are x.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Label = std::uint32_t;

/// Reserved label for structural lines and untoned pixels.
inline constexpr Label kNoTone = 0;

struct Extent {
  Index height = 0;
  Index width = 0;

  Index area() const { return height * width; }
  bool operator==(const Extent&) const = default;
};

/// Output dimension for a scale factor: round-half-up of k*n, never below 1.
inline Index scaled_dim(Index n, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("scale factor must be positive");
  const auto v = static_cast<Index>(std::floor(k * static_cast<double>(n) + 0.5));
  return v < 1 ? 1 : v;
}

inline Extent scaled_extent(Extent e, double k) {
  return {scaled_dim(e.height, k), scaled_dim(e.width, k)};
}

/// Binary raster with 0 = ink and 1 = paper. The tag keeps manga pixels and
/// structural line maps from being mixed up.
template <typename Tag>
class BinaryRaster {
 public:
  BinaryRaster() = default;

  BinaryRaster(Index height, Index width, std::uint8_t fill = 1) {
    if (height <= 0 || width <= 0) throw std::invalid_argument("binary raster must be non-empty");
    if (fill > 1) throw std::invalid_argument("binary raster values must be 0 or 1");
    pixels_.setConstant(height, width, fill);
  }

  explicit BinaryRaster(Plane<std::uint8_t> pixels) : pixels_(std::move(pixels)) {
    if (pixels_.rows() <= 0 || pixels_.cols() <= 0)
      throw std::invalid_argument("binary raster must be non-empty");
    if ((pixels_ > 1).any()) throw std::invalid_argument("binary raster values must be 0 or 1");
  }

  Index height() const { return pixels_.rows(); }
  Index width() const { return pixels_.cols(); }
  Extent extent() const { return {height(), width()}; }

  std::uint8_t operator()(Index y, Index x) const { return pixels_(y, x); }
  bool is_ink(Index y, Index x) const { return pixels_(y, x) == 0; }
  void set(Index y, Index x, std::uint8_t v) { pixels_(y, x) = v ? 1 : 0; }

  const Plane<std::uint8_t>& pixels() const { return pixels_; }

  Index ink_count() const { return static_cast<Index>((pixels_ == 0).count()); }

  bool operator==(const BinaryRaster& o) const {
    return extent() == o.extent() && (pixels_ == o.pixels_).all();
  }

 private:
  Plane<std::uint8_t> pixels_;
};

struct MangaTag {};
struct LineTag {};

using BitonalImage = BinaryRaster<MangaTag>;
using LineMap = BinaryRaster<LineTag>;

template <typename To, typename From>
BinaryRaster<To> raster_cast(const BinaryRaster<From>& r) {
  return BinaryRaster<To>(r.pixels());
}

class LabelMap {
 public:
  LabelMap() = default;

  LabelMap(Index height, Index width, Label fill = kNoTone) {
    if (height <= 0 || width <= 0) throw std::invalid_argument("label map must be non-empty");
    labels_.setConstant(height, width, fill);
  }

  explicit LabelMap(Plane<Label> labels) : labels_(std::move(labels)) {
    if (labels_.rows() <= 0 || labels_.cols() <= 0)
      throw std::invalid_argument("label map must be non-empty");
  }

  Index height() const { return labels_.rows(); }
  Index width() const { return labels_.cols(); }
  Extent extent() const { return {height(), width()}; }

  Label operator()(Index y, Index x) const { return labels_(y, x); }
  void set(Index y, Index x, Label v) { labels_(y, x) = v; }

  const Plane<Label>& labels() const { return labels_; }

  /// Distinct labels in ascending order, including kNoTone if present.
  std::vector<Label> distinct() const;

  bool operator==(const LabelMap& o) const {
    return extent() == o.extent() && (labels_ == o.labels_).all();
  }

 private:
  Plane<Label> labels_;
};

/// Multi-channel real raster. Every channel has the grid's extent.
template <typename Scalar>
class FeatureGrid {
 public:
  using PlaneType = Plane<Scalar>;

  FeatureGrid() = default;

  FeatureGrid(Index height, Index width, Index channels, Scalar fill = Scalar(0)) {
    if (height <= 0 || width <= 0) throw std::invalid_argument("feature grid must be non-empty");
    if (channels <= 0) throw std::invalid_argument("feature grid needs at least one channel");
    planes_.assign(static_cast<std::size_t>(channels), PlaneType::Constant(height, width, fill));
  }

  explicit FeatureGrid(std::vector<PlaneType> planes) : planes_(std::move(planes)) {
    if (planes_.empty()) throw std::invalid_argument("feature grid needs at least one channel");
    const Index h = planes_.front().rows();
    const Index w = planes_.front().cols();
    if (h <= 0 || w <= 0) throw std::invalid_argument("feature grid must be non-empty");
    for (const auto& p : planes_) {
      if (p.rows() != h || p.cols() != w)
        throw std::invalid_argument("feature grid channels must share one extent");
    }
  }

  Index height() const { return planes_.empty() ? 0 : planes_.front().rows(); }
  Index width() const { return planes_.empty() ? 0 : planes_.front().cols(); }
  Index channels() const { return static_cast<Index>(planes_.size()); }
  Extent extent() const { return {height(), width()}; }

  const PlaneType& channel(Index c) const { return planes_.at(static_cast<std::size_t>(c)); }
  PlaneType& channel(Index c) { return planes_.at(static_cast<std::size_t>(c)); }

  Scalar operator()(Index c, Index y, Index x) const { return channel(c)(y, x); }

  const std::vector<PlaneType>& planes() const { return planes_; }

  bool all_finite() const {
    for (const auto& p : planes_)
      if (!p.isFinite().all()) return false;
    return true;
  }

  bool operator==(const FeatureGrid& o) const {
    if (channels() != o.channels() || extent() != o.extent()) return false;
    for (Index c = 0; c < channels(); ++c)
      if (!(channel(c) == o.channel(c)).all()) return false;
    return true;
  }

 private:
  std::vector<PlaneType> planes_;
};

using Features = FeatureGrid<double>;

/// Lift a binary raster into a one-channel grid with values 0.0 / 1.0.
template <typename Scalar = double, typename Tag>
FeatureGrid<Scalar> to_features(const BinaryRaster<Tag>& r) {
  return FeatureGrid<Scalar>({r.pixels().template cast<Scalar>()});
}

/// Stack the channels of several grids of equal extent.
template <typename Scalar>
FeatureGrid<Scalar> concat(const std::vector<FeatureGrid<Scalar>>& parts) {
  std::vector<Plane<Scalar>> planes;
  for (const auto& g : parts)
    for (const auto& p : g.planes()) planes.push_back(p);
  return FeatureGrid<Scalar>(std::move(planes));
}

}  // namespace tonescale

#endif  // TONESCALE_RASTER_HPP

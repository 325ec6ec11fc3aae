#ifndef TONESCALE_TONE_HPP
#define TONESCALE_TONE_HPP

#include "tonescale/raster.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace tonescale {

enum class ToneKind { dots, stripes, grid, noise };

std::string_view to_string(ToneKind kind);
ToneKind tone_kind_from_string(std::string_view name);

/// Parameters of one screentone. Periods are in pixels, angle in degrees,
/// duty is the ink coverage fraction. `seed` only matters for noise.
struct ToneSpec {
  ToneKind kind = ToneKind::dots;
  double period_x = 8.0;
  double period_y = 8.0;
  double duty = 0.5;
  double angle = 0.0;
  double phase_x = 0.0;
  double phase_y = 0.0;
  std::uint64_t seed = 0;

  bool periodic() const { return kind != ToneKind::noise; }
  bool operator==(const ToneSpec&) const = default;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const ToneSpec& spec);

using ToneAssignment = std::map<Label, ToneSpec>;

/// A screentone compiled into a function on the infinite integer plane.
///
/// Periodic kinds are built on a lattice with basis b1 = period_x * (cos a, sin a)
/// and b2 = period_y * (-sin a, cos a). When the angle is a multiple of 45 degrees
/// and both periods are whole pixels, the basis is snapped to integer vectors so
/// the pattern repeats exactly under integer translations; a 45 degree lattice of
/// period p therefore uses (n, n) with n = round(p / sqrt 2).
class Screentone {
 public:
  explicit Screentone(const ToneSpec& spec);

  const ToneSpec& spec() const { return spec_; }

  /// True when pixel (x, y) is ink. Sampled at the pixel centre.
  bool ink(Index x, Index y) const;

  /// Pixel values (0 ink / 1 paper) for the window whose top-left pixel is (x0, y0).
  Plane<std::uint8_t> render(Index x0, Index y0, Index height, Index width) const;

  /// Lattice spacing actually rendered along b1 and b2 (0 for noise).
  double rendered_period_x() const;
  double rendered_period_y() const;

  /// Smallest positive integer translation along x (resp. y) mapping the pattern
  /// onto itself, or 0 when the lattice is not integer.
  Index axis_period_x() const { return axis_x_; }
  Index axis_period_y() const { return axis_y_; }

 private:
  double coverage_fraction(double s) const;

  ToneSpec spec_;
  Eigen::Matrix2d basis_ = Eigen::Matrix2d::Identity();  // columns b1, b2
  Eigen::Matrix2d inverse_ = Eigen::Matrix2d::Identity();
  double dot_radius_ = 0.0;
  double line_duty_ = 0.0;  // per-family duty for grids
  Index axis_x_ = 0;
  Index axis_y_ = 0;
};

/// Renders the tone over a width x height canvas anchored at the origin.
BitonalImage gen_tone(const ToneSpec& spec, Index width, Index height);

/// Fills every labelled pixel with its region's tone evaluated at global
/// coordinates; line ink is forced over the result. Unlabelled non-line pixels
/// stay paper.
BitonalImage lay_screentones(const LabelMap& labels, const LineMap& lines, const ToneAssignment& assignment);

struct RegionMap {
  LabelMap labels;
  LineMap lines;
};

/// Voronoi partition into n_regions cells labelled 1..n_regions. Cell
/// boundaries become 2 px wide ink lines carrying label 0. Each cell's
/// non-line pixels form one 4-connected component; stray fragments are folded
/// into the line map.
RegionMap gen_region_map(Index width, Index height, Index n_regions, std::uint64_t seed);

}  // namespace tonescale

#endif  // TONESCALE_TONE_HPP

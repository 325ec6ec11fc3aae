#include "tonescale/tone.hpp"

#include "tonescale/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace tonescale {

namespace {

bool is_whole(double v) { return std::abs(v - std::round(v)) < 1e-9; }

double frac(double v) { return v - std::floor(v); }

Index floor_mod(Index v, Index m) {
  const Index r = v % m;
  return r < 0 ? r + m : r;
}

// Smallest L > 0 such that L * column is an integer vector of lattice coordinates.
Index axis_period(const Eigen::Matrix2d& inverse, const Eigen::Vector2d& axis, double det) {
  const auto bound = static_cast<Index>(std::llround(std::abs(det)));
  for (Index l = 1; l <= bound; ++l) {
    const Eigen::Vector2d st = inverse * (axis * static_cast<double>(l));
    if (is_whole(st.x()) && is_whole(st.y())) return l;
  }
  return 0;
}

}  // namespace

std::string_view to_string(ToneKind kind) {
  switch (kind) {
    case ToneKind::dots: return "dots";
    case ToneKind::stripes: return "stripes";
    case ToneKind::grid: return "grid";
    case ToneKind::noise: return "noise";
  }
  return "dots";
}

ToneKind tone_kind_from_string(std::string_view name) {
  if (name == "dots") return ToneKind::dots;
  if (name == "stripes") return ToneKind::stripes;
  if (name == "grid") return ToneKind::grid;
  if (name == "noise") return ToneKind::noise;
  throw std::invalid_argument("unknown tone kind '" + std::string(name) + "'");
}

void validate(const ToneSpec& spec) {
  if (!(spec.duty > 0.0 && spec.duty < 1.0)) throw std::invalid_argument("tone duty must lie in (0, 1)");
  if (!(spec.angle >= 0.0 && spec.angle < 180.0)) throw std::invalid_argument("tone angle must lie in [0, 180)");
  if (!std::isfinite(spec.phase_x) || !std::isfinite(spec.phase_y))
    throw std::invalid_argument("tone phase must be finite");
  if (spec.periodic() && !(spec.period_x >= 2.0 && spec.period_y >= 2.0))
    throw std::invalid_argument("tone periods must be at least 2 px");
}

Screentone::Screentone(const ToneSpec& spec) : spec_(spec) {
  validate(spec_);
  if (!spec_.periodic()) return;

  const double a = spec_.angle * std::numbers::pi / 180.0;
  Eigen::Vector2d b1(std::cos(a), std::sin(a));
  Eigen::Vector2d b2(-std::sin(a), std::cos(a));
  b1 *= spec_.period_x;
  b2 *= spec_.period_y;
  const bool snap = is_whole(std::fmod(spec_.angle, 45.0)) && is_whole(spec_.period_x) && is_whole(spec_.period_y);
  if (snap) {
    b1 = b1.array().round().matrix();
    b2 = b2.array().round().matrix();
  }
  basis_.col(0) = b1;
  basis_.col(1) = b2;
  inverse_ = basis_.inverse();

  const double cell = std::abs(basis_.determinant());
  dot_radius_ = std::sqrt(spec_.duty * cell / std::numbers::pi);
  line_duty_ = 1.0 - std::sqrt(1.0 - spec_.duty);
  if (snap) {
    axis_x_ = axis_period(inverse_, Eigen::Vector2d::UnitX(), cell);
    axis_y_ = axis_period(inverse_, Eigen::Vector2d::UnitY(), cell);
  }
}

double Screentone::rendered_period_x() const { return spec_.periodic() ? basis_.col(0).norm() : 0.0; }
double Screentone::rendered_period_y() const { return spec_.periodic() ? basis_.col(1).norm() : 0.0; }

bool Screentone::ink(Index x, Index y) const {
  if (!spec_.periodic()) {
    std::uint64_t h = splitmix64(spec_.seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(x));
    h = splitmix64(h ^ static_cast<std::uint64_t>(y));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < spec_.duty;
  }
  // Reducing into one axis period first makes integer translations bit-exact.
  if (axis_x_ > 0) x = floor_mod(x, axis_x_);
  if (axis_y_ > 0) y = floor_mod(y, axis_y_);
  const Eigen::Vector2d p(static_cast<double>(x) + 0.5 - spec_.phase_x, static_cast<double>(y) + 0.5 - spec_.phase_y);
  const Eigen::Vector2d st = inverse_ * p;
  switch (spec_.kind) {
    case ToneKind::stripes: return frac(st.x()) < spec_.duty;
    case ToneKind::grid: return frac(st.x()) < line_duty_ || frac(st.y()) < line_duty_;
    case ToneKind::dots: {
      const Eigen::Vector2d nearest = basis_ * st.array().round().matrix();
      return (p - nearest).norm() < dot_radius_;
    }
    case ToneKind::noise: break;
  }
  return false;
}

Plane<std::uint8_t> Screentone::render(Index x0, Index y0, Index height, Index width) const {
  Plane<std::uint8_t> out(height, width);
  for (Index r = 0; r < height; ++r)
    for (Index c = 0; c < width; ++c) out(r, c) = ink(x0 + c, y0 + r) ? 0 : 1;
  return out;
}

BitonalImage gen_tone(const ToneSpec& spec, Index width, Index height) {
  if (width < 1 || height < 1) throw std::invalid_argument("gen_tone: canvas must be at least 1x1");
  return BitonalImage(Screentone(spec).render(0, 0, height, width));
}

BitonalImage lay_screentones(const LabelMap& labels, const LineMap& lines, const ToneAssignment& assignment) {
  if (labels.extent() != lines.extent()) throw std::invalid_argument("lay_screentones: labels and lines differ in size");
  std::map<Label, Screentone> tones;
  for (const Label l : labels.distinct()) {
    if (l == kNoTone) continue;
    const auto it = assignment.find(l);
    if (it == assignment.end()) throw std::invalid_argument("lay_screentones: label " + std::to_string(l) + " has no tone");
    tones.emplace(l, Screentone(it->second));
  }
  Plane<std::uint8_t> px = Plane<std::uint8_t>::Ones(labels.height(), labels.width());
  for (Index y = 0; y < labels.height(); ++y) {
    for (Index x = 0; x < labels.width(); ++x) {
      if (lines.is_ink(y, x)) {
        px(y, x) = 0;
        continue;
      }
      const Label l = labels(y, x);
      if (l != kNoTone) px(y, x) = tones.at(l).ink(x, y) ? 0 : 1;
    }
  }
  return BitonalImage(std::move(px));
}

RegionMap gen_region_map(Index width, Index height, Index n_regions, std::uint64_t seed) {
  if (width < 1 || height < 1) throw std::invalid_argument("gen_region_map: canvas must be non-empty");
  if (n_regions < 1) throw std::invalid_argument("gen_region_map: need at least one region");
  if (n_regions > width * height) throw std::invalid_argument("gen_region_map: more regions than pixels");

  Rng rng(seed);
  // Sites keep a minimum spacing so no cell degenerates into a sliver; the
  // spacing relaxes whenever placement keeps failing.
  std::vector<Eigen::Vector2d> sites;
  double min_gap = 0.6 * std::sqrt(static_cast<double>(width * height) / static_cast<double>(n_regions));
  int failures = 0;
  while (static_cast<Index>(sites.size()) < n_regions) {
    const Eigen::Vector2d s(rng.uniform(0.0, static_cast<double>(width)), rng.uniform(0.0, static_cast<double>(height)));
    const bool ok = std::all_of(sites.begin(), sites.end(), [&](const Eigen::Vector2d& o) { return (o - s).norm() >= min_gap; });
    if (ok) {
      sites.push_back(s);
      failures = 0;
    } else if (++failures > 200) {
      min_gap *= 0.9;
      failures = 0;
    }
  }

  Plane<Label> cell(height, width);
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      const Eigen::Vector2d p(static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5);
      std::size_t best = 0;
      double best_d = (sites[0] - p).squaredNorm();
      for (std::size_t i = 1; i < sites.size(); ++i) {
        const double d = (sites[i] - p).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      cell(y, x) = static_cast<Label>(best + 1);
    }
  }

  // Both pixels of every differing 4-neighbour pair become line: 2 px boundaries.
  Plane<std::uint8_t> line = Plane<std::uint8_t>::Zero(height, width);
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      if (x + 1 < width && cell(y, x) != cell(y, x + 1)) line(y, x) = line(y, x + 1) = 1;
      if (y + 1 < height && cell(y, x) != cell(y + 1, x)) line(y, x) = line(y + 1, x) = 1;
    }
  }

  // Keep the largest 4-connected piece of each cell; smaller pieces join the lines.
  Plane<int> comp = Plane<int>::Constant(height, width, -1);
  std::vector<Index> comp_size;
  std::vector<Label> comp_label;
  for (Index y0 = 0; y0 < height; ++y0) {
    for (Index x0 = 0; x0 < width; ++x0) {
      if (line(y0, x0) || comp(y0, x0) >= 0) continue;
      const int id = static_cast<int>(comp_size.size());
      const Label l = cell(y0, x0);
      Index count = 0;
      std::queue<std::pair<Index, Index>> q;
      q.emplace(y0, x0);
      comp(y0, x0) = id;
      while (!q.empty()) {
        const auto [y, x] = q.front();
        q.pop();
        ++count;
        constexpr std::array<std::pair<int, int>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        for (const auto& [dy, dx] : steps) {
          const Index ny = y + dy;
          const Index nx = x + dx;
          if (ny < 0 || nx < 0 || ny >= height || nx >= width) continue;
          if (line(ny, nx) || comp(ny, nx) >= 0 || cell(ny, nx) != l) continue;
          comp(ny, nx) = id;
          q.emplace(ny, nx);
        }
      }
      comp_size.push_back(count);
      comp_label.push_back(l);
    }
  }
  std::map<Label, int> keep;
  for (std::size_t i = 0; i < comp_size.size(); ++i) {
    auto [it, inserted] = keep.emplace(comp_label[i], static_cast<int>(i));
    if (!inserted && comp_size[i] > comp_size[static_cast<std::size_t>(it->second)]) it->second = static_cast<int>(i);
  }

  Plane<Label> labels(height, width);
  Plane<std::uint8_t> line_px(height, width);
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      const bool is_line = line(y, x) || keep.at(cell(y, x)) != comp(y, x);
      labels(y, x) = is_line ? kNoTone : cell(y, x);
      line_px(y, x) = is_line ? 0 : 1;
    }
  }
  return {LabelMap(std::move(labels)), LineMap(std::move(line_px))};
}

}  // namespace tonescale

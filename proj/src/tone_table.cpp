#include "tonescale/tone_table.hpp"

#include <array>
#include <vector>

namespace tonescale {

namespace {

struct Entry {
  ToneKind kind;
  double period;
  double angle;
  double duty;
};

// kind, period (px), angle (deg), duty
constexpr std::array<Entry, 125> kEntries{{
    {ToneKind::dots, 6, 0, 0.3},
    {ToneKind::dots, 6, 0, 0.7},
    {ToneKind::dots, 8, 0, 0.2},
    {ToneKind::dots, 8, 0, 0.4},
    {ToneKind::dots, 8, 0, 0.5},
    {ToneKind::dots, 8, 0, 0.7},
    {ToneKind::dots, 8, 0, 0.8},
    {ToneKind::dots, 12, 0, 0.2},
    {ToneKind::dots, 12, 0, 0.3},
    {ToneKind::dots, 12, 0, 0.4},
    {ToneKind::dots, 12, 0, 0.5},
    {ToneKind::dots, 12, 0, 0.6},
    {ToneKind::dots, 12, 0, 0.7},
    {ToneKind::dots, 12, 0, 0.8},
    {ToneKind::dots, 16, 0, 0.2},
    {ToneKind::dots, 16, 0, 0.3},
    {ToneKind::dots, 16, 0, 0.4},
    {ToneKind::dots, 16, 0, 0.5},
    {ToneKind::dots, 16, 0, 0.6},
    {ToneKind::dots, 16, 0, 0.7},
    {ToneKind::dots, 16, 0, 0.8},
    {ToneKind::dots, 4, 45, 0.2},
    {ToneKind::dots, 4, 45, 0.7},
    {ToneKind::dots, 4, 45, 0.8},
    {ToneKind::dots, 6, 45, 0.4},
    {ToneKind::dots, 6, 45, 0.5},
    {ToneKind::dots, 8, 45, 0.2},
    {ToneKind::dots, 8, 45, 0.3},
    {ToneKind::dots, 8, 45, 0.6},
    {ToneKind::dots, 8, 45, 0.7},
    {ToneKind::dots, 12, 45, 0.2},
    {ToneKind::dots, 12, 45, 0.4},
    {ToneKind::dots, 12, 45, 0.5},
    {ToneKind::dots, 12, 45, 0.6},
    {ToneKind::dots, 12, 45, 0.7},
    {ToneKind::dots, 16, 45, 0.2},
    {ToneKind::dots, 16, 45, 0.3},
    {ToneKind::dots, 16, 45, 0.4},
    {ToneKind::dots, 16, 45, 0.5},
    {ToneKind::dots, 16, 45, 0.6},
    {ToneKind::dots, 16, 45, 0.7},
    {ToneKind::dots, 16, 45, 0.8},
    {ToneKind::stripes, 4, 0, 0.5},
    {ToneKind::stripes, 6, 0, 0.5},
    {ToneKind::stripes, 6, 0, 0.7},
    {ToneKind::stripes, 8, 0, 0.4},
    {ToneKind::stripes, 8, 0, 0.5},
    {ToneKind::stripes, 8, 0, 0.6},
    {ToneKind::stripes, 12, 0, 0.4},
    {ToneKind::stripes, 12, 0, 0.5},
    {ToneKind::stripes, 12, 0, 0.6},
    {ToneKind::stripes, 16, 0, 0.4},
    {ToneKind::stripes, 16, 0, 0.5},
    {ToneKind::stripes, 16, 0, 0.6},
    {ToneKind::stripes, 4, 45, 0.5},
    {ToneKind::stripes, 4, 45, 0.6},
    {ToneKind::stripes, 6, 45, 0.5},
    {ToneKind::stripes, 6, 45, 0.6},
    {ToneKind::stripes, 8, 45, 0.4},
    {ToneKind::stripes, 8, 45, 0.5},
    {ToneKind::stripes, 8, 45, 0.6},
    {ToneKind::stripes, 12, 45, 0.4},
    {ToneKind::stripes, 12, 45, 0.5},
    {ToneKind::stripes, 12, 45, 0.6},
    {ToneKind::stripes, 16, 45, 0.4},
    {ToneKind::stripes, 16, 45, 0.5},
    {ToneKind::stripes, 16, 45, 0.6},
    {ToneKind::stripes, 4, 90, 0.5},
    {ToneKind::stripes, 6, 90, 0.5},
    {ToneKind::stripes, 8, 90, 0.4},
    {ToneKind::stripes, 8, 90, 0.5},
    {ToneKind::stripes, 8, 90, 0.6},
    {ToneKind::stripes, 12, 90, 0.4},
    {ToneKind::stripes, 12, 90, 0.5},
    {ToneKind::stripes, 12, 90, 0.6},
    {ToneKind::stripes, 16, 90, 0.4},
    {ToneKind::stripes, 16, 90, 0.5},
    {ToneKind::stripes, 16, 90, 0.6},
    {ToneKind::stripes, 4, 135, 0.5},
    {ToneKind::stripes, 6, 135, 0.5},
    {ToneKind::stripes, 6, 135, 0.6},
    {ToneKind::stripes, 8, 135, 0.4},
    {ToneKind::stripes, 8, 135, 0.5},
    {ToneKind::stripes, 12, 135, 0.4},
    {ToneKind::stripes, 12, 135, 0.5},
    {ToneKind::stripes, 12, 135, 0.6},
    {ToneKind::stripes, 16, 135, 0.4},
    {ToneKind::stripes, 16, 135, 0.5},
    {ToneKind::stripes, 16, 135, 0.6},
    {ToneKind::grid, 4, 0, 0.4},
    {ToneKind::grid, 6, 0, 0.3},
    {ToneKind::grid, 8, 0, 0.2},
    {ToneKind::grid, 8, 0, 0.4},
    {ToneKind::grid, 8, 0, 0.6},
    {ToneKind::grid, 12, 0, 0.2},
    {ToneKind::grid, 12, 0, 0.3},
    {ToneKind::grid, 12, 0, 0.6},
    {ToneKind::grid, 12, 0, 0.7},
    {ToneKind::grid, 12, 0, 0.8},
    {ToneKind::grid, 16, 0, 0.2},
    {ToneKind::grid, 16, 0, 0.3},
    {ToneKind::grid, 16, 0, 0.4},
    {ToneKind::grid, 16, 0, 0.5},
    {ToneKind::grid, 16, 0, 0.6},
    {ToneKind::grid, 16, 0, 0.7},
    {ToneKind::grid, 16, 0, 0.8},
    {ToneKind::grid, 4, 45, 0.3},
    {ToneKind::grid, 4, 45, 0.5},
    {ToneKind::grid, 6, 45, 0.4},
    {ToneKind::grid, 6, 45, 0.6},
    {ToneKind::grid, 8, 45, 0.3},
    {ToneKind::grid, 8, 45, 0.4},
    {ToneKind::grid, 8, 45, 0.5},
    {ToneKind::grid, 8, 45, 0.7},
    {ToneKind::grid, 8, 45, 0.8},
    {ToneKind::grid, 12, 45, 0.2},
    {ToneKind::grid, 12, 45, 0.4},
    {ToneKind::grid, 12, 45, 0.5},
    {ToneKind::grid, 12, 45, 0.6},
    {ToneKind::grid, 12, 45, 0.8},
    {ToneKind::grid, 16, 45, 0.3},
    {ToneKind::grid, 16, 45, 0.4},
    {ToneKind::grid, 16, 45, 0.5},
    {ToneKind::grid, 16, 45, 0.7},
    {ToneKind::grid, 16, 45, 0.8},
}};

std::vector<ToneSpec> expand() {
  std::vector<ToneSpec> out;
  out.reserve(kEntries.size());
  for (const auto& e : kEntries) {
    ToneSpec s;
    s.kind = e.kind;
    s.period_x = s.period_y = e.period;
    s.angle = e.angle;
    s.duty = e.duty;
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::span<const ToneSpec> tone_table() {
  static const std::vector<ToneSpec> table = expand();
  return table;
}

}  // namespace tonescale

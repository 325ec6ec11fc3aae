#include "tonescale/attention.hpp"

#include "tonescale/rpsm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tonescale {

PhiIndex phi_index_from_string(std::string_view name) {
  if (name == "previous") return PhiIndex::previous;
  if (name == "current") return PhiIndex::current;
  throw std::invalid_argument("unknown phi index '" + std::string(name) + "'");
}

std::string_view to_string(PhiIndex index) { return index == PhiIndex::previous ? "previous" : "current"; }

AttentionMap phi_label(const LabelProposal& proposal, const LabelMap& target) {
  if (proposal.labels.extent() != target.extent()) throw std::invalid_argument("phi_label: size mismatch");
  const auto& p = proposal.labels.labels();
  const auto& t = target.labels();
  return ((p == t) && (proposal.validity != 0) && (t != kNoTone)).cast<double>();
}

namespace {

// Summed-area table with a zero first row and column.
Plane<double> integral(const Plane<double>& a) {
  Plane<double> s = Plane<double>::Zero(a.rows() + 1, a.cols() + 1);
  for (Index y = 0; y < a.rows(); ++y)
    for (Index x = 0; x < a.cols(); ++x) s(y + 1, x + 1) = a(y, x) + s(y, x + 1) + s(y + 1, x) - s(y, x);
  return s;
}

double box_sum(const Plane<double>& s, Index y0, Index x0, Index y1, Index x1) {
  return s(y1, x1) - s(y0, x1) - s(y1, x0) + s(y0, x0);
}

}  // namespace

AttentionMap phi_pattern(const Features& proposal, const Plane<std::uint8_t>& validity, const Features& target,
                         Index first_channel, Index window, double sigma) {
  if (proposal.extent() != target.extent() || validity.rows() != target.height() || validity.cols() != target.width())
    throw std::invalid_argument("phi_pattern: size mismatch");
  if (first_channel < 0 || first_channel + target.channels() > proposal.channels())
    throw std::invalid_argument("phi_pattern: proposal lacks descriptor channels");
  if (window < 1 || !(sigma > 0.0)) throw std::invalid_argument("phi_pattern: bad window or sigma");

  const Plane<double> valid = (validity != 0).cast<double>();
  Plane<double> dist = Plane<double>::Zero(target.height(), target.width());
  for (Index c = 0; c < target.channels(); ++c)
    dist += (proposal.channel(first_channel + c) - target.channel(c)).abs();
  dist *= valid;

  const Plane<double> sd = integral(dist);
  const Plane<double> sv = integral(valid);
  const Index r = window / 2;
  AttentionMap out = AttentionMap::Zero(target.height(), target.width());
  for (Index y = 0; y < target.height(); ++y) {
    const Index y0 = std::max<Index>(0, y - r);
    const Index y1 = std::min(target.height(), y + r + 1);
    for (Index x = 0; x < target.width(); ++x) {
      if (!validity(y, x)) continue;
      const Index x0 = std::max<Index>(0, x - r);
      const Index x1 = std::min(target.width(), x + r + 1);
      const double d = box_sum(sd, y0, x0, y1, x1) / box_sum(sv, y0, x0, y1, x1);
      out(y, x) = std::exp(-(d * d) / (sigma * sigma));
    }
  }
  return out;
}

}  // namespace tonescale

#ifndef TONESCALE_RPSM_HPP
#define TONESCALE_RPSM_HPP

#include "tonescale/proposal.hpp"
#include "tonescale/raster.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace tonescale {

/// Which proposal the attention block scores at iteration l. `previous`
/// scores F^(l-1) while fusing F^l, as the recurrence is usually printed;
/// `current` scores the proposal being fused.
enum class PhiIndex { previous, current };

PhiIndex phi_index_from_string(std::string_view name);
std::string_view to_string(PhiIndex index);

template <typename Scalar>
struct FusionTrace {
  FeatureGrid<Scalar> fused;
  std::vector<Plane<Scalar>> attention;             // M^l
  std::vector<Plane<Scalar>> normalized_attention;  // M^l * (1 - C^(l-1))
  std::vector<Plane<Scalar>> confidence;            // C^l
  Plane<Scalar> confidence_final;
};

/// Attention block. `proposal` indexes F^0..F^L where F^0 is the backbone
/// feature and F^l (l >= 1) is proposals[l - 1]; `fused` is the running fused
/// feature. Must return a map in [0, 1] of the fused extent.
template <typename Scalar>
using AttentionFn = std::function<Plane<Scalar>(std::size_t proposal, const FeatureGrid<Scalar>& fused)>;

/// Recurrent proposal selection with an identity residual block:
///
///   F <- F_b, C <- 0
///   for l = 1..L:
///     M      <- phi(F^(l-1) or F^l, F)
///     M_norm <- M * (1 - C)
///     F      <- F * (1 - M_norm) + F^l * M_norm
///     C      <- C + M * (1 - C)
///
/// Every channel of F is blended with the same weights.
template <typename Scalar>
FusionTrace<Scalar> rpsm_fuse(const FeatureGrid<Scalar>& backbone, std::span<const FeatureGrid<Scalar>> proposals,
                              const AttentionFn<Scalar>& phi, PhiIndex index = PhiIndex::previous) {
  if (proposals.empty()) throw std::invalid_argument("rpsm_fuse: no proposals");
  for (const auto& p : proposals) {
    if (p.extent() != backbone.extent() || p.channels() != backbone.channels())
      throw std::invalid_argument("rpsm_fuse: proposal shape differs from backbone");
  }

  const Index h = backbone.height();
  const Index w = backbone.width();
  FusionTrace<Scalar> trace;
  trace.fused = backbone;
  Plane<Scalar> confidence = Plane<Scalar>::Zero(h, w);

  for (std::size_t l = 1; l <= proposals.size(); ++l) {
    const std::size_t scored = index == PhiIndex::previous ? l - 1 : l;
    Plane<Scalar> m = phi(scored, trace.fused);
    if (m.rows() != h || m.cols() != w) throw std::invalid_argument("rpsm_fuse: attention map has wrong extent");
    if (!((m >= Scalar(0)) && (m <= Scalar(1))).all()) throw std::domain_error("rpsm_fuse: attention outside [0, 1]");

    const Plane<Scalar> m_norm = m * (Scalar(1) - confidence);
    const FeatureGrid<Scalar>& proposal = proposals[l - 1];
    for (Index c = 0; c < backbone.channels(); ++c)
      trace.fused.channel(c) = trace.fused.channel(c) * (Scalar(1) - m_norm) + proposal.channel(c) * m_norm;
    confidence = confidence + m * (Scalar(1) - confidence);

    trace.attention.push_back(std::move(m));
    trace.normalized_attention.push_back(m_norm);
    trace.confidence.push_back(confidence);
  }
  trace.confidence_final = std::move(confidence);
  return trace;
}

template <typename Scalar>
FusionTrace<Scalar> rpsm_fuse(const FeatureGrid<Scalar>& backbone, const ProposalSet<Scalar>& proposals,
                              const AttentionFn<Scalar>& phi, PhiIndex index = PhiIndex::previous) {
  std::vector<FeatureGrid<Scalar>> data;
  data.reserve(proposals.levels.size());
  for (const auto& p : proposals.levels) data.push_back(p.data);
  return rpsm_fuse<Scalar>(backbone, std::span<const FeatureGrid<Scalar>>(data), phi, index);
}

}  // namespace tonescale

#endif  // TONESCALE_RPSM_HPP

#ifndef TONESCALE_PROPOSAL_HPP
#define TONESCALE_PROPOSAL_HPP

#include "tonescale/raster.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace tonescale {

struct AnchorPoint {
  double y = 0.0;
  double x = 0.0;
};

/// Regular I x J grid of anchors on a source raster. Anchor (i, j) sits at the
/// centre of its cell: ((i + 0.5) H / I, (j + 0.5) W / J) in (y, x).
struct AnchorGrid {
  Index rows = 1;
  Index cols = 1;
  Extent source;

  AnchorPoint center(Index i, Index j) const {
    return {(static_cast<double>(i) + 0.5) * static_cast<double>(source.height) / static_cast<double>(rows),
            (static_cast<double>(j) + 0.5) * static_cast<double>(source.width) / static_cast<double>(cols)};
  }
};

AnchorGrid make_anchor_grid(Extent source, Index rows, Index cols);

struct TileRect {
  Index y0 = 0;
  Index x0 = 0;
  Index height = 0;
  Index width = 0;
};

/// Partition of the target into rows x cols tiles. Boundaries fall at
/// floor(i * target_h / rows), so any remainder lands in the last tile.
/// Tiles are listed row-major.
std::vector<TileRect> tile_bounds(Index target_h, Index target_w, Index rows, Index cols);

/// Per target pixel: the source pixel it copies, or invalid when the crop
/// reaches past the source edge.
struct ProposalIndexMap {
  Plane<Index> source_y;
  Plane<Index> source_x;
  Plane<std::uint8_t> validity;
};

/// Tile (i, j) of size h x w copies source rows starting at
/// round(center_y - h / 2) and columns at round(center_x - w / 2), verbatim.
ProposalIndexMap proposal_index_map(const AnchorGrid& grid, Extent target);

template <typename Scalar>
struct Proposal {
  AnchorGrid grid;
  FeatureGrid<Scalar> data;
  Plane<std::uint8_t> validity;  // 0 on padded pixels
};

template <typename Scalar>
struct ProposalSet {
  double k = 1.0;
  std::vector<Proposal<Scalar>> levels;

  Extent target() const { return levels.empty() ? Extent{} : levels.front().data.extent(); }
};

/// Assembles one target-resolution proposal from anchor-centred source crops.
/// Padded pixels take `pad[c]` on channel c (zero when `pad` is empty).
template <typename Scalar>
Proposal<Scalar> sample_proposal(const FeatureGrid<Scalar>& source, const AnchorGrid& grid, double k,
                                 std::span<const Scalar> pad = {}) {
  if (grid.source != source.extent()) throw std::invalid_argument("sample_proposal: anchor grid does not match source");
  if (!pad.empty() && static_cast<Index>(pad.size()) != source.channels())
    throw std::invalid_argument("sample_proposal: one padding value per channel required");
  const Extent target = scaled_extent(source.extent(), k);
  const ProposalIndexMap map = proposal_index_map(grid, target);

  std::vector<Plane<Scalar>> planes;
  planes.reserve(static_cast<std::size_t>(source.channels()));
  for (Index c = 0; c < source.channels(); ++c) {
    const auto& src = source.channel(c);
    const Scalar fill = pad.empty() ? Scalar(0) : pad[static_cast<std::size_t>(c)];
    Plane<Scalar> out(target.height, target.width);
    for (Index y = 0; y < target.height; ++y)
      for (Index x = 0; x < target.width; ++x)
        out(y, x) = map.validity(y, x) ? src(map.source_y(y, x), map.source_x(y, x)) : fill;
    planes.push_back(std::move(out));
  }
  return {grid, FeatureGrid<Scalar>(std::move(planes)), map.validity};
}

/// One proposal per entry of `levels`, level n using an n x n anchor grid.
template <typename Scalar>
ProposalSet<Scalar> sample_proposal_set(const FeatureGrid<Scalar>& source, std::span<const Index> levels, double k,
                                        std::span<const Scalar> pad = {}) {
  if (levels.empty()) throw std::invalid_argument("sample_proposal_set: no levels");
  ProposalSet<Scalar> set;
  set.k = k;
  for (const Index n : levels) set.levels.push_back(sample_proposal(source, make_anchor_grid(source.extent(), n, n), k, pad));
  return set;
}

struct LabelProposal {
  LabelMap labels;  // padded pixels carry kNoTone
  Plane<std::uint8_t> validity;
};

LabelProposal sample_label_proposal(const LabelMap& labels, const AnchorGrid& grid, double k);

inline const std::vector<Index>& default_levels() {
  static const std::vector<Index> levels{1, 2, 4, 8};
  return levels;
}

}  // namespace tonescale

#endif  // TONESCALE_PROPOSAL_HPP

#include "tonescale/proposal.hpp"

#include <cmath>

namespace tonescale {

AnchorGrid make_anchor_grid(Extent source, Index rows, Index cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("anchor grid needs at least one row and column");
  if (source.height < 1 || source.width < 1) throw std::invalid_argument("anchor grid source must be non-empty");
  return {rows, cols, source};
}

std::vector<TileRect> tile_bounds(Index target_h, Index target_w, Index rows, Index cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("tile_bounds: grid must be at least 1x1");
  if (rows > target_h || cols > target_w) throw std::invalid_argument("tile_bounds: anchor grid larger than target");
  std::vector<TileRect> tiles;
  tiles.reserve(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows; ++i) {
    const Index y0 = i * target_h / rows;
    const Index y1 = (i + 1) * target_h / rows;
    for (Index j = 0; j < cols; ++j) {
      const Index x0 = j * target_w / cols;
      const Index x1 = (j + 1) * target_w / cols;
      tiles.push_back({y0, x0, y1 - y0, x1 - x0});
    }
  }
  return tiles;
}

ProposalIndexMap proposal_index_map(const AnchorGrid& grid, Extent target) {
  const auto tiles = tile_bounds(target.height, target.width, grid.rows, grid.cols);
  ProposalIndexMap map{Plane<Index>(target.height, target.width), Plane<Index>(target.height, target.width),
                       Plane<std::uint8_t>(target.height, target.width)};
  for (Index i = 0; i < grid.rows; ++i) {
    for (Index j = 0; j < grid.cols; ++j) {
      const TileRect& t = tiles[static_cast<std::size_t>(i * grid.cols + j)];
      const AnchorPoint c = grid.center(i, j);
      const auto sy0 = static_cast<Index>(std::floor(c.y - static_cast<double>(t.height) / 2.0 + 0.5));
      const auto sx0 = static_cast<Index>(std::floor(c.x - static_cast<double>(t.width) / 2.0 + 0.5));
      for (Index dy = 0; dy < t.height; ++dy) {
        for (Index dx = 0; dx < t.width; ++dx) {
          const Index sy = sy0 + dy;
          const Index sx = sx0 + dx;
          const bool inside = sy >= 0 && sx >= 0 && sy < grid.source.height && sx < grid.source.width;
          map.source_y(t.y0 + dy, t.x0 + dx) = sy;
          map.source_x(t.y0 + dy, t.x0 + dx) = sx;
          map.validity(t.y0 + dy, t.x0 + dx) = inside ? 1 : 0;
        }
      }
    }
  }
  return map;
}

LabelProposal sample_label_proposal(const LabelMap& labels, const AnchorGrid& grid, double k) {
  if (grid.source != labels.extent()) throw std::invalid_argument("sample_label_proposal: anchor grid does not match source");
  const Extent target = scaled_extent(labels.extent(), k);
  const ProposalIndexMap map = proposal_index_map(grid, target);
  Plane<Label> out(target.height, target.width);
  for (Index y = 0; y < target.height; ++y)
    for (Index x = 0; x < target.width; ++x)
      out(y, x) = map.validity(y, x) ? labels(map.source_y(y, x), map.source_x(y, x)) : kNoTone;
  return {LabelMap(std::move(out)), map.validity};
}

}  // namespace tonescale

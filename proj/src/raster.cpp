#include "tonescale/raster.hpp"

#include <algorithm>

namespace tonescale {

std::vector<Label> LabelMap::distinct() const {
  std::vector<Label> out(labels_.data(), labels_.data() + labels_.size());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tonescale

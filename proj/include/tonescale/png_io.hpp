#ifndef TONESCALE_PNG_IO_HPP
#define TONESCALE_PNG_IO_HPP

#include "tonescale/raster.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace tonescale {

/// Missing, unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bitonal images and line maps are 8-bit grayscale, binarized at 128 on load
// (value >= 128 is paper). Label maps are 8-bit indexed; palette indices are
// the label ids. Feature grids are one 16-bit grayscale PNG per channel plus a
// JSON sidecar holding each channel's value range.

BitonalImage load_bitonal(const std::filesystem::path& path);
LineMap load_lines(const std::filesystem::path& path);
LabelMap load_labels(const std::filesystem::path& path);

void save_png(const BitonalImage& image, const std::filesystem::path& path);
void save_png(const LineMap& lines, const std::filesystem::path& path);
void save_png(const LabelMap& labels, const std::filesystem::path& path);

/// Writes `<stem>.json` and `<stem>_c<N>.png` next to it. `sidecar` is the
/// JSON path; its stem names the channel files.
void save_features(const Features& grid, const std::filesystem::path& sidecar);
Features load_features(const std::filesystem::path& sidecar);

}  // namespace tonescale

#endif  // TONESCALE_PNG_IO_HPP

#ifndef TONESCALE_CORPUS_HPP
#define TONESCALE_CORPUS_HPP

#include "tonescale/raster.hpp"
#include "tonescale/tone.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tonescale {

/// One synthetic manga page with its ground truth.
struct CorpusItem {
  std::string id;
  std::uint64_t seed = 0;
  BitonalImage manga;
  LabelMap labels;
  LineMap lines;
  ToneAssignment assignment;
  std::map<Label, std::size_t> table_index;  // region label -> tone_table() row
};

inline constexpr Index kDefaultCanvas = 512;
inline constexpr Index kMinCorpusRegions = 3;
inline constexpr Index kMaxCorpusRegions = 8;

/// Deterministic item: 3 to 8 Voronoi regions, each laid with a distinct
/// table tone. Everything derives from `seed`.
CorpusItem make_corpus_item(std::uint64_t seed, Index canvas = kDefaultCanvas);

/// In-memory corpus; item i uses seed + i.
std::vector<CorpusItem> make_corpus(Index count, std::uint64_t seed, Index canvas = kDefaultCanvas);

/// Writes NNNN_manga.png, NNNN_labels.png, NNNN_lines.png per item and
/// manifest.json (tone table, per-item seeds and assignments).
void build_corpus(Index count, Index canvas, std::uint64_t seed, const std::filesystem::path& out_dir);

/// Reads a directory written by build_corpus.
std::vector<CorpusItem> load_corpus(const std::filesystem::path& dir);

}  // namespace tonescale

#endif  // TONESCALE_CORPUS_HPP

#ifndef TONESCALE_PIPELINE_HPP
#define TONESCALE_PIPELINE_HPP

#include "tonescale/attention.hpp"
#include "tonescale/metrics.hpp"
#include "tonescale/proposal.hpp"
#include "tonescale/raster.hpp"
#include "tonescale/rpsm.hpp"
#include "tonescale/tone.hpp"

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace tonescale {

enum class PhiMode { label, pattern };

PhiMode phi_mode_from_string(std::string_view name);
std::string_view to_string(PhiMode mode);

struct RetargetConfig {
  double scale = 1.0;
  std::vector<Index> levels = default_levels();
  PhiMode phi_mode = PhiMode::label;
  PhiIndex phi_index = PhiIndex::current;
  Index ti_window = 11;
  LossWeights weights;
  double binarize_threshold = 0.5;
  bool dump_traces = false;
};

/// Throws std::invalid_argument for a scale outside [0.25, 2], empty or
/// unsorted levels, or a non-positive window.
void validate(const RetargetConfig& config);

/// Overrides the fields present in `j`; unknown keys are rejected.
void apply_config_json(RetargetConfig& config, const nlohmann::json& j);
nlohmann::json config_to_json(const RetargetConfig& config);

/// Index of the pixel channel in the source and backbone features; the
/// descriptor channels follow it.
inline constexpr Index kPixelChannel = 0;

struct RetargetResult {
  BitonalImage output;
  FusionTrace<double> trace;
  LabelMap labels;       // source labels resampled to the target
  LineMap lines;         // resampled structural lines
  Features descriptors;  // resampled descriptor map
  ProposalSet<double> proposals;
};

/// Rescales `manga` by config.scale, keeping screentones at their source pixel
/// scale by fusing anchor-sampled proposals of the source. Labels are
/// required in label mode and used for descriptors when given; without them
/// descriptors come from sliding windows.
RetargetResult retarget(const BitonalImage& manga, const LineMap& lines, const std::optional<LabelMap>& labels,
                        const RetargetConfig& config);

/// Bilinear resampling followed by thresholding at 0.5.
BitonalImage retarget_bilinear(const BitonalImage& manga, double k);

/// Ground truth at the target size: the assigned tones laid on the resampled
/// labels under the resampled lines.
BitonalImage compose_ground_truth(const LabelMap& target_labels, const LineMap& target_lines,
                                  const ToneAssignment& assignment);

/// Target labels with line pixels cleared, the regions that metrics score.
LabelMap scored_regions(const LabelMap& target_labels, const LineMap& target_lines);

/// Writes attention, normalised attention and confidence maps per level.
void dump_trace(const FusionTrace<double>& trace, const std::filesystem::path& dir);

}  // namespace tonescale

#endif  // TONESCALE_PIPELINE_HPP

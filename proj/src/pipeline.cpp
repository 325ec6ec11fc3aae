#include "tonescale/pipeline.hpp"

#include "tonescale/descriptor.hpp"
#include "tonescale/png_io.hpp"
#include "tonescale/resample.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace tonescale {

PhiMode phi_mode_from_string(std::string_view name) {
  if (name == "label") return PhiMode::label;
  if (name == "pattern") return PhiMode::pattern;
  throw std::invalid_argument("unknown phi mode '" + std::string(name) + "'");
}

std::string_view to_string(PhiMode mode) { return mode == PhiMode::label ? "label" : "pattern"; }

void validate(const RetargetConfig& config) {
  if (!(config.scale >= kMinSemanticScale && config.scale <= kMaxSemanticScale))
    throw std::invalid_argument("scale must lie in [0.25, 2]");
  if (config.levels.empty()) throw std::invalid_argument("at least one level is required");
  if (!std::is_sorted(config.levels.begin(), config.levels.end()) || config.levels.front() < 1)
    throw std::invalid_argument("levels must be positive and sorted");
  if (config.ti_window < 1) throw std::invalid_argument("ti_window must be positive");
}

void apply_config_json(RetargetConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "scale") {
      config.scale = value.get<double>();
    } else if (key == "levels") {
      config.levels = value.get<std::vector<Index>>();
    } else if (key == "phi_mode") {
      config.phi_mode = phi_mode_from_string(value.get<std::string>());
    } else if (key == "phi_index") {
      config.phi_index = phi_index_from_string(value.get<std::string>());
    } else if (key == "ti_window") {
      config.ti_window = value.get<Index>();
    } else if (key == "binarize_threshold") {
      config.binarize_threshold = value.get<double>();
    } else if (key == "dump_traces") {
      config.dump_traces = value.get<bool>();
    } else if (key == "weights") {
      for (const auto& [w, v] : value.items()) {
        if (w == "sis") config.weights.sis = v.get<double>();
        else if (w == "scr") config.weights.scr = v.get<double>();
        else if (w == "atn") config.weights.atn = v.get<double>();
        else if (w == "adv") config.weights.adv = v.get<double>();
        else throw std::invalid_argument("unknown weight '" + w + "'");
      }
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

nlohmann::json config_to_json(const RetargetConfig& c) {
  return {{"scale", c.scale},
          {"levels", c.levels},
          {"phi_mode", std::string(to_string(c.phi_mode))},
          {"phi_index", std::string(to_string(c.phi_index))},
          {"ti_window", c.ti_window},
          {"binarize_threshold", c.binarize_threshold},
          {"dump_traces", c.dump_traces},
          {"weights", {{"sis", c.weights.sis}, {"scr", c.weights.scr}, {"atn", c.weights.atn}, {"adv", c.weights.adv}}}};
}

RetargetResult retarget(const BitonalImage& manga, const LineMap& lines, const std::optional<LabelMap>& labels,
                        const RetargetConfig& config) {
  validate(config);
  if (manga.extent() != lines.extent()) throw std::invalid_argument("manga and line map differ in size");
  if (labels && labels->extent() != manga.extent()) throw std::invalid_argument("manga and label map differ in size");
  if (config.phi_mode == PhiMode::label && !labels) throw std::invalid_argument("label mode requires a label map");
  const double k = config.scale;

  const Features source_desc = labels ? build_descriptor_map(manga, *labels) : build_descriptor_map_windowed(manga);
  auto [target_lines, target_desc] = resample_semantics(lines, source_desc, k);
  const Extent target = target_desc.extent();
  LabelMap target_labels = labels ? resample_nearest(*labels, k) : LabelMap(target.height, target.width);

  const Features pixels = to_features<double>(manga);
  const Features source = concat<double>({pixels, source_desc});
  const std::array<double, 5> pad{1.0, 0.0, 0.0, 0.0, 0.0};
  ProposalSet<double> proposals = sample_proposal_set<double>(source, config.levels, k, pad);
  const Features backbone = concat<double>({to_features<double>(resample_nearest(manga, k)), target_desc});

  std::vector<LabelProposal> label_proposals;
  if (config.phi_mode == PhiMode::label)
    for (const auto& p : proposals.levels) label_proposals.push_back(sample_label_proposal(*labels, p.grid, k));
  const Plane<std::uint8_t> all_valid = Plane<std::uint8_t>::Ones(target.height, target.width);

  const AttentionFn<double> phi = [&](std::size_t index, const Features&) -> Plane<double> {
    if (config.phi_mode == PhiMode::label) {
      if (index == 0) return phi_label(LabelProposal{target_labels, all_valid}, target_labels);
      return phi_label(label_proposals[index - 1], target_labels);
    }
    if (index == 0) return phi_pattern(backbone, all_valid, target_desc, 1);
    const auto& p = proposals.levels[index - 1];
    return phi_pattern(p.data, p.validity, target_desc, 1);
  };

  FusionTrace<double> trace = rpsm_fuse<double>(backbone, proposals, phi, config.phi_index);
  BitonalImage output = binarize(trace.fused, kPixelChannel, config.binarize_threshold);
  for (Index y = 0; y < target.height; ++y)
    for (Index x = 0; x < target.width; ++x)
      if (target_lines.is_ink(y, x)) output.set(y, x, 0);

  return {std::move(output), std::move(trace), std::move(target_labels), std::move(target_lines), std::move(target_desc),
          std::move(proposals)};
}

BitonalImage retarget_bilinear(const BitonalImage& manga, double k) {
  const Plane<double> v = resample_bilinear(Plane<double>(manga.pixels().cast<double>()), scaled_extent(manga.extent(), k));
  return BitonalImage(Plane<std::uint8_t>((v >= 0.5).cast<std::uint8_t>()));
}

BitonalImage compose_ground_truth(const LabelMap& target_labels, const LineMap& target_lines,
                                  const ToneAssignment& assignment) {
  return lay_screentones(target_labels, target_lines, assignment);
}

LabelMap scored_regions(const LabelMap& target_labels, const LineMap& target_lines) {
  if (target_labels.extent() != target_lines.extent()) throw std::invalid_argument("scored_regions: size mismatch");
  return LabelMap(Plane<Label>((target_lines.pixels() == 0).select(Plane<Label>::Constant(target_labels.height(), target_labels.width(), kNoTone), target_labels.labels())));
}

void dump_trace(const FusionTrace<double>& trace, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto save = [&](const Plane<double>& m, const std::string& name) {
    save_features(Features(std::vector<Plane<double>>{m}), dir / (name + ".json"));
  };
  for (std::size_t l = 0; l < trace.attention.size(); ++l) {
    const std::string n = std::to_string(l + 1);
    save(trace.attention[l], "attention_l" + n);
    save(trace.normalized_attention[l], "attention_norm_l" + n);
    save(trace.confidence[l], "confidence_l" + n);
  }
}

}  // namespace tonescale

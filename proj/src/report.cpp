#include "tonescale/report.hpp"

#include "tonescale/png_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace tonescale {

PairResult evaluate_item(const CorpusItem& item, double scale, const RetargetConfig& config,
                         const std::optional<std::filesystem::path>& mask_dir) {
  RetargetConfig c = config;
  c.scale = scale;
  const RetargetResult r = retarget(item.manga, item.lines, item.labels, c);
  const BitonalImage gt = compose_ground_truth(r.labels, r.lines, item.assignment);
  const LabelMap scored = scored_regions(r.labels, r.lines);
  const std::vector<AttentionMap> masks = gt_attention_masks(item.labels, scale, c.levels);

  const EvaluationInput pipeline_in{r.output, gt, scored, item.assignment, r.descriptors, r.trace.attention, masks};
  const BitonalImage baseline = retarget_bilinear(item.manga, scale);
  const EvaluationInput baseline_in{baseline, gt, scored, item.assignment, r.descriptors};

  if (mask_dir) {
    char tag[64];
    std::snprintf(tag, sizeof tag, "%s_k%.3f", item.id.c_str(), scale);
    for (std::size_t l = 0; l < masks.size(); ++l) {
      std::filesystem::create_directories(*mask_dir);
      const Plane<std::uint8_t> px = (masks[l] > 0.5).cast<std::uint8_t>();
      save_png(BitonalImage(px), *mask_dir / (std::string(tag) + "_l" + std::to_string(c.levels[l]) + ".png"));
    }
  }
  return {item.id, scale, evaluate(pipeline_in, c.weights, c.ti_window), evaluate(baseline_in, c.weights, c.ti_window)};
}

EvalReport evaluate_corpus(const std::vector<CorpusItem>& items, const EvalOptions& options) {
  if (items.empty()) throw std::invalid_argument("corpus is empty");
  if (options.scales.empty()) throw std::invalid_argument("no scales to evaluate");
  EvalReport report{options.config, options.scales, {}};
  for (const auto& item : items)
    for (const double k : options.scales) {
      report.pairs.push_back(evaluate_item(item, k, options.config, options.mask_dir));
      if (options.on_pair) options.on_pair(report.pairs.back());
    }
  return report;
}

PeriodSummary summarize_periods(const std::vector<PairResult>& pairs, double scale) {
  PeriodSummary s;
  for (const auto& p : pairs) {
    if (p.scale != scale) continue;
    for (const auto& c : p.pipeline.periods) {
      if (c.skipped) continue;
      ++s.pipeline_regions;
      if (c.error <= 1.0) ++s.pipeline_within_1px;
    }
    for (const auto& c : p.baseline.periods) {
      if (c.skipped || c.expected < 6.0) continue;
      ++s.baseline_regions;
      if (c.error >= 2.0) ++s.baseline_off_2px;
    }
  }
  return s;
}

nlohmann::json metric_report_to_json(const MetricReport& r) {
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& g : r.ti.regions)
    regions.push_back({{"label", g.label}, {"pixels", g.pixels}, {"loss", g.loss}, {"offset", {g.offset.dy, g.offset.dx}}});
  nlohmann::json periods = nlohmann::json::array();
  for (const auto& p : r.periods) {
    nlohmann::json e{{"label", p.label}, {"skipped", p.skipped}};
    if (p.skipped) e["reason"] = p.reason;
    else e.update({{"expected", p.expected}, {"measured", p.measured}, {"error", p.error}});
    periods.push_back(std::move(e));
  }
  nlohmann::json j{{"l_sis", r.ti.total},
                   {"ti_regions", std::move(regions)},
                   {"l_scr", r.l_scr},
                   {"l_atn", nullptr},
                   {"psnr", r.psnr},
                   {"ssim", r.ssim},
                   {"aligned_psnr", r.aligned_psnr},
                   {"aligned_ssim", r.aligned_ssim},
                   {"periods", std::move(periods)},
                   {"combined", r.combined}};
  if (r.l_atn) j["l_atn"] = *r.l_atn;
  return j;
}

nlohmann::json eval_report_to_json(const EvalReport& report) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"item", p.item},
                     {"scale", p.scale},
                     {"pipeline", metric_report_to_json(p.pipeline)},
                     {"baseline", metric_report_to_json(p.baseline)},
                     {"delta",
                      {{"psnr", p.pipeline.psnr - p.baseline.psnr},
                       {"ssim", p.pipeline.ssim - p.baseline.ssim},
                       {"aligned_psnr", p.pipeline.aligned_psnr - p.baseline.aligned_psnr},
                       {"aligned_ssim", p.pipeline.aligned_ssim - p.baseline.aligned_ssim}}}});
  }
  nlohmann::json summary = nlohmann::json::array();
  for (const double k : report.scales) {
    Index n = 0, wins = 0;
    for (const auto& p : report.pairs)
      if (p.scale == k) {
        ++n;
        if (p.pipeline.aligned_psnr >= p.baseline.aligned_psnr) ++wins;
      }
    const PeriodSummary s = summarize_periods(report.pairs, k);
    summary.push_back({{"scale", k},
                       {"pairs", n},
                       {"aligned_psnr_wins", wins},
                       {"pipeline_period_regions", s.pipeline_regions},
                       {"pipeline_period_within_1px", s.pipeline_within_1px},
                       {"baseline_period_regions", s.baseline_regions},
                       {"baseline_period_off_2px", s.baseline_off_2px}});
  }
  return {{"format", "tonescale-eval"},
          {"version", 1},
          {"config", config_to_json(report.config)},
          {"scales", report.scales},
          {"pairs", std::move(pairs)},
          {"summary", std::move(summary)}};
}

void write_csv(const EvalReport& report, std::ostream& out) {
  out << "item,scale,method,l_sis,l_scr,l_atn,psnr,ssim,aligned_psnr,aligned_ssim\n";
  const auto row = [&](const PairResult& p, const char* method, const MetricReport& r) {
    out << p.item << ',' << p.scale << ',' << method << ',' << r.ti.total << ',' << r.l_scr << ',';
    if (r.l_atn) out << *r.l_atn;
    out << ',' << r.psnr << ',' << r.ssim << ',' << r.aligned_psnr << ',' << r.aligned_ssim << '\n';
  };
  for (const auto& p : report.pairs) {
    row(p, "pipeline", p.pipeline);
    row(p, "baseline", p.baseline);
  }
}

}  // namespace tonescale

#ifndef TONESCALE_REPORT_HPP
#define TONESCALE_REPORT_HPP

#include "tonescale/corpus.hpp"
#include "tonescale/metrics.hpp"
#include "tonescale/pipeline.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace tonescale {

struct PairResult {
  std::string item;
  double scale = 1.0;
  MetricReport pipeline;
  MetricReport baseline;  // bilinear resampling then thresholding
};

struct PeriodSummary {
  Index pipeline_regions = 0;  // measured periodic regions
  Index pipeline_within_1px = 0;
  Index baseline_regions = 0;  // measured regions with a source period of at least 6
  Index baseline_off_2px = 0;
};

struct EvalOptions {
  std::vector<double> scales{0.5, 0.75, 1.0, 1.25};
  RetargetConfig config;  // its scale is replaced per run
  std::optional<std::filesystem::path> mask_dir;
  std::function<void(const PairResult&)> on_pair;
};

struct EvalReport {
  RetargetConfig config;
  std::vector<double> scales;
  std::vector<PairResult> pairs;  // item-major, scales in the given order
};

/// Runs the pipeline and the bilinear baseline on one item at one scale and
/// scores both against the composed ground truth.
PairResult evaluate_item(const CorpusItem& item, double scale, const RetargetConfig& config,
                         const std::optional<std::filesystem::path>& mask_dir = std::nullopt);

/// Throws std::invalid_argument for an empty corpus or scale list.
EvalReport evaluate_corpus(const std::vector<CorpusItem>& items, const EvalOptions& options);

PeriodSummary summarize_periods(const std::vector<PairResult>& pairs, double scale);

nlohmann::json metric_report_to_json(const MetricReport& report);
nlohmann::json eval_report_to_json(const EvalReport& report);

/// One row per (item, scale) with the headline metrics of both methods.
void write_csv(const EvalReport& report, std::ostream& out);

}  // namespace tonescale

#endif  // TONESCALE_REPORT_HPP

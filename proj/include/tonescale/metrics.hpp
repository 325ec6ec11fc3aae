#ifndef TONESCALE_METRICS_HPP
#define TONESCALE_METRICS_HPP

#include "tonescale/attention.hpp"
#include "tonescale/raster.hpp"
#include "tonescale/tone.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tonescale {

/// Integer translation. Shifting a template by (dy, dx) samples it at (y + dy, x + dx).
struct Offset {
  Index dy = 0;
  Index dx = 0;
  bool operator==(const Offset&) const = default;
};

/// How a half-resolution offset is carried back to full resolution.
enum class HalfScaleOffset { doubled, literal };

struct TiLossOptions {
  Index window = 11;  // offsets range over [-window / 2, window / 2]^2
  bool multiscale = false;
  HalfScaleOffset half_scale = HalfScaleOffset::doubled;
};

struct RegionLoss {
  Label label = kNoTone;
  Index pixels = 0;
  double loss = 0.0;  // masked RMSE against the best-shifted template
  Offset offset;
};

struct TiLoss {
  double total = 0.0;
  std::vector<RegionLoss> regions;  // ascending label order
};

/// Translation-invariant screentone loss. Every non-zero label of `labels`
/// must be in `assignment`.
TiLoss ti_screentone_loss(const BitonalImage& gen, const LabelMap& labels, const ToneAssignment& assignment,
                          const TiLossOptions& options = {});

/// Mean over non-zero-label pixels of the squared descriptor distance, summed
/// over channels, between the descriptor map of `gen` and `gt_descriptors`.
double svae_surrogate_loss(const BitonalImage& gen, const LabelMap& labels, const Features& gt_descriptors);

/// Sum over levels of mean | |M - 0.5| - 0.5 |. Throws std::domain_error for
/// values outside [0, 1].
double attention_loss_unsup(std::span<const AttentionMap> maps);

/// Sum over levels of the root-mean-square difference between M and its mask.
double attention_loss_sup(std::span<const AttentionMap> maps, std::span<const AttentionMap> masks);

/// Per level n: 1 where the nearest-resampled label equals the label copied
/// by the n x n anchor proposal, the copy is valid and the label is non-zero.
std::vector<AttentionMap> gt_attention_masks(const LabelMap& labels, double k, std::span<const Index> levels);

inline constexpr double kPsnrCap = 99.0;

/// PSNR in dB on images scaled to {0, 255}; identical images give kPsnrCap.
double psnr(const BitonalImage& a, const BitonalImage& b);

/// Mean SSIM over all fully contained 11 x 11 Gaussian windows (sigma 1.5),
/// on images scaled to {0, 255}. Images smaller than the window use one
/// window covering the whole image.
double ssim(const BitonalImage& a, const BitonalImage& b);

struct Alignment {
  BitonalImage aligned_gt;
  std::map<Label, Offset> offsets;
};

/// Replaces each labelled region of `gt` by its template shifted to minimise
/// the mismatch with `gen` over offsets in the window. Offset (0, 0) keeps the
/// original `gt` pixels, so the result never matches worse than `gt`.
Alignment align_ground_truth(const BitonalImage& gen, const BitonalImage& gt, const LabelMap& labels,
                             const ToneAssignment& assignment, Index window = 11);

struct AlignedScores {
  double psnr = 0.0;
  double ssim = 0.0;
};

/// PSNR and SSIM against the aligned ground truth. SSIM reuses the offsets
/// found for PSNR and keeps the better of the aligned and unaligned value.
AlignedScores aligned_metrics(const BitonalImage& gen, const BitonalImage& gt, const LabelMap& labels,
                              const ToneAssignment& assignment, Index window = 11);

struct PeriodCheck {
  Label label = kNoTone;
  bool skipped = false;
  std::string reason;     // why a region was skipped
  double expected = 0.0;  // nominal tone period
  double measured = 0.0;  // 0 when the output region reads as aperiodic
  double error = 0.0;     // |measured - expected|, or expected when aperiodic
};

/// Period of every labelled region of `gen` against its assigned tone. Noise
/// tones and regions too small to measure are skipped.
std::vector<PeriodCheck> period_preservation(const BitonalImage& gen, const LabelMap& labels,
                                             const ToneAssignment& assignment);

struct LossWeights {
  double sis = 10.0;
  double scr = 100.0;
  double atn = 5.0;
  double adv = 1.0;  // kept for completeness; the adversarial term is always 0
};

struct MetricReport {
  TiLoss ti;
  double l_scr = 0.0;
  std::optional<double> l_atn;
  double psnr = 0.0;
  double ssim = 0.0;
  double aligned_psnr = 0.0;
  double aligned_ssim = 0.0;
  std::vector<PeriodCheck> periods;
  double combined = 0.0;  // weighted sum of the loss terms

  bool all_finite() const;
};

struct EvaluationInput {
  const BitonalImage& gen;
  const BitonalImage& gt;
  const LabelMap& labels;  // regions to score; 0 outside them
  const ToneAssignment& assignment;
  const Features& gt_descriptors;
  std::span<const AttentionMap> attention = {};
  std::span<const AttentionMap> attention_masks = {};
};

MetricReport evaluate(const EvaluationInput& input, const LossWeights& weights = {}, Index window = 11);

}  // namespace tonescale

#endif  // TONESCALE_METRICS_HPP

#include "tonescale/metrics.hpp"

#include "tonescale/descriptor.hpp"
#include "tonescale/proposal.hpp"
#include "tonescale/resample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tonescale {

namespace {

struct Region {
  Label label = kNoTone;
  Index y0 = 0, x0 = 0, height = 0, width = 0;
  Plane<bool> mask;  // bounding-box sized
  Index count = 0;
};

std::vector<Region> labelled_regions(const LabelMap& labels) {
  struct Box {
    Index y0, x0, y1, x1;
  };
  std::map<Label, Box> boxes;
  for (Index y = 0; y < labels.height(); ++y)
    for (Index x = 0; x < labels.width(); ++x) {
      const Label l = labels(y, x);
      if (l == kNoTone) continue;
      auto [it, fresh] = boxes.try_emplace(l, Box{y, x, y, x});
      if (!fresh) {
        Box& b = it->second;
        b.y0 = std::min(b.y0, y);
        b.x0 = std::min(b.x0, x);
        b.y1 = std::max(b.y1, y);
        b.x1 = std::max(b.x1, x);
      }
    }
  std::vector<Region> out;
  for (const auto& [l, b] : boxes) {
    Region r{l, b.y0, b.x0, b.y1 - b.y0 + 1, b.x1 - b.x0 + 1, {}, 0};
    r.mask = labels.labels().block(r.y0, r.x0, r.height, r.width) == l;
    r.count = static_cast<Index>(r.mask.count());
    out.push_back(std::move(r));
  }
  return out;
}

const ToneSpec& spec_for(const ToneAssignment& assignment, Label l) {
  const auto it = assignment.find(l);
  if (it == assignment.end()) throw std::invalid_argument("no tone assigned to label " + std::to_string(l));
  return it->second;
}

// Offsets in [-r, r]^2, nearest to the origin first.
std::vector<Offset> search_order(Index r) {
  std::vector<Offset> offsets;
  for (Index dy = -r; dy <= r; ++dy)
    for (Index dx = -r; dx <= r; ++dx) offsets.push_back({dy, dx});
  std::stable_sort(offsets.begin(), offsets.end(), [](const Offset& a, const Offset& b) {
    return a.dy * a.dy + a.dx * a.dx < b.dy * b.dy + b.dx * b.dx;
  });
  return offsets;
}

// Template pixels over the region's box grown by `margin` on every side.
Plane<std::uint8_t> render_around(const Screentone& tone, const Region& r, Index margin) {
  return tone.render(r.x0 - margin, r.y0 - margin, r.height + 2 * margin, r.width + 2 * margin);
}

Index mismatches(const Plane<std::uint8_t>& gen, const Plane<std::uint8_t>& tmpl, Index margin, Offset d,
                 const Region& r) {
  return static_cast<Index>(
      ((gen != tmpl.block(margin + d.dy, margin + d.dx, r.height, r.width)) && r.mask).count());
}

struct SearchResult {
  Offset offset;
  Index mismatches = 0;
};

SearchResult search_single(const Plane<std::uint8_t>& gen, const Plane<std::uint8_t>& tmpl, Index radius,
                           const Region& r) {
  SearchResult best{{}, std::numeric_limits<Index>::max()};
  for (const Offset& d : search_order(radius)) {
    const Index m = mismatches(gen, tmpl, radius, d, r);
    if (m < best.mismatches) best = {d, m};
    if (m == 0) break;
  }
  return best;
}

// 2 x 2 box average of the ink indicator, anchored at the top-left pixel.
Plane<double> half_scale_ink(const Plane<std::uint8_t>& px) {
  const Plane<double> ink = (px == 0).cast<double>();
  const Index h = px.rows() / 2, w = px.cols() / 2;
  Plane<double> out(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x)
      out(y, x) = 0.25 * (ink(2 * y, 2 * x) + ink(2 * y, 2 * x + 1) + ink(2 * y + 1, 2 * x) + ink(2 * y + 1, 2 * x + 1));
  return out;
}

Plane<bool> half_scale_mask(const Plane<bool>& m) {
  const Index h = m.rows() / 2, w = m.cols() / 2;
  Plane<bool> out(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x)
      out(y, x) = m(2 * y, 2 * x) && m(2 * y, 2 * x + 1) && m(2 * y + 1, 2 * x) && m(2 * y + 1, 2 * x + 1);
  return out;
}

SearchResult search_multiscale(const Plane<std::uint8_t>& gen, const Screentone& tone, Index radius,
                               HalfScaleOffset mode, const Region& r) {
  const Index margin = 2 * radius;
  const Plane<std::uint8_t> tmpl = render_around(tone, r, margin);
  const Plane<bool> half_mask = half_scale_mask(r.mask);
  if (!half_mask.any()) return search_single(gen, tmpl.block(radius, radius, r.height + margin, r.width + margin), radius, r);

  const Plane<double> g = half_scale_ink(gen);
  const Plane<double> t = half_scale_ink(tmpl);
  const Plane<double> weight = half_mask.cast<double>();
  const Index h = g.rows(), w = g.cols();

  std::vector<std::pair<Offset, double>> costs;
  double lowest = std::numeric_limits<double>::infinity();
  for (const Offset& d : search_order(radius)) {
    const double c = ((g - t.block(radius + d.dy, radius + d.dx, h, w)).square() * weight).sum();
    costs.emplace_back(d, c);
    lowest = std::min(lowest, c);
  }

  // Equal half-scale costs are separated by the full-resolution comparison.
  SearchResult best{{}, std::numeric_limits<Index>::max()};
  for (const auto& [d, c] : costs) {
    if (c > lowest + 1e-9) continue;
    const Offset full = mode == HalfScaleOffset::doubled ? Offset{2 * d.dy, 2 * d.dx} : d;
    const Index m = mismatches(gen, tmpl, margin, full, r);
    if (m < best.mismatches) best = {full, m};
  }
  return best;
}

}  // namespace

TiLoss ti_screentone_loss(const BitonalImage& gen, const LabelMap& labels, const ToneAssignment& assignment,
                          const TiLossOptions& options) {
  if (gen.extent() != labels.extent()) throw std::invalid_argument("ti_screentone_loss: size mismatch");
  if (options.window < 1) throw std::invalid_argument("ti_screentone_loss: window must be positive");
  const Index radius = options.window / 2;
  TiLoss out;
  for (const Region& r : labelled_regions(labels)) {
    const Screentone tone(spec_for(assignment, r.label));
    const Plane<std::uint8_t> g = gen.pixels().block(r.y0, r.x0, r.height, r.width);
    const SearchResult s = options.multiscale
                               ? search_multiscale(g, tone, radius, options.half_scale, r)
                               : search_single(g, render_around(tone, r, radius), radius, r);
    const double loss = std::sqrt(static_cast<double>(s.mismatches) / static_cast<double>(r.count));
    out.regions.push_back({r.label, r.count, loss, s.offset});
    out.total += loss;
  }
  return out;
}

double svae_surrogate_loss(const BitonalImage& gen, const LabelMap& labels, const Features& gt_descriptors) {
  if (gen.extent() != labels.extent() || gen.extent() != gt_descriptors.extent())
    throw std::invalid_argument("svae_surrogate_loss: size mismatch");
  const Features desc = build_descriptor_map(gen, labels);
  if (desc.channels() != gt_descriptors.channels())
    throw std::invalid_argument("svae_surrogate_loss: descriptor channel count differs");
  const Plane<double> inside = (labels.labels() != kNoTone).cast<double>();
  const double count = inside.sum();
  if (count == 0.0) return 0.0;
  double total = 0.0;
  for (Index c = 0; c < desc.channels(); ++c)
    total += ((desc.channel(c) - gt_descriptors.channel(c)).square() * inside).sum();
  return total / count;
}

double attention_loss_unsup(std::span<const AttentionMap> maps) {
  double total = 0.0;
  for (const auto& m : maps) {
    if (m.size() == 0) continue;
    if (!((m >= 0.0) && (m <= 1.0)).all()) throw std::domain_error("attention_loss_unsup: values outside [0, 1]");
    total += ((m - 0.5).abs() - 0.5).abs().mean();
  }
  return total;
}

double attention_loss_sup(std::span<const AttentionMap> maps, std::span<const AttentionMap> masks) {
  if (maps.size() != masks.size()) throw std::invalid_argument("attention_loss_sup: level counts differ");
  double total = 0.0;
  for (std::size_t l = 0; l < maps.size(); ++l) {
    if (maps[l].rows() != masks[l].rows() || maps[l].cols() != masks[l].cols())
      throw std::invalid_argument("attention_loss_sup: map and mask sizes differ");
    if (maps[l].size() == 0) continue;
    total += std::sqrt((maps[l] - masks[l]).square().mean());
  }
  return total;
}

std::vector<AttentionMap> gt_attention_masks(const LabelMap& labels, double k, std::span<const Index> levels) {
  const LabelMap target = resample_nearest(labels, k);
  std::vector<AttentionMap> masks;
  masks.reserve(levels.size());
  for (const Index n : levels)
    masks.push_back(phi_label(sample_label_proposal(labels, make_anchor_grid(labels.extent(), n, n), k), target));
  return masks;
}

double psnr(const BitonalImage& a, const BitonalImage& b) {
  if (a.extent() != b.extent()) throw std::invalid_argument("psnr: size mismatch");
  const double differ = static_cast<double>((a.pixels() != b.pixels()).count()) / static_cast<double>(a.pixels().size());
  if (differ == 0.0) return kPsnrCap;
  // MSE = differ * 255^2, so PSNR = 10 log10(255^2 / MSE).
  return std::min(kPsnrCap, -10.0 * std::log10(differ));
}

namespace {

constexpr Index kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

Plane<double> filter_valid(const Plane<double>& src, const std::vector<double>& kernel) {
  const Index n = static_cast<Index>(kernel.size());
  const Index h = src.rows() - n + 1, w = src.cols() - n + 1;
  Plane<double> rows = Plane<double>::Zero(src.rows(), w);
  for (Index i = 0; i < n; ++i) rows += kernel[static_cast<std::size_t>(i)] * src.middleCols(i, w);
  Plane<double> out = Plane<double>::Zero(h, w);
  for (Index i = 0; i < n; ++i) out += kernel[static_cast<std::size_t>(i)] * rows.middleRows(i, h);
  return out;
}

std::vector<double> gaussian_kernel(Index n, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i - n / 2);
    k[static_cast<std::size_t>(i)] = std::exp(-t * t / (2.0 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace

double ssim(const BitonalImage& a, const BitonalImage& b) {
  if (a.extent() != b.extent()) throw std::invalid_argument("ssim: size mismatch");
  const double c1 = std::pow(0.01 * 255.0, 2), c2 = std::pow(0.03 * 255.0, 2);
  const Plane<double> x = a.pixels().cast<double>() * 255.0;
  const Plane<double> y = b.pixels().cast<double>() * 255.0;

  if (a.height() < kSsimWindow || a.width() < kSsimWindow) {
    const double mx = x.mean(), my = y.mean();
    const double vx = (x - mx).square().mean(), vy = (y - my).square().mean();
    const double cov = ((x - mx) * (y - my)).mean();
    return ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
  }

  const auto k = gaussian_kernel(kSsimWindow, kSsimSigma);
  const Plane<double> mx = filter_valid(x, k), my = filter_valid(y, k);
  const Plane<double> vx = filter_valid(x * x, k) - mx.square();
  const Plane<double> vy = filter_valid(y * y, k) - my.square();
  const Plane<double> cov = filter_valid(x * y, k) - mx * my;
  const Plane<double> map = ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx.square() + my.square() + c1) * (vx + vy + c2));
  return map.mean();
}

Alignment align_ground_truth(const BitonalImage& gen, const BitonalImage& gt, const LabelMap& labels,
                             const ToneAssignment& assignment, Index window) {
  if (gen.extent() != gt.extent() || gen.extent() != labels.extent())
    throw std::invalid_argument("align_ground_truth: size mismatch");
  const Index radius = window / 2;
  Plane<std::uint8_t> aligned = gt.pixels();
  Alignment out{gt, {}};
  for (const Region& r : labelled_regions(labels)) {
    const Screentone tone(spec_for(assignment, r.label));
    const Plane<std::uint8_t> g = gen.pixels().block(r.y0, r.x0, r.height, r.width);
    const Plane<std::uint8_t> original = gt.pixels().block(r.y0, r.x0, r.height, r.width);
    const Plane<std::uint8_t> tmpl = render_around(tone, r, radius);

    SearchResult best{{}, static_cast<Index>(((g != original) && r.mask).count())};
    for (const Offset& d : search_order(radius)) {
      if (best.mismatches == 0) break;
      if (d == Offset{}) continue;
      const Index m = mismatches(g, tmpl, radius, d, r);
      if (m < best.mismatches) best = {d, m};
    }
    out.offsets[r.label] = best.offset;
    if (best.offset == Offset{}) continue;
    auto dst = aligned.block(r.y0, r.x0, r.height, r.width);
    dst = r.mask.select(tmpl.block(radius + best.offset.dy, radius + best.offset.dx, r.height, r.width), dst);
  }
  out.aligned_gt = BitonalImage(std::move(aligned));
  return out;
}

AlignedScores aligned_metrics(const BitonalImage& gen, const BitonalImage& gt, const LabelMap& labels,
                              const ToneAssignment& assignment, Index window) {
  const Alignment a = align_ground_truth(gen, gt, labels, assignment, window);
  return {psnr(gen, a.aligned_gt), std::max(ssim(gen, a.aligned_gt), ssim(gen, gt))};
}

std::vector<PeriodCheck> period_preservation(const BitonalImage& gen, const LabelMap& labels,
                                             const ToneAssignment& assignment) {
  if (gen.extent() != labels.extent()) throw std::invalid_argument("period_preservation: size mismatch");
  std::vector<PeriodCheck> out;
  for (const Label l : labels.distinct()) {
    if (l == kNoTone) continue;
    const ToneSpec& spec = spec_for(assignment, l);
    PeriodCheck c;
    c.label = l;
    if (!spec.periodic()) {
      c.skipped = true;
      c.reason = "aperiodic tone";
      out.push_back(c);
      continue;
    }
    c.expected = spec.kind == ToneKind::stripes ? spec.period_x : std::min(spec.period_x, spec.period_y);
    const PeriodEstimate e = estimate_period(gen, labels.labels() == l);
    if (!e.determinate) {
      c.skipped = true;
      c.reason = "region too small";
      out.push_back(c);
      continue;
    }
    c.measured = e.periodic ? e.period_x : 0.0;
    c.error = e.periodic ? std::abs(e.period_x - c.expected) : c.expected;
    out.push_back(c);
  }
  return out;
}

bool MetricReport::all_finite() const {
  bool ok = std::isfinite(ti.total) && std::isfinite(l_scr) && std::isfinite(psnr) && std::isfinite(ssim) &&
            std::isfinite(aligned_psnr) && std::isfinite(aligned_ssim) && std::isfinite(combined);
  if (l_atn) ok = ok && std::isfinite(*l_atn);
  for (const auto& r : ti.regions) ok = ok && std::isfinite(r.loss);
  for (const auto& p : periods) ok = ok && std::isfinite(p.error);
  return ok;
}

MetricReport evaluate(const EvaluationInput& in, const LossWeights& weights, Index window) {
  MetricReport r;
  r.ti = ti_screentone_loss(in.gen, in.labels, in.assignment, {window, false, HalfScaleOffset::doubled});
  r.l_scr = svae_surrogate_loss(in.gen, in.labels, in.gt_descriptors);
  if (!in.attention.empty())
    r.l_atn = in.attention_masks.empty() ? attention_loss_unsup(in.attention)
                                         : attention_loss_sup(in.attention, in.attention_masks);
  r.psnr = psnr(in.gen, in.gt);
  r.ssim = ssim(in.gen, in.gt);
  const AlignedScores a = aligned_metrics(in.gen, in.gt, in.labels, in.assignment, window);
  r.aligned_psnr = a.psnr;
  r.aligned_ssim = a.ssim;
  r.periods = period_preservation(in.gen, in.labels, in.assignment);
  r.combined = weights.sis * r.ti.total + weights.scr * r.l_scr + weights.atn * r.l_atn.value_or(0.0);
  return r;
}

}  // namespace tonescale

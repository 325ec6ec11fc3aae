#include "doctest.h"

#include "tonescale/descriptor.hpp"
#include "tonescale/resample.hpp"
#include "tonescale/tone.hpp"
#include "tonescale/tone_table.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace tonescale;

namespace {

ToneSpec spec(ToneKind kind, double period, double duty, double angle = 0.0) {
  ToneSpec s;
  s.kind = kind;
  s.period_x = s.period_y = period;
  s.duty = duty;
  s.angle = angle;
  return s;
}

Plane<bool> everywhere(Index h, Index w) { return Plane<bool>::Constant(h, w, true); }

// Left and right halves with a 2 px line between them.
struct TwoRegions {
  LabelMap labels;
  LineMap lines;
};

TwoRegions halves(Index h, Index w) {
  Plane<Label> lab(h, w);
  Plane<std::uint8_t> line = Plane<std::uint8_t>::Ones(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x) {
      const bool on_line = x == w / 2 - 1 || x == w / 2;
      lab(y, x) = on_line ? kNoTone : (x < w / 2 ? 1 : 2);
      line(y, x) = on_line ? 0 : 1;
    }
  return {LabelMap(lab), LineMap(line)};
}

}  // namespace

TEST_CASE("period estimation on generated tones") {
  SUBCASE("stripes of period 8 at 0 degrees") {
    const PeriodEstimate e = estimate_period(gen_tone(spec(ToneKind::stripes, 8, 0.5), 128, 128), everywhere(128, 128));
    CHECK(e.determinate);
    CHECK(e.periodic);
    CHECK(e.period_x == doctest::Approx(8.0));
    CHECK(e.period_y == 0.0);
    CHECK(e.orientation == 0.0);
  }
  SUBCASE("dots of period 6 at 0 degrees") {
    const PeriodEstimate e = estimate_period(gen_tone(spec(ToneKind::dots, 6, 0.3), 128, 128), everywhere(128, 128));
    CHECK(e.periodic);
    CHECK(e.period_x == doctest::Approx(6.0));
    CHECK(e.period_y == doctest::Approx(6.0));
    CHECK(e.orientation == 0.0);
  }
  SUBCASE("horizontal stripes report 90 degrees") {
    const PeriodEstimate e = estimate_period(gen_tone(spec(ToneKind::stripes, 12, 0.4, 90.0), 128, 128), everywhere(128, 128));
    CHECK(e.period_x == doctest::Approx(12.0));
    CHECK(e.orientation == 90.0);
  }
  SUBCASE("noise is aperiodic") {
    ToneSpec s = spec(ToneKind::noise, 2, 0.5);
    s.seed = 3;
    const PeriodEstimate e = estimate_period(gen_tone(s, 128, 128), everywhere(128, 128));
    CHECK(e.determinate);
    CHECK_FALSE(e.periodic);
    CHECK(e.period_x == 0.0);
  }
  SUBCASE("small or thin regions are indeterminate, not errors") {
    const BitonalImage img = gen_tone(spec(ToneKind::stripes, 8, 0.5), 64, 64);
    Plane<bool> m = Plane<bool>::Constant(64, 64, false);
    m.block(0, 0, 10, 10).setConstant(true);
    CHECK_FALSE(estimate_period(img, m).determinate);
    m.setConstant(false);
    m.block(0, 0, 64, 12).setConstant(true);  // 768 pixels but only 12 wide
    CHECK_FALSE(estimate_period(img, m).determinate);
  }
  SUBCASE("a flat region has no period") {
    const PeriodEstimate e = estimate_period(BitonalImage(64, 64, 1), everywhere(64, 64));
    CHECK(e.determinate);
    CHECK_FALSE(e.periodic);
  }
  SUBCASE("mask size mismatch throws") {
    CHECK_THROWS_AS(estimate_period(BitonalImage(8, 8), everywhere(4, 4)), std::invalid_argument);
  }
}

TEST_CASE("every periodic table tone is measured within 1 px on 256x256") {
  for (const ToneSpec& s : tone_table()) {
    CAPTURE(to_string(s.kind));
    CAPTURE(s.period_x);
    CAPTURE(s.duty);
    CAPTURE(s.angle);
    const PeriodEstimate e = estimate_period(gen_tone(s, 256, 256), everywhere(256, 256));
    REQUIRE(e.periodic);
    CHECK(std::abs(e.period_x - s.period_x) <= 1.0);
  }
}

TEST_CASE("descriptor maps") {
  SUBCASE("one stripes region of duty 0.5 has density 0.5") {
    const BitonalImage img = gen_tone(spec(ToneKind::stripes, 8, 0.5), 96, 96);
    const Features d = build_descriptor_map(img, LabelMap(96, 96, 1));
    CHECK((d.channel(kDensity) - 0.5).abs().maxCoeff() <= 0.05);
    CHECK(d.channel(kPeriodX)(0, 0) == doctest::Approx(8.0 / kPeriodNormalization));
  }
  SUBCASE("two regions with one spec get identical vectors; lines get zeros") {
    const TwoRegions t = halves(96, 128);
    const ToneSpec s = spec(ToneKind::dots, 8, 0.4);
    const BitonalImage img = lay_screentones(t.labels, t.lines, {{1, s}, {2, s}});
    const Features d = build_descriptor_map(img, t.labels);
    for (Index c = 0; c < kDescriptorChannels; ++c) {
      CAPTURE(c);
      CHECK(d.channel(c)(10, 10) == doctest::Approx(d.channel(c)(10, 100)).epsilon(0.02));
      CHECK(d.channel(c)(5, 63) == 0.0);
    }
  }
  SUBCASE("channels are constant within regions and lie in [0, 1]") {
    const RegionMap m = gen_region_map(160, 160, 5, 21);
    const auto table = tone_table();
    ToneAssignment a;
    for (Label l = 1; l <= 5; ++l) a[l] = table[static_cast<std::size_t>(l * 17)];
    const Features d = build_descriptor_map(lay_screentones(m.labels, m.lines, a), m.labels);
    for (Index c = 0; c < kDescriptorChannels; ++c) {
      CHECK(d.channel(c).minCoeff() >= 0.0);
      CHECK(d.channel(c).maxCoeff() <= 1.0);
      for (Label l = 1; l <= 5; ++l) {
        const Plane<bool> in = m.labels.labels() == l;
        const double hi = in.select(d.channel(c), -1.0).maxCoeff();
        const double lo = in.select(d.channel(c), 2.0).minCoeff();
        CHECK(hi - lo == 0.0);
      }
    }
  }
  SUBCASE("size mismatch throws") {
    CHECK_THROWS_AS(build_descriptor_map(BitonalImage(4, 4), LabelMap(5, 4)), std::invalid_argument);
  }
}

TEST_CASE("windowed descriptors read a uniform tone") {
  const BitonalImage img = gen_tone(spec(ToneKind::stripes, 8, 0.5), 96, 96);
  const Features d = build_descriptor_map_windowed(img);
  CHECK(d.extent() == img.extent());
  CHECK((d.channel(kDensity) - 0.5).abs().maxCoeff() <= 0.07);
  CHECK((d.channel(kPeriodX) - 8.0 / kPeriodNormalization).abs().maxCoeff() <= 1.0 / kPeriodNormalization);
  CHECK_THROWS_AS(build_descriptor_map_windowed(img, 0, 8), std::invalid_argument);
}

TEST_CASE("resampling semantics") {
  const RegionMap m = gen_region_map(128, 128, 4, 7);
  const auto table = tone_table();
  const ToneAssignment a{{1, table[3]}, {2, table[50]}, {3, table[90]}, {4, table[120]}};
  const Features desc = build_descriptor_map(lay_screentones(m.labels, m.lines, a), m.labels);

  SUBCASE("k = 1 is the identity") {
    const auto [lines, d] = resample_semantics(m.lines, desc, 1.0);
    CHECK(lines == m.lines);
    CHECK(d == desc);
  }
  SUBCASE("constant descriptors stay constant") {
    const Features c(50, 70, 4, 0.25);
    for (const double k : {0.25, 0.6, 1.5, 2.0}) {
      const auto [lines, d] = resample_semantics(LineMap(50, 70), c, k);
      for (Index ch = 0; ch < 4; ++ch) CHECK((d.channel(ch) == 0.25).all());
      CHECK(lines.ink_count() == 0);
    }
  }
  SUBCASE("2 px lines stay connected at k = 0.5") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const RegionMap r = gen_region_map(128, 128, 3 + static_cast<Index>(seed % 6), seed);
      const auto [lines, d] = resample_semantics(r.lines, Features(128, 128, 4), 0.5);
      CHECK(lines.extent() == Extent{64, 64});
      CHECK(oracle::components(lines.pixels() == 0, 8) == oracle::components(r.lines.pixels() == 0, 8));
    }
  }
  SUBCASE("interior values equal the source region vector") {
    for (const double k : {0.5, 0.75, 1.25}) {
      const auto [lines, d] = resample_semantics(m.lines, desc, k);
      const Extent e = d.extent();
      for (Index y = 0; y < e.height; ++y)
        for (Index x = 0; x < e.width; ++x) {
          // source neighbourhood of the sample, 3 px margin
          const double sy = (static_cast<double>(y) + 0.5) / k - 0.5, sx = (static_cast<double>(x) + 0.5) / k - 0.5;
          const Index y0 = static_cast<Index>(std::floor(sy)) - 3, x0 = static_cast<Index>(std::floor(sx)) - 3;
          if (y0 < 0 || x0 < 0 || y0 + 8 > 128 || x0 + 8 > 128) continue;
          const auto block = m.labels.labels().block(y0, x0, 8, 8);
          const Label l = block(3, 3);
          if (l == kNoTone || !(block == l).all()) continue;
          for (Index c = 0; c < 4; ++c) CHECK(std::abs(d.channel(c)(y, x) - desc.channel(c)(y0 + 3, x0 + 3)) <= 1e-6);
        }
    }
  }
  SUBCASE("scales outside [0.25, 2] throw") {
    CHECK_THROWS_AS(resample_semantics(m.lines, desc, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(resample_semantics(m.lines, desc, 2.5), std::invalid_argument);
  }
}

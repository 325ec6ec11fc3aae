#include "doctest.h"

#include "tonescale/corpus.hpp"
#include "tonescale/serialize.hpp"
#include "tonescale/tone.hpp"
#include "tonescale/tone_table.hpp"

#include "oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace tonescale;
namespace fs = std::filesystem;

namespace {

ToneSpec spec(ToneKind kind, double period, double duty, double angle = 0.0) {
  ToneSpec s;
  s.kind = kind;
  s.period_x = s.period_y = period;
  s.duty = duty;
  s.angle = angle;
  return s;
}

double ink_fraction(const BitonalImage& img) {
  return static_cast<double>(img.ink_count()) / static_cast<double>(img.pixels().size());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("stripes of period 8 and duty 0.5 alternate 4 ink and 4 paper columns") {
  const BitonalImage img = gen_tone(spec(ToneKind::stripes, 8, 0.5), 16, 16);
  for (Index y = 0; y < 16; ++y)
    for (Index x = 0; x < 16; ++x) CHECK(img.is_ink(y, x) == (x % 8 < 4));
}

TEST_CASE("stripes follow the closed form at 90 degrees and with a phase") {
  ToneSpec s = spec(ToneKind::stripes, 6, 1.0 / 3.0, 90.0);
  s.phase_y = 1.0;
  const BitonalImage img = gen_tone(s, 12, 12);
  for (Index y = 0; y < 12; ++y)
    for (Index x = 0; x < 12; ++x) {
      const double t = (static_cast<double>(y) + 0.5 - 1.0) / 6.0;
      CHECK(img.is_ink(y, x) == (t - std::floor(t) < 1.0 / 3.0));
    }
}

TEST_CASE("dots are ink inside the radius around lattice points") {
  const ToneSpec s = spec(ToneKind::dots, 8, 0.3);
  const double r = 8.0 * std::sqrt(0.3 / M_PI);
  const BitonalImage img = gen_tone(s, 32, 32);
  for (Index y = 0; y < 32; ++y)
    for (Index x = 0; x < 32; ++x) {
      const double px = static_cast<double>(x) + 0.5, py = static_cast<double>(y) + 0.5;
      const double dx = px - 8.0 * std::round(px / 8.0), dy = py - 8.0 * std::round(py / 8.0);
      CHECK(img.is_ink(y, x) == (std::hypot(dx, dy) < r));
    }
}

TEST_CASE("tiny dots leave the image blank") {
  // radius 4 sqrt(1 / (16 pi)) < 0.5, closer than any pixel centre
  CHECK(gen_tone(spec(ToneKind::dots, 4, 1.0 / 16.0), 32, 32).ink_count() == 0);
}

TEST_CASE("every table tone repeats under its axis periods") {
  for (const ToneSpec& s : tone_table()) {
    const Screentone t(s);
    REQUIRE(t.axis_period_x() > 0);
    REQUIRE(t.axis_period_y() > 0);
    const auto base = t.render(0, 0, 40, 40);
    CHECK((t.render(t.axis_period_x(), 0, 40, 40) == base).all());
    CHECK((t.render(0, t.axis_period_y(), 40, 40) == base).all());
    CHECK((t.render(-3 * t.axis_period_x(), 2 * t.axis_period_y(), 40, 40) == base).all());
  }
}

TEST_CASE("gen_tone of a wider canvas contains the period translate") {
  const ToneSpec s = spec(ToneKind::grid, 12, 0.4);
  const BitonalImage wide = gen_tone(s, 64 + 12, 64);
  const BitonalImage narrow = gen_tone(s, 64, 64);
  CHECK((wide.pixels().block(0, 12, 64, 64) == narrow.pixels()).all());
}

TEST_CASE("ink fraction matches duty on 256x256 for the whole table") {
  for (const ToneSpec& s : tone_table()) {
    CAPTURE(to_string(s.kind));
    CAPTURE(s.period_x);
    CAPTURE(s.duty);
    CAPTURE(s.angle);
    CHECK(std::abs(ink_fraction(gen_tone(s, 256, 256)) - s.duty) <= 0.05);
  }
}

TEST_CASE("noise is seeded and calibrated") {
  ToneSpec s = spec(ToneKind::noise, 2, 0.35);
  s.seed = 42;
  const BitonalImage a = gen_tone(s, 128, 128);
  CHECK(a == gen_tone(s, 128, 128));
  CHECK(std::abs(ink_fraction(a) - 0.35) <= 0.05);
  s.seed = 43;
  CHECK_FALSE(a == gen_tone(s, 128, 128));
}

TEST_CASE("invalid tone specs are rejected") {
  CHECK_THROWS_AS(validate(spec(ToneKind::dots, 8, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(spec(ToneKind::dots, 8, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(spec(ToneKind::stripes, 1.5, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(validate(spec(ToneKind::grid, 8, 0.5, 180.0)), std::invalid_argument);
  CHECK_THROWS_AS(gen_tone(spec(ToneKind::grid, 8, 0.5, -1.0), 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(tone_kind_from_string("waves"), std::invalid_argument);
  CHECK(tone_kind_from_string("grid") == ToneKind::grid);
}

TEST_CASE("tone specs survive JSON") {
  ToneSpec s = spec(ToneKind::stripes, 6, 0.4, 135.0);
  s.phase_x = 1.5;
  s.seed = 77;
  nlohmann::json j = s;
  CHECK(j.get<ToneSpec>() == s);
}

TEST_CASE("region maps") {
  SUBCASE("one region is uniform with no lines") {
    const RegionMap m = gen_region_map(40, 30, 1, 5);
    CHECK((m.labels.labels() == 1u).all());
    CHECK(m.lines.ink_count() == 0);
  }
  SUBCASE("fixed seed reproduces the map") {
    const RegionMap a = gen_region_map(96, 80, 5, 123);
    const RegionMap b = gen_region_map(96, 80, 5, 123);
    CHECK(a.labels == b.labels);
    CHECK(a.lines == b.lines);
  }
  SUBCASE("four regions on 128x128 with seed 7 each cover at least 1%") {
    const RegionMap m = gen_region_map(128, 128, 4, 7);
    for (Label l = 1; l <= 4; ++l) CHECK((m.labels.labels() == l).count() >= 128 * 128 / 100);
  }
  SUBCASE("line pixels carry label 0, regions are 4-connected, boundaries are lines") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const RegionMap m = gen_region_map(100, 90, 3 + static_cast<Index>(seed % 6), seed);
      const auto& lab = m.labels.labels();
      CHECK(((m.lines.pixels() == 0) == (lab == kNoTone)).all());
      for (const Label l : m.labels.distinct()) {
        if (l == kNoTone) continue;
        CHECK(oracle::components(lab == l) == 1);
      }
      // no two different non-zero labels touch
      for (Index y = 0; y < 90; ++y)
        for (Index x = 0; x + 1 < 100; ++x)
          if (lab(y, x) && lab(y, x + 1)) CHECK(lab(y, x) == lab(y, x + 1));
    }
  }
  SUBCASE("bad region counts throw") {
    CHECK_THROWS_AS(gen_region_map(4, 4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_region_map(4, 4, 17, 1), std::invalid_argument);
  }
}

TEST_CASE("laying screentones") {
  const RegionMap one = gen_region_map(64, 64, 1, 1);
  SUBCASE("a single region equals gen_tone with lines overlaid") {
    Plane<std::uint8_t> lp = Plane<std::uint8_t>::Ones(64, 64);
    lp.row(10).setZero();
    Plane<Label> lab = Plane<Label>::Ones(64, 64);
    lab.row(10).setZero();
    const ToneSpec s = spec(ToneKind::dots, 6, 0.4);
    const BitonalImage out = lay_screentones(LabelMap(lab), LineMap(lp), {{1, s}});
    const BitonalImage ref = gen_tone(s, 64, 64);
    for (Index y = 0; y < 64; ++y)
      for (Index x = 0; x < 64; ++x) CHECK(out(y, x) == (y == 10 ? 0 : ref(y, x)));
  }
  SUBCASE("two regions with one spec continue across the boundary") {
    const RegionMap m = gen_region_map(80, 80, 2, 3);
    const ToneSpec s = spec(ToneKind::stripes, 8, 0.5, 45.0);
    const BitonalImage out = lay_screentones(m.labels, m.lines, {{1, s}, {2, s}});
    const BitonalImage ref = gen_tone(s, 80, 80);
    CHECK(((m.lines.pixels() == 0) || (out.pixels() == ref.pixels())).all());
    CHECK(((m.lines.pixels() == 1) || (out.pixels() == 0)).all());
  }
  SUBCASE("a region depends only on its own tone") {
    const RegionMap m = gen_region_map(80, 80, 3, 9);
    ToneAssignment a{{1, spec(ToneKind::dots, 8, 0.3)}, {2, spec(ToneKind::grid, 6, 0.5)}, {3, spec(ToneKind::stripes, 4, 0.5)}};
    const BitonalImage before = lay_screentones(m.labels, m.lines, a);
    a[2] = spec(ToneKind::stripes, 16, 0.2, 90.0);
    const BitonalImage after = lay_screentones(m.labels, m.lines, a);
    CHECK(((m.labels.labels() == 2u) || (before.pixels() == after.pixels())).all());
  }
  SUBCASE("unassigned labels throw") {
    const RegionMap m = gen_region_map(40, 40, 2, 3);
    CHECK_THROWS_AS(lay_screentones(m.labels, m.lines, {{1, spec(ToneKind::dots, 8, 0.3)}}), std::invalid_argument);
  }
  SUBCASE("size mismatch throws") { CHECK_THROWS(lay_screentones(one.labels, LineMap(3, 3), {})); }
}

TEST_CASE("the tone table has 125 documented entries") {
  const auto table = tone_table();
  CHECK(table.size() == 125);
  std::set<std::tuple<int, double, double, double>> unique;
  for (const ToneSpec& s : table) {
    CHECK(s.kind != ToneKind::noise);
    CHECK(std::set<double>{4, 6, 8, 12, 16}.count(s.period_x) == 1);
    CHECK(s.period_x == s.period_y);
    CHECK(s.duty >= 0.2 - 1e-12);
    CHECK(s.duty <= 0.8 + 1e-12);
    CHECK(std::set<double>{0, 45, 90, 135}.count(s.angle) == 1);
    CHECK_NOTHROW(validate(s));
    unique.insert({static_cast<int>(s.kind), s.period_x, s.duty, s.angle});
  }
  CHECK(unique.size() == 125);
}

TEST_CASE("corpus items") {
  const CorpusItem item = make_corpus_item(11);
  SUBCASE("canvases are 512x512 with 3 to 8 assigned regions") {
    CHECK(item.manga.extent() == Extent{512, 512});
    CHECK(item.labels.extent() == Extent{512, 512});
    CHECK(item.lines.extent() == Extent{512, 512});
    Index regions = 0;
    for (const Label l : item.labels.distinct())
      if (l != kNoTone) {
        ++regions;
        CHECK(item.assignment.count(l) == 1);
        CHECK(tone_table()[item.table_index.at(l)] == item.assignment.at(l));
      }
    CHECK(regions >= 3);
    CHECK(regions <= 8);
  }
  SUBCASE("re-laying the stored assignment reproduces the manga") {
    CHECK(lay_screentones(item.labels, item.lines, item.assignment) == item.manga);
  }
  SUBCASE("same seed, same item") {
    const CorpusItem again = make_corpus_item(11);
    CHECK(again.manga == item.manga);
    CHECK(again.labels == item.labels);
  }
}

TEST_CASE("corpus on disk") {
  const fs::path root = fs::temp_directory_path() / "tonescale_tone_synth";
  fs::remove_all(root);
  build_corpus(2, 128, 5, root / "a");
  build_corpus(2, 128, 5, root / "b");
  SUBCASE("writes triplets and an identical manifest for the same seed") {
    for (const char* id : {"0000", "0001"})
      for (const char* kind : {"manga", "labels", "lines"})
        CHECK(fs::exists(root / "a" / (std::string(id) + "_" + kind + ".png")));
    CHECK(slurp(root / "a" / "manifest.json") == slurp(root / "b" / "manifest.json"));
    const auto m = nlohmann::json::parse(slurp(root / "a" / "manifest.json"));
    CHECK(m["tone_table"].size() == 125);
    CHECK(m["items"].size() == 2);
  }
  SUBCASE("loading matches the in-memory corpus") {
    const auto loaded = load_corpus(root / "a");
    const auto made = make_corpus(2, 5, 128);
    REQUIRE(loaded.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(loaded[i].id == made[i].id);
      CHECK(loaded[i].manga == made[i].manga);
      CHECK(loaded[i].labels == made[i].labels);
      CHECK(loaded[i].lines == made[i].lines);
      CHECK(loaded[i].assignment == made[i].assignment);
    }
  }
  SUBCASE("count 0 is rejected") { CHECK_THROWS_AS(build_corpus(0, 128, 5, root / "c"), std::invalid_argument); }
}

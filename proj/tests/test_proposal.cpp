#include "doctest.h"

#include "tonescale/proposal.hpp"
#include "tonescale/random.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace tonescale;

namespace {

Features random_grid(std::uint64_t seed, Index h, Index w, Index channels) {
  Rng rng(seed);
  std::vector<Plane<double>> planes;
  for (Index c = 0; c < channels; ++c) {
    Plane<double> p(h, w);
    for (Index i = 0; i < p.size(); ++i) p.data()[i] = rng.uniform();
    planes.push_back(p);
  }
  return Features(planes);
}

std::vector<std::pair<Index, Index>> row_spans(Index target, Index n) {
  std::vector<std::pair<Index, Index>> out;
  for (const TileRect& t : tile_bounds(target, 1, n, 1)) out.push_back({t.y0, t.y0 + t.height});
  return out;
}

}  // namespace

TEST_CASE("tile bounds") {
  CHECK(row_spans(32, 2) == std::vector<std::pair<Index, Index>>{{0, 16}, {16, 32}});
  CHECK(row_spans(33, 2) == std::vector<std::pair<Index, Index>>{{0, 16}, {16, 33}});
  const auto one = tile_bounds(17, 9, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].height == 17);
  CHECK(one[0].width == 9);
  CHECK_THROWS_AS(tile_bounds(3, 10, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(tile_bounds(10, 10, 0, 1), std::invalid_argument);
}

TEST_CASE("tiles partition the target exactly") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Index> dim(8, 90);
  const Index grids[4] = {1, 2, 4, 8};
  for (int t = 0; t < 100; ++t) {
    const Index h = dim(rng), w = dim(rng), i = grids[rng() % 4], j = grids[rng() % 4];
    Plane<int> cover = Plane<int>::Zero(h, w);
    for (const TileRect& r : tile_bounds(h, w, i, j)) cover.block(r.y0, r.x0, r.height, r.width) += 1;
    CHECK((cover == 1).all());
  }
}

TEST_CASE("anchor centres sit at cell centres") {
  const AnchorGrid g = make_anchor_grid({64, 48}, 2, 4);
  CHECK(g.center(0, 0).y == 16.0);
  CHECK(g.center(1, 3).y == 48.0);
  CHECK(g.center(1, 3).x == 42.0);
  CHECK_THROWS_AS(make_anchor_grid({64, 48}, 0, 1), std::invalid_argument);
}

TEST_CASE("sampling a single proposal") {
  SUBCASE("k = 1 and one anchor copies the source") {
    for (const Index n : {16, 17}) {
      const Features src = random_grid(2, n, n + 3, 2);
      const Proposal<double> p = sample_proposal(src, make_anchor_grid(src.extent(), 1, 1), 1.0);
      CHECK(p.data == src);
      CHECK((p.validity == 1).all());
    }
  }
  SUBCASE("64 rows at k = 0.5 with two anchors give two 16-row tiles") {
    const auto tiles = tile_bounds(scaled_dim(64, 0.5), 32, 2, 2);
    CHECK(tiles[0].height == 16);
    CHECK(tiles[2].height == 16);
  }
  SUBCASE("64 rows at k = 1.25 with two anchors pad four rows at each end") {
    Plane<double> rows(64, 8);
    for (Index y = 0; y < 64; ++y) rows.row(y).setConstant(static_cast<double>(y));
    const std::array<double, 1> pad{-1.0};
    const Proposal<double> p = sample_proposal<double>(Features({rows}), make_anchor_grid({64, 8}, 2, 1), 1.25, pad);
    REQUIRE(p.data.height() == 80);
    const auto& v = p.data.channel(0);
    // tile 0 copies source rows [-4, 36), tile 1 copies rows [28, 68); the
    // 10 target columns copy source columns [-1, 9), so column 1 is source column 0
    for (Index y = 0; y < 40; ++y) {
      const Index s = y - 4;
      CHECK(p.validity(y, 1) == (s >= 0 ? 1 : 0));
      CHECK(v(y, 1) == (s >= 0 ? static_cast<double>(s) : -1.0));
    }
    for (Index y = 40; y < 80; ++y) {
      const Index s = 28 + y - 40;
      CHECK(p.validity(y, 1) == (s < 64 ? 1 : 0));
      CHECK(v(y, 1) == (s < 64 ? static_cast<double>(s) : -1.0));
    }
    CHECK((p.validity.col(0) == 0).all());
  }
  SUBCASE("padding needs one value per channel") {
    const Features src(8, 8, 2);
    const std::array<double, 1> pad{1.0};
    CHECK_THROWS_AS(sample_proposal<double>(src, make_anchor_grid(src.extent(), 1, 1), 1.0, pad), std::invalid_argument);
    CHECK_THROWS_AS(sample_proposal(src, make_anchor_grid({9, 8}, 1, 1), 1.0), std::invalid_argument);
  }
}

TEST_CASE("every valid pixel is a verbatim copy of the index oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Index> dim(16, 70);
  std::uniform_real_distribution<double> scale(0.5, 1.25);
  const Index grids[4] = {1, 2, 4, 8};
  for (int t = 0; t < 60; ++t) {
    const Index h = dim(rng), w = dim(rng), n = grids[rng() % 4];
    const double k = scale(rng);
    const Features src = random_grid(static_cast<std::uint64_t>(t), h, w, 1);
    const std::array<double, 1> pad{-7.0};
    const Proposal<double> p = sample_proposal<double>(src, make_anchor_grid(src.extent(), n, n), k, pad);
    const Index th = oracle::round_dim(h, k), tw = oracle::round_dim(w, k);
    REQUIRE(p.data.extent() == Extent{th, tw});
    for (Index y = 0; y < th; ++y)
      for (Index x = 0; x < tw; ++x) {
        const auto s = oracle::proposal_source(y, x, h, w, th, tw, n, n);
        CHECK(p.validity(y, x) == (s.valid ? 1 : 0));
        CHECK(p.data(0, y, x) == (s.valid ? src(0, s.y, s.x) : -7.0));
      }
  }
}

TEST_CASE("proposal sets") {
  const Features src = random_grid(4, 64, 64, 3);
  const std::vector<Index> levels{1, 2, 4, 8};
  SUBCASE("one level is a single proposal") {
    const std::vector<Index> one{2};
    const auto set = sample_proposal_set<double>(src, one, 0.75);
    REQUIRE(set.levels.size() == 1);
    CHECK(set.levels[0].data == sample_proposal(src, make_anchor_grid(src.extent(), 2, 2), 0.75).data);
  }
  SUBCASE("k = 1 with divisible dimensions reproduces the source at every level") {
    const auto set = sample_proposal_set<double>(src, levels, 1.0);
    for (const auto& p : set.levels) {
      CHECK(p.data == src);
      CHECK((p.validity == 1).all());
    }
  }
  SUBCASE("levels share the 80x80 target at k = 1.25") {
    const auto set = sample_proposal_set<double>(src, levels, 1.25);
    CHECK(set.target() == Extent{80, 80});
    for (const auto& p : set.levels) {
      CHECK(p.data.extent() == Extent{80, 80});
      CHECK(p.validity.rows() == 80);
    }
  }
  SUBCASE("no levels throws") {
    CHECK_THROWS_AS(sample_proposal_set<double>(src, std::vector<Index>{}, 1.0), std::invalid_argument);
  }
}

TEST_CASE("label proposals") {
  SUBCASE("k = 1 with one anchor is the identity") {
    std::mt19937_64 rng(8);
    const LabelMap m(oracle::random_blocks(rng, 21, 30, 5, 3));
    const LabelProposal p = sample_label_proposal(m, make_anchor_grid(m.extent(), 1, 1), 1.0);
    CHECK(p.labels == m);
  }
  SUBCASE("a uniform map stays uniform except for padding") {
    const LabelMap m(40, 40, 3);
    for (const Index n : {1, 2, 4, 8}) {
      const LabelProposal p = sample_label_proposal(m, make_anchor_grid(m.extent(), n, n), 1.25);
      for (Index y = 0; y < 50; ++y)
        for (Index x = 0; x < 50; ++x) CHECK(p.labels(y, x) == (p.validity(y, x) ? 3u : kNoTone));
    }
  }
  SUBCASE("quadrants at k = 0.5 with two anchors match the index oracle") {
    Plane<Label> q(32, 32);
    for (Index y = 0; y < 32; ++y)
      for (Index x = 0; x < 32; ++x) q(y, x) = 1 + (y >= 16 ? 2 : 0) + (x >= 16 ? 1 : 0);
    const LabelProposal p = sample_label_proposal(LabelMap(q), make_anchor_grid({32, 32}, 2, 2), 0.5);
    for (Index y = 0; y < 16; ++y)
      for (Index x = 0; x < 16; ++x) {
        const auto s = oracle::proposal_source(y, x, 32, 32, 16, 16, 2, 2);
        REQUIRE(s.valid);
        CHECK(p.labels(y, x) == q(s.y, s.x));
      }
    // each tile is a centred crop of one quadrant
    CHECK(p.labels(0, 0) == 1u);
    CHECK(p.labels(7, 7) == 1u);
    CHECK(p.labels(8, 0) == 3u);
    CHECK(p.labels(15, 15) == 4u);
  }
}

TEST_CASE("denser anchors keep copies closer to the true correspondence") {
  // Median over source sizes of the share of target pixels whose copied source
  // index lies within 4 px of the scaled position.
  const double k = 0.5;
  std::vector<std::vector<double>> share(4);
  const Index levels[4] = {1, 2, 4, 8};
  for (Index n = 96; n <= 160; n += 16) {
    const Index t = oracle::round_dim(n, k);
    for (int l = 0; l < 4; ++l) {
      const ProposalIndexMap m = proposal_index_map(make_anchor_grid({n, n}, levels[l], levels[l]), {t, t});
      Index close = 0;
      for (Index y = 0; y < t; ++y)
        for (Index x = 0; x < t; ++x) {
          const double ty = (static_cast<double>(y) + 0.5) / k - 0.5, tx = (static_cast<double>(x) + 0.5) / k - 0.5;
          if (std::abs(static_cast<double>(m.source_y(y, x)) - ty) <= 4.0 && std::abs(static_cast<double>(m.source_x(y, x)) - tx) <= 4.0) ++close;
        }
      share[static_cast<std::size_t>(l)].push_back(static_cast<double>(close) / static_cast<double>(t * t));
    }
  }
  std::vector<double> median;
  for (auto& s : share) {
    std::sort(s.begin(), s.end());
    median.push_back(s[s.size() / 2]);
  }
  for (std::size_t l = 1; l < 4; ++l) CHECK(median[l] > median[l - 1]);
}

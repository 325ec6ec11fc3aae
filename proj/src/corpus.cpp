#include "tonescale/corpus.hpp"

#include "tonescale/png_io.hpp"
#include "tonescale/random.hpp"
#include "tonescale/serialize.hpp"
#include "tonescale/tone_table.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace tonescale {

void to_json(nlohmann::json& j, const ToneSpec& spec) {
  j = nlohmann::json{{"kind", std::string(to_string(spec.kind))},
                     {"period_x", spec.period_x},
                     {"period_y", spec.period_y},
                     {"duty", spec.duty},
                     {"angle", spec.angle},
                     {"phase", {spec.phase_x, spec.phase_y}},
                     {"seed", spec.seed}};
}

void from_json(const nlohmann::json& j, ToneSpec& spec) {
  spec.kind = tone_kind_from_string(j.at("kind").get<std::string>());
  spec.period_x = j.at("period_x").get<double>();
  spec.period_y = j.at("period_y").get<double>();
  spec.duty = j.at("duty").get<double>();
  spec.angle = j.at("angle").get<double>();
  spec.phase_x = j.at("phase").at(0).get<double>();
  spec.phase_y = j.at("phase").at(1).get<double>();
  spec.seed = j.value("seed", std::uint64_t{0});
  validate(spec);
}

nlohmann::json assignment_to_json(const ToneAssignment& assignment) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [label, spec] : assignment) j[std::to_string(label)] = spec;
  return j;
}

ToneAssignment assignment_from_json(const nlohmann::json& j) {
  ToneAssignment out;
  for (const auto& [key, value] : j.items()) out.emplace(static_cast<Label>(std::stoul(key)), value.get<ToneSpec>());
  return out;
}

namespace {

std::string item_id(Index i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04lld", static_cast<long long>(i));
  return buf;
}

}  // namespace

CorpusItem make_corpus_item(std::uint64_t seed, Index canvas) {
  const auto table = tone_table();
  Rng rng(seed);
  const Index n_regions = kMinCorpusRegions + static_cast<Index>(rng.below(kMaxCorpusRegions - kMinCorpusRegions + 1));
  RegionMap regions = gen_region_map(canvas, canvas, n_regions, splitmix64(seed));

  // partial Fisher-Yates: distinct tones per region
  std::vector<std::size_t> rows(table.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  CorpusItem item;
  item.seed = seed;
  for (Index r = 0; r < n_regions; ++r) {
    const auto pick = static_cast<std::size_t>(r) + rng.below(rows.size() - static_cast<std::size_t>(r));
    std::swap(rows[static_cast<std::size_t>(r)], rows[pick]);
    const auto label = static_cast<Label>(r + 1);
    item.table_index[label] = rows[static_cast<std::size_t>(r)];
    item.assignment[label] = table[rows[static_cast<std::size_t>(r)]];
  }
  item.manga = lay_screentones(regions.labels, regions.lines, item.assignment);
  item.labels = std::move(regions.labels);
  item.lines = std::move(regions.lines);
  return item;
}

std::vector<CorpusItem> make_corpus(Index count, std::uint64_t seed, Index canvas) {
  std::vector<CorpusItem> items;
  items.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    items.push_back(make_corpus_item(seed + static_cast<std::uint64_t>(i), canvas));
    items.back().id = item_id(i);
  }
  return items;
}

void build_corpus(Index count, Index canvas, std::uint64_t seed, const std::filesystem::path& out_dir) {
  if (count < 1) throw std::invalid_argument("build_corpus: count must be at least 1");
  if (canvas < 16) throw std::invalid_argument("build_corpus: canvas must be at least 16 px");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  nlohmann::json manifest;
  manifest["format"] = "tonescale-corpus";
  manifest["version"] = 1;
  manifest["seed"] = seed;
  manifest["count"] = count;
  manifest["canvas"] = canvas;
  manifest["tone_table"] = nlohmann::json::array();
  for (const auto& spec : tone_table()) manifest["tone_table"].push_back(spec);
  manifest["items"] = nlohmann::json::array();

  for (Index i = 0; i < count; ++i) {
    CorpusItem item = make_corpus_item(seed + static_cast<std::uint64_t>(i), canvas);
    item.id = item_id(i);
    save_png(item.manga, out_dir / (item.id + "_manga.png"));
    save_png(item.labels, out_dir / (item.id + "_labels.png"));
    save_png(item.lines, out_dir / (item.id + "_lines.png"));
    nlohmann::json table_rows = nlohmann::json::object();
    for (const auto& [label, row] : item.table_index) table_rows[std::to_string(label)] = row;
    manifest["items"].push_back({{"id", item.id},
                                 {"seed", item.seed},
                                 {"regions", item.assignment.size()},
                                 {"table_rows", table_rows},
                                 {"assignment", assignment_to_json(item.assignment)}});
  }

  std::ofstream out(out_dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + (out_dir / "manifest.json").string());
}

std::vector<CorpusItem> load_corpus(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw IoError("cannot open " + (dir / "manifest.json").string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw IoError((dir / "manifest.json").string() + ": " + e.what());
  }
  std::vector<CorpusItem> items;
  for (const auto& entry : manifest.at("items")) {
    CorpusItem item;
    item.id = entry.at("id").get<std::string>();
    item.seed = entry.at("seed").get<std::uint64_t>();
    item.assignment = assignment_from_json(entry.at("assignment"));
    for (const auto& [key, row] : entry.at("table_rows").items())
      item.table_index[static_cast<Label>(std::stoul(key))] = row.get<std::size_t>();
    item.manga = load_bitonal(dir / (item.id + "_manga.png"));
    item.labels = load_labels(dir / (item.id + "_labels.png"));
    item.lines = load_lines(dir / (item.id + "_lines.png"));
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace tonescale

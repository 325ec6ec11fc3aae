#include "tonescale/corpus.hpp"
#include "tonescale/descriptor.hpp"
#include "tonescale/png_io.hpp"
#include "tonescale/pipeline.hpp"
#include "tonescale/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using namespace tonescale;

namespace {

constexpr int kOk = 0;
constexpr int kPipelineError = 1;
constexpr int kUsageError = 2;

// Thrown for bad flags or unreadable inputs; maps to kUsageError.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigFlags {
  std::string config_path;
  std::vector<Index> levels;
  std::string phi;
  std::string phi_index;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON file with retarget settings; flags take precedence")->check(CLI::ExistingFile);
  cmd->add_option("--levels", f.levels, "anchor grid sizes, e.g. 1,2,4,8")->delimiter(',');
  cmd->add_option("--phi", f.phi, "attention scoring: label or pattern")->check(CLI::IsMember({"label", "pattern"}));
  cmd->add_option("--phi-index", f.phi_index, "proposal scored per level: previous or current")
      ->check(CLI::IsMember({"previous", "current"}));
}

RetargetConfig resolve_config(const ConfigFlags& f) {
  RetargetConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    try {
      apply_config_json(c, nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      throw UsageError("bad config " + f.config_path + ": " + e.what());
    }
  }
  if (!f.levels.empty()) c.levels = f.levels;
  if (!f.phi.empty()) c.phi_mode = phi_mode_from_string(f.phi);
  if (!f.phi_index.empty()) c.phi_index = phi_index_from_string(f.phi_index);
  return c;
}

template <typename Load>
auto load_or_usage(Load load, const std::string& path) {
  try {
    return load(path);
  } catch (const std::exception& e) {
    throw UsageError("cannot read " + path + ": " + e.what());
  }
}

int run_synth(const std::string& out, Index count, std::uint64_t seed, Index size) {
  build_corpus(count, size, seed, out);
  std::cout << "wrote " << count << " items to " << out << "\n";
  return kOk;
}

struct RetargetArgs {
  std::string input, lines, labels, out, dump_traces;
  std::optional<double> scale;
  ConfigFlags config;
};

int run_retarget(const RetargetArgs& a) {
  RetargetConfig c = resolve_config(a.config);
  if (a.scale) c.scale = *a.scale;
  if (c.phi_mode == PhiMode::label && a.labels.empty()) throw UsageError("--phi label requires --labels");
  if (!(c.scale >= kMinSemanticScale && c.scale <= kMaxSemanticScale)) throw UsageError("--scale must lie in [0.25, 2]");
  c.dump_traces = c.dump_traces || !a.dump_traces.empty();

  const BitonalImage manga = load_or_usage(load_bitonal, a.input);
  const LineMap lines = a.lines.empty() ? LineMap(Plane<std::uint8_t>::Ones(manga.height(), manga.width()))
                                        : load_or_usage(load_lines, a.lines);
  std::optional<LabelMap> labels;
  if (!a.labels.empty()) labels = load_or_usage(load_labels, a.labels);

  const RetargetResult r = retarget(manga, lines, labels, c);
  try {
    save_png(r.output, a.out);
  } catch (const std::exception& e) {
    throw UsageError("cannot write " + a.out + ": " + e.what());
  }
  if (c.dump_traces) dump_trace(r.trace, a.dump_traces.empty() ? fs::path(a.out).parent_path() / "traces" : fs::path(a.dump_traces));
  std::cout << "wrote " << r.output.width() << "x" << r.output.height() << " image to " << a.out << "\n";
  return kOk;
}

struct EvalArgs {
  std::string corpus, report, csv, mask_dir;
  std::vector<double> scales{0.5, 0.75, 1.0, 1.25};
  ConfigFlags config;
};

int run_eval(const EvalArgs& a) {
  EvalOptions opt;
  opt.config = resolve_config(a.config);
  opt.scales = a.scales;
  if (!a.mask_dir.empty()) opt.mask_dir = a.mask_dir;
  for (const double k : a.scales)
    if (!(k >= kMinSemanticScale && k <= kMaxSemanticScale)) throw UsageError("--scales must lie in [0.25, 2]");

  const auto items = load_or_usage(load_corpus, a.corpus);
  if (items.empty()) throw UsageError("corpus " + a.corpus + " is empty");
  opt.on_pair = [](const PairResult& p) {
    std::fprintf(stderr, "%s k=%.2f aligned PSNR %.3f (baseline %.3f)\n", p.item.c_str(), p.scale,
                 p.pipeline.aligned_psnr, p.baseline.aligned_psnr);
  };
  const EvalReport report = evaluate_corpus(items, opt);

  std::ofstream out(a.report);
  if (!out) throw UsageError("cannot write " + a.report);
  out << eval_report_to_json(report).dump(2) << "\n";
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv);
    if (!csv) throw UsageError("cannot write " + a.csv);
    write_csv(report, csv);
  }
  std::cout << "evaluated " << report.pairs.size() << " pairs; report at " << a.report << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screentone-preserving manga retargeting"};
  app.require_subcommand(1);

  std::string synth_out;
  Index synth_count = 100, synth_size = kDefaultCanvas;
  std::uint64_t synth_seed = 0;
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus");
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--count", synth_count, "number of items")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "corpus seed");
  synth->add_option("--size", synth_size, "canvas side in pixels")->check(CLI::Range(Index{16}, Index{8192}));

  RetargetArgs ra;
  auto* rt = app.add_subcommand("retarget", "rescale one manga image");
  rt->add_option("--input", ra.input, "bitonal manga PNG")->required();
  rt->add_option("--lines", ra.lines, "structural line PNG (0 = line)");
  rt->add_option("--labels", ra.labels, "region label PNG");
  rt->add_option("--scale", ra.scale, "scale factor in [0.25, 2]");
  rt->add_option("--out", ra.out, "output PNG")->required();
  rt->add_option("--dump-traces", ra.dump_traces, "directory for attention and confidence maps");
  add_config_flags(rt, ra.config);

  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "score the pipeline and the bilinear baseline on a corpus");
  ev->add_option("--corpus", ea.corpus, "corpus directory")->required();
  ev->add_option("--scales", ea.scales, "scale factors")->delimiter(',');
  ev->add_option("--report", ea.report, "JSON report path")->required();
  ev->add_option("--csv", ea.csv, "CSV summary path");
  ev->add_option("--mask-dir", ea.mask_dir, "directory for ground-truth attention masks");
  add_config_flags(ev, ea.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsageError;
  }

  try {
    if (*synth) return run_synth(synth_out, synth_count, synth_seed, synth_size);
    if (*rt) return run_retarget(ra);
    return run_eval(ea);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPipelineError;
  }
}

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "slab/cli/commands.hpp"
#include "slab/error.hpp"

namespace {

namespace fs = std::filesystem;
using namespace slab::cli;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool config_required, bool out_required) {
  cmd->add_option("--seed", c.seed, "Seed; overrides the config file");
  auto* config = cmd->add_option("--config", c.config, "Experiment config file");
  auto* out = cmd->add_option("--out", c.out, "Output path");
  if (config_required) config->required();
  if (out_required) out->required();
}

ExperimentConfig load_config(const Common& c) {
  ExperimentConfig cfg = load_experiment_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-free training and evaluation of abstractive summarizers"};
  app.require_subcommand(1);

  Common common;

  std::string input;
  auto* preprocess = app.add_subcommand("preprocess", "Clean a directory of story files");
  preprocess->add_option("input", input, "Directory of story files")->required();
  add_common(preprocess, common, false, true);

  AnalyzeOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Length histograms and word frequencies");
  analyze->add_option("corpus", input, "Cleaned corpus or story directory")->required();
  analyze->add_option("--bin-width", analyze_opts.bin_width, "Histogram bin width in tokens");
  analyze->add_option("--top", analyze_opts.top_k, "Size of the frequency table");
  add_common(analyze, common, false, true);

  auto* train = app.add_subcommand("train", "Train one model with one optimizer");
  add_common(train, common, true, true);

  DecodeRequest decode_req;
  std::string params;
  auto* decode = app.add_subcommand("decode", "Greedy-decode summaries with trained parameters");
  decode->add_option("--params", params, "Parameter file written by train")->required();
  decode->add_option("input", input, "Corpus directory or single document")->required();
  add_common(decode, common, false, true);

  std::string candidates, references;
  auto* rouge = app.add_subcommand("rouge", "Score line-aligned summaries with ROUGE-1/2/L");
  rouge->add_option("candidates", candidates, "Generated summaries, one per line")->required();
  rouge->add_option("references", references, "Reference summaries, one per line")->required();
  add_common(rouge, common, false, true);

  MatrixOptions matrix_opts;
  auto* matrix = app.add_subcommand("matrix", "Every model with every optimizer, scored");
  matrix->add_flag("--include-random", matrix_opts.include_random,
                   "Also run the random-search baseline");
  add_common(matrix, common, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*preprocess) {
      const auto r = cmd_preprocess(input, common.out);
      std::cout << "parsed=" << r.parsed << " skipped=" << r.skipped << "\n";
    } else if (*analyze) {
      cmd_analyze(input, common.out, analyze_opts);
    } else if (*train) {
      const auto r = cmd_train(load_config(common), common.out);
      std::cout << "arity=" << r.arity << " evals=" << r.evals
                << " final_train_loss=" << r.final_train_loss << "\n";
    } else if (*decode) {
      decode_req.params = params;
      decode_req.input = input;
      decode_req.output = common.out;
      if (!common.config.empty()) decode_req.config = fs::path(common.config);
      const auto r = cmd_decode(decode_req);
      std::cout << "documents=" << r.documents << "\n";
    } else if (*rouge) {
      const auto rows = cmd_rouge(candidates, references, common.out);
      const auto& m = rows.back();
      std::cout << "rouge1_f=" << m.r1.f1 << " rouge2_f=" << m.r2.f1 << " rougel_f=" << m.rl.f1
                << "\n";
    } else if (*matrix) {
      cmd_matrix(load_config(common), common.out, matrix_opts);
    }
  } catch (const slab::Error& e) {
    std::cerr << "error: " << slab::error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "slab/cli/config.hpp"
#include "slab/eval.hpp"

namespace slab::cli {

namespace fs = std::filesystem;

// File names inside a training output directory.
inline constexpr const char* kParamsFile = "params.slab";
inline constexpr const char* kTraceFile = "trace.csv";
inline constexpr const char* kReportFile = "report.txt";
inline constexpr const char* kVocabFile = "vocab.tsv";
inline constexpr const char* kEmbeddingsFile = "embeddings.glove";
inline constexpr const char* kConfigFile = "config.txt";

struct PreprocessReport {
  std::size_t parsed = 0;
  std::size_t skipped = 0;
};

// Parses and cleans every story file under input and writes one `.clean`
// file per document to output. Throws IoFailure, NoDocuments.
PreprocessReport cmd_preprocess(const fs::path& input, const fs::path& output);

struct AnalyzeOptions {
  std::size_t bin_width = 10;
  std::size_t top_k = 100;
};

// Writes article_lengths.csv, summary_lengths.csv and top_words.csv (article
// tokens) to out_dir.
void cmd_analyze(const fs::path& corpus_dir, const fs::path& out_dir,
                 const AnalyzeOptions& options = {});

struct TrainReport {
  models::ModelConfig model;
  optim::Algorithm algorithm = optim::Algorithm::kPso;
  std::size_t arity = 0;
  std::uint64_t evals = 0;
  std::size_t train_documents = 0;
  std::size_t validation_documents = 0;
  double initial_best = 0.0;
  double final_train_loss = 0.0;
  std::optional<double> final_validation_loss;
};

// Runs one experiment and writes params.slab, trace.csv, report.txt,
// vocab.tsv, embeddings.glove and config.txt to out_dir.
TrainReport cmd_train(const ExperimentConfig& cfg, const fs::path& out_dir);

struct DecodeRequest {
  fs::path params;
  // A corpus directory (cleaned or story files) or a single document file.
  fs::path input;
  fs::path output;
  // Training config; defaults to config.txt next to the parameter file.
  std::optional<fs::path> config;
};

struct DecodeReport {
  std::size_t documents = 0;
};

// Greedy-decodes every document and writes one summary per line to output,
// with document ids in `<output>.ids` and reference summaries in
// `<output>.ref`. Nothing is written when the parameter file's digest does
// not match the config. Throws DigestMismatch, IoFailure.
DecodeReport cmd_decode(const DecodeRequest& request);

// Scores two line-aligned files and writes the ROUGE CSV to report.
// Throws LineCountMismatch.
std::vector<eval::RougeRow> cmd_rouge(const fs::path& candidates, const fs::path& references,
                                      const fs::path& report);

struct MatrixOptions {
  bool include_random = false;
};

// Trains every model with every optimizer on the same data, decodes the held
// out documents and writes matrix.csv with mean ROUGE-1/2/L per cell.
void cmd_matrix(const ExperimentConfig& base, const fs::path& out_dir,
                const MatrixOptions& options = {});

}  // namespace slab::cli

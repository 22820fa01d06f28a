#include "slab/cli/commands.hpp"

#include <algorithm>
#include <cstdio>

#include "slab/analyze.hpp"
#include "slab/error.hpp"
#include "slab/format.hpp"
#include "slab/log.hpp"
#include "slab/models/model.hpp"
#include "slab/models/param_file.hpp"
#include "slab/optim/model_objective.hpp"
#include "slab/vocab.hpp"

namespace slab::cli {
namespace {

void require_exists(const fs::path& path, const std::string& what) {
  if (!fs::exists(path)) fail(ErrorKind::kIoFailure, what + " " + path.string() + " does not exist");
}

void make_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

// Tokenization shared by training and decoding: whitespace split of the
// cleaned text, then optional gazetteer tagging.
struct TextPipeline {
  vocab::Gazetteer gazetteer;
  std::size_t src_maxlen = 0;
  std::size_t tgt_maxlen = 0;

  std::vector<std::string> tokens(std::string_view text) const {
    auto t = analyze::whitespace_tokens(text);
    return gazetteer.empty() ? t : vocab::tag_entities(t, gazetteer);
  }

  optim::TrainingPair encode(const corpus::Document& doc, const vocab::Vocabulary& v) const {
    return {vocab::encode(tokens(doc.article_clean), v, src_maxlen, true),
            vocab::encode(tokens(doc.summary_clean), v, tgt_maxlen, true)};
  }
};

TextPipeline make_pipeline(const ExperimentConfig& cfg) {
  TextPipeline p;
  if (cfg.data.gazetteer) p.gazetteer = vocab::Gazetteer::load(*cfg.data.gazetteer);
  p.src_maxlen = cfg.data.src_maxlen;
  p.tgt_maxlen = cfg.data.tgt_maxlen;
  return p;
}

models::ModelConfig resolve_model(const ExperimentConfig& cfg, std::size_t vocab_size) {
  models::ModelConfig m = cfg.model;
  m.vocab_size = vocab_size;
  m.src_maxlen = cfg.data.src_maxlen;
  m.tgt_maxlen = cfg.data.tgt_maxlen;
  m.validate();
  return m;
}

corpus::CorpusSplits load_splits(const ExperimentConfig& cfg) {
  if (cfg.data.corpus.empty()) fail(ErrorKind::kBadConfig, "data.corpus is not set");
  require_exists(cfg.data.corpus, "corpus directory");
  corpus::StoryLoad load = corpus::load_any_directory(cfg.data.corpus);
  if (load.documents.empty()) {
    fail(ErrorKind::kNoDocuments, "no documents under " + cfg.data.corpus.string());
  }
  auto splits = corpus::split_documents(std::move(load.documents), cfg.data.fractions, cfg.seed);
  splits.skipped = load.skipped;
  return splits;
}

std::vector<optim::TrainingPair> encode_front(const std::vector<corpus::Document>& docs,
                                              std::size_t count, const TextPipeline& pipeline,
                                              const vocab::Vocabulary& v) {
  std::vector<optim::TrainingPair> out;
  for (std::size_t i = 0; i < std::min(count, docs.size()); ++i) {
    out.push_back(pipeline.encode(docs[i], v));
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// A single input file is a cleaned document when it has an `@summary` line,
// a story when it has `@highlight` lines, and plain article text otherwise.
corpus::Document load_single_document(const fs::path& path) {
  const std::string text = corpus::read_file(path);
  const std::string id = path.stem().string();
  const auto has_line = [&](std::string_view marker) {
    for (const auto& line : eval::split_lines(text))
      if (line == marker) return true;
    return false;
  };
  if (has_line("@summary")) return corpus::parse_clean(text, id);
  corpus::Document doc;
  if (has_line("@highlight")) {
    try {
      return corpus::clean_document(corpus::parse_story(text, id));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEmptyArticle) throw;
      doc.id = id;
      return doc;
    }
  }
  doc.id = id;
  doc.article_raw = text;
  if (analyze::whitespace_tokens(text).empty()) return doc;
  return corpus::clean_document(std::move(doc));
}

std::string report_text(const TrainReport& r, const ExperimentConfig& cfg) {
  char digest[17];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(r.model.digest()));
  std::string out;
  out += "model = " + std::string(models::model_kind_name(r.model.kind)) + "\n";
  out += "optimizer = " + std::string(optim::algorithm_name(r.algorithm)) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  out += "arity = " + std::to_string(r.arity) + "\n";
  out += "evals = " + std::to_string(r.evals) + "\n";
  out += "population = " + std::to_string(cfg.optimizer.population) + "\n";
  out += "iterations = " + std::to_string(cfg.optimizer.iterations) + "\n";
  out += "vocab_size = " + std::to_string(r.model.vocab_size) + "\n";
  out += "train_documents = " + std::to_string(r.train_documents) + "\n";
  out += "validation_documents = " + std::to_string(r.validation_documents) + "\n";
  out += "initial_best_loss = " + format_double(r.initial_best) + "\n";
  out += "final_train_loss = " + format_double(r.final_train_loss) + "\n";
  out += "final_validation_loss = " +
         (r.final_validation_loss ? format_double(*r.final_validation_loss) : "none") + "\n";
  out += "config_digest = " + std::string(digest) + "\n";
  return out;
}

}  // namespace

PreprocessReport cmd_preprocess(const fs::path& input, const fs::path& output) {
  require_exists(input, "input directory");
  corpus::StoryLoad load = corpus::load_story_directory(input);
  if (load.documents.empty()) {
    fail(ErrorKind::kNoDocuments, "no parseable story files under " + input.string());
  }
  corpus::write_clean_corpus(load.documents, output);
  log_info("preprocess: " + std::to_string(load.documents.size()) + " parsed, " +
           std::to_string(load.skipped) + " skipped");
  return {load.documents.size(), load.skipped};
}

void cmd_analyze(const fs::path& corpus_dir, const fs::path& out_dir, const AnalyzeOptions& options) {
  require_exists(corpus_dir, "corpus directory");
  const auto docs = corpus::load_any_directory(corpus_dir).documents;
  make_directory(out_dir);
  using analyze::Field;
  corpus::write_file(out_dir / "article_lengths.csv",
                     analyze::histogram_csv(
                         analyze::length_histogram(docs, Field::kArticle, options.bin_width)));
  corpus::write_file(out_dir / "summary_lengths.csv",
                     analyze::histogram_csv(
                         analyze::length_histogram(docs, Field::kSummary, options.bin_width)));
  corpus::write_file(out_dir / "top_words.csv",
                     analyze::frequency_csv(
                         analyze::word_frequencies(docs, Field::kArticle, options.top_k)));
}

TrainReport cmd_train(const ExperimentConfig& cfg, const fs::path& out_dir) {
  if (cfg.data.gazetteer) require_exists(*cfg.data.gazetteer, "gazetteer");
  if (cfg.data.embeddings) require_exists(*cfg.data.embeddings, "embeddings file");
  const corpus::CorpusSplits splits = load_splits(cfg);
  const TextPipeline pipeline = make_pipeline(cfg);

  std::vector<std::vector<std::string>> sequences;
  for (const auto& doc : splits.train) {
    sequences.push_back(pipeline.tokens(doc.article_clean));
    sequences.push_back(pipeline.tokens(doc.summary_clean));
  }
  if (sequences.empty()) fail(ErrorKind::kEmptyBatch, "the train split is empty");
  const vocab::Vocabulary v = vocab::Vocabulary::build(sequences, cfg.data.min_count);
  const models::ModelConfig model = resolve_model(cfg, v.size());

  const vocab::EmbeddingMatrix emb =
      cfg.data.embeddings ? vocab::load_embeddings(*cfg.data.embeddings, v, model.embed_dim, cfg.seed)
                          : vocab::random_embeddings(v, model.embed_dim, cfg.seed);

  auto train_batch = encode_front(splits.train, cfg.data.batch_size, pipeline, v);
  auto val_batch = encode_front(splits.validation, cfg.data.validation_size, pipeline, v);
  TrainReport report;
  report.model = model;
  report.algorithm = cfg.algorithm;
  report.train_documents = train_batch.size();
  report.validation_documents = val_batch.size();

  const optim::Objective objective = optim::make_objective(model, std::move(train_batch), emb);
  std::optional<optim::Objective> validation;
  if (!val_batch.empty()) {
    validation.emplace(optim::make_objective(model, std::move(val_batch), emb));
  } else {
    log_warning("validation split is empty; trace has no validation column");
  }
  report.arity = objective.arity();

  std::vector<double> val_trace;
  std::vector<double> last_point;
  optim::OptConfig opt = cfg.optimizer;
  opt.seed = cfg.seed;
  if (validation) {
    opt.observer = [&](std::size_t, std::span<const double> best, double) {
      if (val_trace.empty() || !std::equal(best.begin(), best.end(), last_point.begin(), last_point.end())) {
        last_point.assign(best.begin(), best.end());
        val_trace.push_back(validation->evaluate(best));
      } else {
        val_trace.push_back(val_trace.back());
      }
    };
  }
  log_info("train: " + std::string(models::model_kind_name(model.kind)) + " with " +
           std::string(optim::algorithm_name(cfg.algorithm)) + ", arity " +
           std::to_string(report.arity));
  const optim::OptResult result = optim::minimize(cfg.algorithm, objective, opt);

  report.evals = result.evals_used;
  report.initial_best = result.trace.front();
  report.final_train_loss = result.best_value;
  if (!val_trace.empty()) report.final_validation_loss = val_trace.back();

  make_directory(out_dir);
  models::write_param_file(out_dir / kParamsFile, model.digest(), result.best_point);
  corpus::write_file(out_dir / kTraceFile, optim::trace_csv(result, val_trace));
  corpus::write_file(out_dir / kVocabFile, v.serialize());
  corpus::write_file(out_dir / kEmbeddingsFile, vocab::serialize_embeddings(emb, v));
  corpus::write_file(out_dir / kConfigFile, serialize_experiment_config(cfg));
  corpus::write_file(out_dir / kReportFile, report_text(report, cfg));
  log_info("train: loss " + format_double(report.initial_best) + " -> " +
           format_double(report.final_train_loss));
  return report;
}

DecodeReport cmd_decode(const DecodeRequest& request) {
  const fs::path dir = request.params.parent_path();
  const ExperimentConfig cfg = load_experiment_config(request.config.value_or(dir / kConfigFile));
  const vocab::Vocabulary v = vocab::Vocabulary::parse(corpus::read_file(dir / kVocabFile));
  const models::ModelConfig model_cfg = resolve_model(cfg, v.size());
  const models::ParamFile params = models::read_param_file(request.params);
  if (params.digest != model_cfg.digest()) {
    fail(ErrorKind::kDigestMismatch, "parameter file " + request.params.string() +
                                         " was written for a different model configuration");
  }
  const vocab::EmbeddingMatrix emb =
      vocab::load_embeddings(dir / kEmbeddingsFile, v, model_cfg.embed_dim, cfg.seed);
  const auto model = models::make_model(model_cfg);
  const TextPipeline pipeline = make_pipeline(cfg);

  require_exists(request.input, "decode input");
  std::vector<corpus::Document> docs;
  if (fs::is_directory(request.input)) {
    docs = corpus::load_any_directory(request.input).documents;
  } else {
    docs.push_back(load_single_document(request.input));
  }

  std::string summaries, ids, refs;
  for (const auto& doc : docs) {
    // An empty article yields an empty summary.
    if (!analyze::whitespace_tokens(doc.article_clean).empty()) {
      const auto src = vocab::encode(pipeline.tokens(doc.article_clean), v, cfg.data.src_maxlen, true);
      const auto out = model->greedy_decode(params.values, src, emb, cfg.data.tgt_maxlen);
      summaries += join_tokens(vocab::decode_ids(out, v));
    }
    summaries += '\n';
    ids += doc.id + '\n';
    refs += doc.summary_clean + '\n';
  }
  if (!request.output.parent_path().empty()) make_directory(request.output.parent_path());
  corpus::write_file(request.output, summaries);
  corpus::write_file(request.output.string() + ".ids", ids);
  corpus::write_file(request.output.string() + ".ref", refs);
  return {docs.size()};
}

std::vector<eval::RougeRow> cmd_rouge(const fs::path& candidates, const fs::path& references,
                                      const fs::path& report) {
  auto rows = eval::score_lines(corpus::read_file(candidates), corpus::read_file(references));
  if (!report.parent_path().empty()) make_directory(report.parent_path());
  corpus::write_file(report, eval::rouge_csv(rows));
  return rows;
}

void cmd_matrix(const ExperimentConfig& base, const fs::path& out_dir, const MatrixOptions& options) {
  const corpus::CorpusSplits splits = load_splits(base);
  const std::vector<corpus::Document>* held_out = &splits.test;
  if (held_out->empty()) held_out = &splits.validation;
  if (held_out->empty()) {
    log_warning("no held-out documents; scoring on the train split");
    held_out = &splits.train;
  }
  make_directory(out_dir);
  corpus::write_clean_corpus(*held_out, out_dir / "held_out");

  std::vector<optim::Algorithm> algorithms{optim::Algorithm::kPso, optim::Algorithm::kWoa,
                                           optim::Algorithm::kAco};
  if (options.include_random) algorithms.push_back(optim::Algorithm::kRandom);

  std::string csv =
      "model,optimizer,rouge1_f,rouge2_f,rougel_f,rouge1_r,rouge2_r,rougel_r,final_train_loss\n";
  for (models::ModelKind kind :
       {models::ModelKind::kTransformer, models::ModelKind::kCoverage, models::ModelKind::kPointer}) {
    for (optim::Algorithm algorithm : algorithms) {
      ExperimentConfig cfg = base;
      cfg.model.kind = kind;
      cfg.algorithm = algorithm;
      const std::string name = std::string(models::model_kind_name(kind)) + "_" +
                               std::string(optim::algorithm_name(algorithm));
      const fs::path cell = out_dir / name;
      const TrainReport report = cmd_train(cfg, cell);
      cmd_decode({cell / kParamsFile, out_dir / "held_out", cell / "summaries.txt", std::nullopt});
      const auto rows = cmd_rouge(cell / "summaries.txt", cell / "summaries.txt.ref",
                                  cell / "rouge.csv");
      const eval::RougeRow& mean = rows.back();
      csv += std::string(models::model_kind_name(kind)) + "," +
             std::string(optim::algorithm_name(algorithm)) + "," + format_double(mean.r1.f1) + "," +
             format_double(mean.r2.f1) + "," + format_double(mean.rl.f1) + "," +
             format_double(mean.r1.recall) + "," + format_double(mean.r2.recall) + "," +
             format_double(mean.rl.recall) + "," + format_double(report.final_train_loss) + "\n";
    }
  }
  corpus::write_file(out_dir / "matrix.csv", csv);
}

}  // namespace slab::cli

#include "slab/models/model.hpp"

#include <cmath>

#include "models_internal.hpp"
#include "slab/error.hpp"

namespace slab::models {

namespace detail {

EmbeddingSource::EmbeddingSource(const ModelConfig& cfg, const WeightsView& w,
                                 std::optional<std::size_t> entry,
                                 const vocab::EmbeddingMatrix& emb)
    : fixed_(&emb), dim_(cfg.embed_dim), rows_(cfg.vocab_size) {
  if (entry) table_ = w.matrix(*entry);
}

std::span<const double> EmbeddingSource::row(vocab::TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= rows_) {
    fail(ErrorKind::kShapeMismatch, "token id " + std::to_string(id) + " outside the embedding table");
  }
  if (table_) {
    // The pad row stays zero even when the table is searched.
    if (id == vocab::kPadId) return fixed_->row(vocab::kPadId);
    return table_->row(static_cast<std::size_t>(id));
  }
  return fixed_->row(id);
}

Matrix EmbeddingSource::gather(const vocab::TokenIds& ids, double scale, double dropout,
                               const RngStream* stream) const {
  Matrix out(ids.true_length, dim_);
  for (std::size_t t = 0; t < ids.true_length; ++t) {
    const auto src = row(ids.ids[t]);
    auto dst = out.row(t);
    for (std::size_t c = 0; c < dim_; ++c) dst[c] = scale * src[c];
  }
  if (stream && dropout > 0.0) {
    RngStream local = *stream;
    apply_dropout(out.values(), dropout, local);
  }
  return out;
}

void apply_dropout(std::span<double> values, double rate, RngStream& stream) {
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& v : values) v = stream.next_unit() < rate ? 0.0 : v * keep_scale;
}

vocab::TokenIds finish_decode(const std::vector<vocab::TokenId>& generated, std::size_t max_steps) {
  vocab::TokenIds out;
  out.ids.reserve(max_steps + 2);
  out.ids.push_back(vocab::kStartId);
  out.ids.insert(out.ids.end(), generated.begin(), generated.end());
  out.true_length = out.ids.size();
  out.ids.resize(max_steps + 2, vocab::kPadId);
  return out;
}

}  // namespace detail

void Model::check_inputs(std::span<const double> params, const vocab::EmbeddingMatrix& emb) const {
  if (params.size() != layout().total()) {
    fail(ErrorKind::kConfigMismatch, "parameter vector has " + std::to_string(params.size()) +
                                         " values, model needs " +
                                         std::to_string(layout().total()));
  }
  if (emb.dim() != cfg_.embed_dim || emb.rows() != cfg_.vocab_size) {
    fail(ErrorKind::kConfigMismatch,
         "embedding table is " + std::to_string(emb.rows()) + "x" + std::to_string(emb.dim()) +
             ", model expects " + std::to_string(cfg_.vocab_size) + "x" +
             std::to_string(cfg_.embed_dim));
  }
}

std::unique_ptr<Model> make_model(const ModelConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case ModelKind::kCoverage: return std::make_unique<detail::CoverageModel>(cfg);
    case ModelKind::kPointer: return std::make_unique<detail::PointerModel>(cfg);
    case ModelKind::kTransformer: return std::make_unique<detail::TransformerModel>(cfg);
  }
  fail(ErrorKind::kBadConfig, "unknown model kind");
}

ParamLayout build_layout(const ModelConfig& cfg) { return make_model(cfg)->layout(); }

double sequence_loss(const Matrix& logits, const vocab::TokenIds& targets, vocab::TokenId pad_id,
                     double covloss, double lambda) {
  const std::size_t n = targets.true_length;
  if (logits.rows() < n) {
    fail(ErrorKind::kShapeMismatch, "logits have " + std::to_string(logits.rows()) +
                                        " rows for " + std::to_string(n) + " targets");
  }
  if (n == 0) return 0.0;
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const vocab::TokenId target = targets.ids[t];
    if (target == pad_id) continue;
    if (target < 0 || static_cast<std::size_t>(target) >= logits.cols()) {
      fail(ErrorKind::kShapeMismatch, "target id " + std::to_string(target) + " outside logits");
    }
    total += log_sum_exp(logits.row(t)) - logits(t, static_cast<std::size_t>(target));
    ++counted;
  }
  const double mean = counted ? total / static_cast<double>(counted) : 0.0;
  return mean + lambda * covloss / static_cast<double>(n);
}

std::pair<vocab::TokenIds, vocab::TokenIds> teacher_forcing(const vocab::TokenIds& summary) {
  if (summary.true_length < 2 || summary.ids.front() != vocab::kStartId) {
    fail(ErrorKind::kShapeMismatch, "teacher forcing needs a marker-wrapped summary");
  }
  const std::size_t cap = summary.capacity() - 1;
  vocab::TokenIds input;
  input.ids.assign(summary.ids.begin(), summary.ids.begin() + static_cast<std::ptrdiff_t>(cap));
  input.true_length = summary.true_length - 1;
  if (input.true_length < cap) input.ids[input.true_length] = vocab::kPadId;

  vocab::TokenIds targets;
  targets.ids.assign(summary.ids.begin() + 1, summary.ids.end());
  targets.true_length = summary.true_length - 1;
  return {std::move(input), std::move(targets)};
}

Matrix transformer_forward(std::span<const double> params, const vocab::TokenIds& src,
                           const vocab::TokenIds& tgt_in, const vocab::EmbeddingMatrix& emb,
                           const ModelConfig& cfg) {
  if (cfg.kind != ModelKind::kTransformer) {
    fail(ErrorKind::kConfigMismatch, "transformer_forward needs a transformer config");
  }
  return make_model(cfg)->forward(params, src, tgt_in, emb).logits;
}

ForwardResult seq2seq_forward(std::span<const double> params, const vocab::TokenIds& src,
                              const vocab::TokenIds& tgt_in, const vocab::EmbeddingMatrix& emb,
                              const ModelConfig& cfg) {
  if (cfg.kind != ModelKind::kCoverage) {
    fail(ErrorKind::kConfigMismatch, "seq2seq_forward needs a coverage config");
  }
  return make_model(cfg)->forward(params, src, tgt_in, emb);
}

vocab::TokenIds greedy_decode(std::span<const double> params, const vocab::TokenIds& src,
                              const vocab::EmbeddingMatrix& emb, const ModelConfig& cfg,
                              std::size_t max_steps) {
  return make_model(cfg)->greedy_decode(params, src, emb, max_steps);
}

}  // namespace slab::models

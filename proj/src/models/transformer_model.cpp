#include <algorithm>
#include <cmath>

#include "models_internal.hpp"
#include "slab/error.hpp"
#include "slab/kernels.hpp"

namespace slab::models::detail {
namespace {

void add_in_place(Matrix& x, const Matrix& y) {
  auto dst = x.values();
  auto src = y.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

HeadObserver head_observer(const ForwardOptions& opts) {
  if (!opts.observer || !opts.observer->distribution) return {};
  const auto* obs = opts.observer;
  return [obs](std::size_t, const Matrix& weights) {
    for (std::size_t i = 0; i < weights.rows(); ++i) {
      obs->distribution(AttentionSite::kTransformerHead, weights.row(i));
    }
  };
}

}  // namespace

TransformerModel::TransformerModel(ModelConfig cfg)
    : Model(std::move(cfg)),
      t_(build_transformer_layout(cfg_)),
      positions_(positional_encoding(std::max(cfg_.src_maxlen, cfg_.tgt_maxlen) + 2,
                                     cfg_.embed_dim)) {}

Matrix TransformerModel::encode(const WeightsView& w, const EmbeddingSource& emb,
                                const vocab::TokenIds& src, const ForwardOptions& opts,
                                RngStream* dropout) const {
  const double scale = std::sqrt(static_cast<double>(cfg_.embed_dim));
  Matrix x = emb.gather(src, scale, 0.0, nullptr);
  if (x.rows() > positions_.rows()) fail(ErrorKind::kConfigMismatch, "source exceeds src_maxlen");
  for (std::size_t i = 0; i < x.rows(); ++i) kernels::axpy(1.0, positions_.row(i), x.row(i));
  if (dropout) apply_dropout(x.values(), cfg_.dropout, *dropout);

  const HeadObserver observer = head_observer(opts);
  for (const auto& blk : t_.encoder) {
    add_in_place(x, multi_head_attention(x, x, x, cfg_.heads, attention_weights(w, blk.self),
                                         false, observer));
    layer_norm_rows(x, w.vector(blk.norm1.gain), w.vector(blk.norm1.bias));
    add_in_place(x, feed_forward(x, ffn_weights(w, blk.ffn)));
    layer_norm_rows(x, w.vector(blk.norm2.gain), w.vector(blk.norm2.bias));
  }
  return x;
}

Matrix TransformerModel::decode(const WeightsView& w, const EmbeddingSource& emb,
                                const Matrix& memory, const vocab::TokenIds& tgt_in,
                                const ForwardOptions& opts, RngStream* dropout) const {
  const double scale = std::sqrt(static_cast<double>(cfg_.embed_dim));
  Matrix y = emb.gather(tgt_in, scale, 0.0, nullptr);
  if (y.rows() > positions_.rows()) fail(ErrorKind::kConfigMismatch, "target exceeds tgt_maxlen");
  for (std::size_t i = 0; i < y.rows(); ++i) kernels::axpy(1.0, positions_.row(i), y.row(i));
  if (dropout) apply_dropout(y.values(), cfg_.dropout, *dropout);

  const HeadObserver observer = head_observer(opts);
  for (const auto& blk : t_.decoder) {
    add_in_place(y, multi_head_attention(y, y, y, cfg_.heads, attention_weights(w, blk.self),
                                         true, observer));
    layer_norm_rows(y, w.vector(blk.norm1.gain), w.vector(blk.norm1.bias));
    add_in_place(y, multi_head_attention(y, memory, memory, cfg_.heads,
                                         attention_weights(w, blk.cross), false, observer));
    layer_norm_rows(y, w.vector(blk.norm2.gain), w.vector(blk.norm2.bias));
    add_in_place(y, feed_forward(y, ffn_weights(w, blk.ffn)));
    layer_norm_rows(y, w.vector(blk.norm3.gain), w.vector(blk.norm3.bias));
  }

  Matrix logits(y.rows(), cfg_.vocab_size);
  for (std::size_t i = 0; i < y.rows(); ++i) {
    matvec(w.matrix(t_.logits_weight), y.row(i), w.vector(t_.logits_bias), logits.row(i));
  }
  return logits;
}

ForwardResult TransformerModel::forward(std::span<const double> params,
                                        const vocab::TokenIds& src, const vocab::TokenIds& tgt_in,
                                        const vocab::EmbeddingMatrix& emb,
                                        const ForwardOptions& opts) const {
  check_inputs(params, emb);
  if (src.true_length == 0 || tgt_in.true_length == 0) {
    fail(ErrorKind::kShapeMismatch, "transformer needs non-empty source and target prefixes");
  }
  const WeightsView w(layout(), params);
  const EmbeddingSource source(cfg_, w,
                               cfg_.train_embeddings ? std::optional<std::size_t>(t_.embedding)
                                                     : std::nullopt,
                               emb);
  std::optional<RngStream> src_drop, tgt_drop;
  if (opts.dropout_stream && cfg_.dropout > 0.0) {
    src_drop = *opts.dropout_stream;
    tgt_drop = RngStream(src_drop->seed(), src_drop->stream_id() ^ 0x5A5A5A5AULL);
  }
  const Matrix memory = encode(w, source, src, opts, src_drop ? &*src_drop : nullptr);
  ForwardResult result;
  result.logits = decode(w, source, memory, tgt_in, opts, tgt_drop ? &*tgt_drop : nullptr);
  return result;
}

vocab::TokenIds TransformerModel::greedy_decode(std::span<const double> params,
                                                const vocab::TokenIds& src,
                                                const vocab::EmbeddingMatrix& emb,
                                                std::size_t max_steps) const {
  check_inputs(params, emb);
  const WeightsView w(layout(), params);
  const EmbeddingSource source(cfg_, w,
                               cfg_.train_embeddings ? std::optional<std::size_t>(t_.embedding)
                                                     : std::nullopt,
                               emb);
  const Matrix memory = encode(w, source, src, {}, nullptr);

  std::vector<vocab::TokenId> generated;
  vocab::TokenIds prefix;
  prefix.ids.push_back(vocab::kStartId);
  prefix.true_length = 1;
  for (std::size_t step = 0; step < max_steps && prefix.true_length < positions_.rows(); ++step) {
    const Matrix logits = decode(w, source, memory, prefix, {}, nullptr);
    const auto next = static_cast<vocab::TokenId>(argmax(logits.row(logits.rows() - 1)));
    generated.push_back(next);
    if (next == vocab::kEndId) break;
    prefix.ids.push_back(next);
    ++prefix.true_length;
  }
  return finish_decode(generated, max_steps);
}

}  // namespace slab::models::detail

#include "slab/models/transformer.hpp"

#include <cmath>
#include <limits>

#include "slab/error.hpp"
#include "slab/kernels.hpp"

namespace slab::models {
namespace {

Matrix project_rows(const Matrix& x, MatrixView w) {
  if (w.cols != x.cols()) {
    fail(ErrorKind::kShapeMismatch, "projection expects width " + std::to_string(w.cols) +
                                        ", got " + std::to_string(x.cols()));
  }
  Matrix out(x.rows(), w.rows);
  for (std::size_t i = 0; i < x.rows(); ++i) matvec(w, x.row(i), {}, out.row(i));
  return out;
}

TransformerLayout::Attention add_attention(ParamLayout& layout, const std::string& prefix,
                                           std::size_t E) {
  return {layout.add(prefix + ".Wq", E, E), layout.add(prefix + ".Wk", E, E),
          layout.add(prefix + ".Wv", E, E), layout.add(prefix + ".Wo", E, E)};
}

TransformerLayout::Norm add_norm(ParamLayout& layout, const std::string& prefix, std::size_t E) {
  return {layout.add(prefix + ".gain", E, 1), layout.add(prefix + ".bias", E, 1)};
}

TransformerLayout::Ffn add_ffn(ParamLayout& layout, const std::string& prefix,
                               const ModelConfig& cfg) {
  TransformerLayout::Ffn f;
  std::size_t in = cfg.embed_dim;
  for (std::size_t d = 0; d < cfg.ffn_depth; ++d) {
    const std::string p = prefix + ".l" + std::to_string(d);
    f.hidden.push_back(layout.add(p + ".W", cfg.ffn_width, in));
    f.hidden_bias.push_back(layout.add(p + ".b", cfg.ffn_width, 1));
    in = cfg.ffn_width;
  }
  f.out = layout.add(prefix + ".out.W", cfg.embed_dim, cfg.ffn_width);
  f.out_bias = layout.add(prefix + ".out.b", cfg.embed_dim, 1);
  return f;
}

}  // namespace

Matrix positional_encoding(std::size_t length, std::size_t dim) {
  if (dim % 2 != 0) fail(ErrorKind::kOddDim, "positional encoding needs an even width");
  Matrix pe(length, dim);
  for (std::size_t pos = 0; pos < length; ++pos) {
    for (std::size_t k = 0; k < dim / 2; ++k) {
      const double angle = static_cast<double>(pos) /
                           std::pow(10000.0, static_cast<double>(2 * k) / static_cast<double>(dim));
      pe(pos, 2 * k) = std::sin(angle);
      pe(pos, 2 * k + 1) = std::cos(angle);
    }
  }
  return pe;
}

Matrix multi_head_attention(const Matrix& q, const Matrix& k, const Matrix& v, std::size_t heads,
                            const MultiHeadWeights& w, bool causal_mask,
                            const HeadObserver& observer) {
  const std::size_t E = w.query.rows;
  if (heads == 0 || E % heads != 0) {
    fail(ErrorKind::kShapeMismatch, "model width " + std::to_string(E) +
                                        " is not divisible by " + std::to_string(heads) + " heads");
  }
  if (k.rows() != v.rows() || k.rows() == 0) {
    fail(ErrorKind::kShapeMismatch, "keys and values must share a non-zero length");
  }
  const Matrix Q = project_rows(q, w.query);
  const Matrix K = project_rows(k, w.key);
  const Matrix V = project_rows(v, w.value);
  const std::size_t dh = E / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const std::size_t nq = q.rows();
  const std::size_t nk = k.rows();

  Matrix concat(nq, E);
  std::vector<double> scores(nk);
  Matrix head_weights;
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t off = h * dh;
    if (observer) head_weights = Matrix(nq, nk);
    for (std::size_t i = 0; i < nq; ++i) {
      const auto qi = Q.row(i).subspan(off, dh);
      for (std::size_t j = 0; j < nk; ++j) {
        scores[j] = causal_mask && j > i ? -std::numeric_limits<double>::infinity()
                                         : kernels::dot(qi, K.row(j).subspan(off, dh)) * scale;
      }
      softmax_inplace(scores);
      auto out = concat.row(i).subspan(off, dh);
      for (std::size_t j = 0; j < nk; ++j) {
        if (scores[j] != 0.0) kernels::axpy(scores[j], V.row(j).subspan(off, dh), out);
      }
      if (observer) std::copy(scores.begin(), scores.end(), head_weights.row(i).begin());
    }
    if (observer) observer(h, head_weights);
  }
  return project_rows(concat, w.output);
}

void layer_norm_rows(Matrix& x, std::span<const double> gain, std::span<const double> bias) {
  const std::size_t E = x.cols();
  if (gain.size() != E || bias.size() != E) {
    fail(ErrorKind::kShapeMismatch, "layer norm parameters do not match the row width");
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = x.row(i);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(E);
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    var /= static_cast<double>(E);
    const double inv = 1.0 / std::sqrt(var + kLayerNormEpsilon);
    for (std::size_t c = 0; c < E; ++c) row[c] = (row[c] - mean) * inv * (1.0 + gain[c]) + bias[c];
  }
}

Matrix feed_forward(const Matrix& x, const FeedForwardWeights& w) {
  Matrix out(x.rows(), w.out.rows);
  std::vector<double> a, b;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    a.assign(x.row(i).begin(), x.row(i).end());
    for (std::size_t d = 0; d < w.hidden.size(); ++d) {
      b.resize(w.hidden[d].rows);
      matvec(w.hidden[d], a, w.hidden_bias[d], b);
      for (double& v : b) v = v > 0.0 ? v : 0.0;
      a.swap(b);
    }
    matvec(w.out, a, w.out_bias, out.row(i));
  }
  return out;
}

TransformerLayout build_transformer_layout(const ModelConfig& cfg) {
  TransformerLayout t;
  const std::size_t E = cfg.embed_dim;
  if (cfg.train_embeddings) t.embedding = t.layout.add("embedding", cfg.vocab_size, E);
  for (std::size_t b = 0; b < cfg.enc_blocks; ++b) {
    const std::string p = "enc" + std::to_string(b);
    TransformerLayout::EncoderBlock blk;
    blk.self = add_attention(t.layout, p + ".self", E);
    blk.norm1 = add_norm(t.layout, p + ".norm1", E);
    blk.ffn = add_ffn(t.layout, p + ".ffn", cfg);
    blk.norm2 = add_norm(t.layout, p + ".norm2", E);
    t.encoder.push_back(std::move(blk));
  }
  for (std::size_t b = 0; b < cfg.dec_blocks; ++b) {
    const std::string p = "dec" + std::to_string(b);
    TransformerLayout::DecoderBlock blk;
    blk.self = add_attention(t.layout, p + ".self", E);
    blk.norm1 = add_norm(t.layout, p + ".norm1", E);
    blk.cross = add_attention(t.layout, p + ".cross", E);
    blk.norm2 = add_norm(t.layout, p + ".norm2", E);
    blk.ffn = add_ffn(t.layout, p + ".ffn", cfg);
    blk.norm3 = add_norm(t.layout, p + ".norm3", E);
    t.decoder.push_back(std::move(blk));
  }
  t.logits_weight = t.layout.add("logits.W", cfg.vocab_size, E);
  t.logits_bias = t.layout.add("logits.b", cfg.vocab_size, 1);
  return t;
}

MultiHeadWeights attention_weights(const WeightsView& w, const TransformerLayout::Attention& a) {
  return {w.matrix(a.query), w.matrix(a.key), w.matrix(a.value), w.matrix(a.output)};
}

FeedForwardWeights ffn_weights(const WeightsView& w, const TransformerLayout::Ffn& f) {
  FeedForwardWeights out;
  for (std::size_t d = 0; d < f.hidden.size(); ++d) {
    out.hidden.push_back(w.matrix(f.hidden[d]));
    out.hidden_bias.push_back(w.vector(f.hidden_bias[d]));
  }
  out.out = w.matrix(f.out);
  out.out_bias = w.vector(f.out_bias);
  return out;
}

}  // namespace slab::models

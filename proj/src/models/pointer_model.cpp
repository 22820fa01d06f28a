// Pointer network: each decoder step emits a position in the source. For
// training, the position distribution is folded onto the vocabulary
// (probability of a token = total weight on the positions holding it) and
// returned as log-probabilities, so the shared cross-entropy applies.
// Target tokens that never occur in the source get the floor probability.

#include <cmath>

#include "models_internal.hpp"
#include "slab/error.hpp"

namespace slab::models::detail {
namespace {

constexpr double kProbabilityFloor = 1e-12;

std::size_t source_position(std::span<const vocab::TokenId> src, vocab::TokenId token) {
  for (std::size_t j = 0; j < src.size(); ++j)
    if (src[j] == token) return j;
  return 0;
}

}  // namespace

PointerModel::PointerModel(ModelConfig cfg) : Model(std::move(cfg)) {
  const auto& c = cfg_;
  const std::size_t H = c.hidden;
  if (c.train_embeddings) idx_.embedding = layout_.add("embedding", c.vocab_size, c.embed_dim);
  idx_.enc_fwd = add_cell_layout(layout_, "enc.fwd", c.cell, c.embed_dim, H);
  idx_.enc_bwd = add_cell_layout(layout_, "enc.bwd", c.cell, c.embed_dim, H);
  idx_.dec = add_cell_layout(layout_, "dec", c.cell, 2 * H, H);
  idx_.w1 = layout_.add("ptr.W1", H, 2 * H);
  idx_.w2 = layout_.add("ptr.W2", H, H);
  idx_.v = layout_.add("ptr.v", H, 1);
}

ForwardResult PointerModel::forward(std::span<const double> params, const vocab::TokenIds& src,
                                    const vocab::TokenIds& tgt_in,
                                    const vocab::EmbeddingMatrix& emb,
                                    const ForwardOptions& opts) const {
  check_inputs(params, emb);
  const WeightsView w(layout_, params);
  const EmbeddingSource source(cfg_, w, idx_.embedding, emb);
  const bool drop = opts.dropout_stream && cfg_.dropout > 0.0;
  const Matrix enc =
      bidirectional_encode(source.gather(src, 1.0, cfg_.dropout, drop ? opts.dropout_stream : nullptr),
                           cell_weights(w, idx_.enc_fwd, cfg_.cell, cfg_.hidden),
                           cell_weights(w, idx_.enc_bwd, cfg_.cell, cfg_.hidden));
  const PointerParams pp{w.vector(idx_.v), w.matrix(idx_.w1), w.matrix(idx_.w2)};
  const CellWeights cell = cell_weights(w, idx_.dec, cfg_.cell, cfg_.hidden);
  const Matrix keys = project_encoder(enc, pp.w1);

  ForwardResult result;
  result.logits = Matrix(tgt_in.true_length, cfg_.vocab_size);
  DecoderState state{CellState::zero(cfg_.cell, cfg_.hidden), 0};
  std::vector<double> vocab_prob(cfg_.vocab_size);
  for (std::size_t t = 0; t < tgt_in.true_length; ++t) {
    // Teacher forcing: the decoder reads the source position of the reference token.
    PointerDecodeState forced;
    forced.selected.push_back(source_position(src.prefix(), tgt_in.ids[t]));
    PointerStepResult r = pointer_step_projected(enc, keys, state, pp, cell, forced);
    if (opts.observer && opts.observer->distribution) {
      opts.observer->distribution(AttentionSite::kPointer, r.distribution);
    }
    std::fill(vocab_prob.begin(), vocab_prob.end(), kProbabilityFloor);
    for (std::size_t j = 0; j < r.distribution.size(); ++j) {
      vocab_prob[static_cast<std::size_t>(src.ids[j])] += r.distribution[j];
    }
    auto row = result.logits.row(t);
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = std::log(vocab_prob[k]);
    state = std::move(r.state);
  }
  return result;
}

vocab::TokenIds PointerModel::greedy_decode(std::span<const double> params,
                                            const vocab::TokenIds& src,
                                            const vocab::EmbeddingMatrix& emb,
                                            std::size_t max_steps) const {
  check_inputs(params, emb);
  const WeightsView w(layout_, params);
  const EmbeddingSource source(cfg_, w, idx_.embedding, emb);
  const Matrix enc = bidirectional_encode(source.gather(src, 1.0, 0.0, nullptr),
                                          cell_weights(w, idx_.enc_fwd, cfg_.cell, cfg_.hidden),
                                          cell_weights(w, idx_.enc_bwd, cfg_.cell, cfg_.hidden));
  const PointerParams pp{w.vector(idx_.v), w.matrix(idx_.w1), w.matrix(idx_.w2)};
  const CellWeights cell = cell_weights(w, idx_.dec, cfg_.cell, cfg_.hidden);
  const Matrix keys = project_encoder(enc, pp.w1);

  std::vector<vocab::TokenId> generated;
  DecoderState state{CellState::zero(cfg_.cell, cfg_.hidden), 0};
  PointerDecodeState pointers;
  for (std::size_t step = 0; step < max_steps; ++step) {
    PointerStepResult r = pointer_step_projected(enc, keys, state, pp, cell, pointers);
    const vocab::TokenId token = src.ids[r.index];
    state = std::move(r.state);
    pointers = std::move(r.decode);
    // Pointing at the start marker emits nothing.
    if (token == vocab::kStartId) continue;
    generated.push_back(token);
    if (token == vocab::kEndId) break;
  }
  return finish_decode(generated, max_steps);
}

}  // namespace slab::models::detail

// Bidirectional recurrent encoder, attention decoder with a coverage vector.
// The previous step's context is fed into the decoder cell together with the
// input token, and the current context joins the decoder state in the output
// projection.

#include "models_internal.hpp"
#include "slab/error.hpp"

namespace slab::models::detail {
namespace {

struct CoverageDecoder {
  const WeightsView& w;
  const CoverageModel::Indices& idx;
  const ModelConfig& cfg;
  const EmbeddingSource& emb;
  Matrix enc;
  Matrix keys;
  CellWeights cell;
  AttentionWeights attn;
  CellState state;
  std::vector<double> context;
  std::vector<double> coverage;
  double total_loss = 0.0;

  CoverageDecoder(const WeightsView& weights, const CoverageModel::Indices& indices,
                  const ModelConfig& config, const EmbeddingSource& source, const Matrix& inputs)
      : w(weights), idx(indices), cfg(config), emb(source) {
    const auto fwd = cell_weights(w, idx.enc_fwd, cfg.cell, cfg.hidden);
    const auto bwd = cell_weights(w, idx.enc_bwd, cfg.cell, cfg.hidden);
    enc = bidirectional_encode(inputs, fwd, bwd);
    attn = {w.matrix(idx.enc_proj), w.matrix(idx.dec_proj), w.vector(idx.v),
            w.vector(idx.coverage_weight)[0]};
    keys = project_encoder(enc, attn.enc_proj);
    cell = cell_weights(w, idx.dec, cfg.cell, cfg.hidden);
    state = CellState::zero(cfg.cell, cfg.hidden);
    context.assign(enc.cols(), 0.0);
    coverage.assign(enc.rows(), 0.0);
  }

  // Advances one step on the given (already embedded) input and writes the
  // vocabulary logits.
  void step(std::span<const double> embedded, std::span<double> logits,
            const ForwardObserver* observer) {
    std::vector<double> input(embedded.begin(), embedded.end());
    input.insert(input.end(), context.begin(), context.end());
    state = cell_step(cell, input, state);

    AttentionOutput out = attention_step_projected(state.h, enc, keys, coverage, attn, true);
    const double step_loss = coverage_loss(out.weights, coverage);
    if (observer) {
      if (observer->distribution) observer->distribution(AttentionSite::kAdditive, out.weights);
      if (observer->coverage_step) observer->coverage_step(out.weights, coverage, step_loss);
    }
    total_loss += step_loss;
    coverage = coverage_update(coverage, out.weights);
    context = std::move(out.context);

    std::vector<double> features(state.h);
    features.insert(features.end(), context.begin(), context.end());
    matvec(w.matrix(idx.out_w), features, w.vector(idx.out_b), logits);
  }
};

}  // namespace

CoverageModel::CoverageModel(ModelConfig cfg) : Model(std::move(cfg)) {
  const auto& c = cfg_;
  const std::size_t H = c.hidden;
  if (c.train_embeddings) idx_.embedding = layout_.add("embedding", c.vocab_size, c.embed_dim);
  idx_.enc_fwd = add_cell_layout(layout_, "enc.fwd", c.cell, c.embed_dim, H);
  idx_.enc_bwd = add_cell_layout(layout_, "enc.bwd", c.cell, c.embed_dim, H);
  idx_.dec = add_cell_layout(layout_, "dec", c.cell, c.embed_dim + 2 * H, H);
  idx_.enc_proj = layout_.add("attn.enc_proj", H, 2 * H);
  idx_.dec_proj = layout_.add("attn.dec_proj", H, H);
  idx_.v = layout_.add("attn.v", H, 1);
  idx_.coverage_weight = layout_.add("attn.coverage", 1, 1);
  idx_.out_w = layout_.add("out.W", c.vocab_size, 3 * H);
  idx_.out_b = layout_.add("out.b", c.vocab_size, 1);
}

ForwardResult CoverageModel::forward(std::span<const double> params, const vocab::TokenIds& src,
                                     const vocab::TokenIds& tgt_in,
                                     const vocab::EmbeddingMatrix& emb,
                                     const ForwardOptions& opts) const {
  check_inputs(params, emb);
  const WeightsView w(layout_, params);
  const EmbeddingSource source(cfg_, w, idx_.embedding, emb);
  RngStream src_drop = opts.dropout_stream ? *opts.dropout_stream : RngStream(0, 0);
  RngStream tgt_drop(src_drop.seed(), src_drop.stream_id() ^ 0x5A5A5A5AULL);
  const bool drop = opts.dropout_stream && cfg_.dropout > 0.0;

  CoverageDecoder decoder(w, idx_, cfg_, source,
                          source.gather(src, 1.0, cfg_.dropout, drop ? &src_drop : nullptr));
  const Matrix targets = source.gather(tgt_in, 1.0, cfg_.dropout, drop ? &tgt_drop : nullptr);

  ForwardResult result;
  result.logits = Matrix(tgt_in.true_length, cfg_.vocab_size);
  for (std::size_t t = 0; t < tgt_in.true_length; ++t) {
    decoder.step(targets.row(t), result.logits.row(t), opts.observer);
  }
  result.coverage_loss = decoder.total_loss;
  return result;
}

vocab::TokenIds CoverageModel::greedy_decode(std::span<const double> params,
                                             const vocab::TokenIds& src,
                                             const vocab::EmbeddingMatrix& emb,
                                             std::size_t max_steps) const {
  check_inputs(params, emb);
  const WeightsView w(layout_, params);
  const EmbeddingSource source(cfg_, w, idx_.embedding, emb);
  CoverageDecoder decoder(w, idx_, cfg_, source, source.gather(src, 1.0, 0.0, nullptr));

  std::vector<vocab::TokenId> generated;
  std::vector<double> logits(cfg_.vocab_size);
  vocab::TokenId prev = vocab::kStartId;
  for (std::size_t step = 0; step < max_steps; ++step) {
    decoder.step(source.row(prev), logits, nullptr);
    prev = static_cast<vocab::TokenId>(argmax(logits));
    generated.push_back(prev);
    if (prev == vocab::kEndId) break;
  }
  return finish_decode(generated, max_steps);
}

}  // namespace slab::models::detail

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>

#include "slab/matrix.hpp"
#include "slab/models/config.hpp"
#include "slab/params.hpp"
#include "slab/rng.hpp"
#include "slab/vocab.hpp"

namespace slab::models {

enum class AttentionSite { kAdditive, kPointer, kTransformerHead };

// Optional taps into a forward pass. Used by tests and diagnostics; the
// forward result never depends on them.
struct ForwardObserver {
  // Every attention distribution over source (or target) positions.
  std::function<void(AttentionSite, std::span<const double>)> distribution;
  // Coverage decoder, once per step: attention a^t, coverage c^t before the
  // update, and the step loss sum_i min(a_i, c_i).
  std::function<void(std::span<const double> attention, std::span<const double> coverage,
                     double step_loss)>
      coverage_step;
};

struct ForwardOptions {
  const ForwardObserver* observer = nullptr;
  // Dropout mask stream for embedded inputs; ignored when cfg.dropout == 0
  // or when null (evaluation mode).
  const RngStream* dropout_stream = nullptr;
};

struct ForwardResult {
  Matrix logits;  // tgt_in.true_length x vocab_size
  double coverage_loss = 0.0;
};

class Model {
 public:
  explicit Model(ModelConfig cfg) : cfg_(std::move(cfg)) {}
  virtual ~Model() = default;

  const ModelConfig& config() const { return cfg_; }
  virtual const ParamLayout& layout() const = 0;
  std::size_t parameter_count() const { return layout().total(); }

  // Teacher-forced pass over the unpadded tgt_in prefix. Throws
  // ConfigMismatch when the embedding table or parameter count do not fit.
  virtual ForwardResult forward(std::span<const double> params, const vocab::TokenIds& src,
                                const vocab::TokenIds& tgt_in,
                                const vocab::EmbeddingMatrix& emb,
                                const ForwardOptions& opts = {}) const = 0;

  // Argmax decoding from the start marker until the end marker or max_steps
  // generated ids. Output is [start, ids..., (end)] padded to max_steps + 2.
  virtual vocab::TokenIds greedy_decode(std::span<const double> params,
                                        const vocab::TokenIds& src,
                                        const vocab::EmbeddingMatrix& emb,
                                        std::size_t max_steps) const = 0;

 protected:
  void check_inputs(std::span<const double> params, const vocab::EmbeddingMatrix& emb) const;

  ModelConfig cfg_;
};

// Throws BadConfig.
std::unique_ptr<Model> make_model(const ModelConfig& cfg);

// Layout for a config without constructing a model.
ParamLayout build_layout(const ModelConfig& cfg);

// Mean over the unpadded targets of -log softmax(logits_t)[target_t], plus
// lambda * covloss / true_length. Throws ShapeMismatch.
double sequence_loss(const Matrix& logits, const vocab::TokenIds& targets, vocab::TokenId pad_id,
                     double covloss, double lambda);

// Splits a marker-wrapped summary [<s> y1 .. yn </s>] into the decoder input
// [<s> y1 .. yn] and the targets [y1 .. yn </s>].
std::pair<vocab::TokenIds, vocab::TokenIds> teacher_forcing(const vocab::TokenIds& summary);

// Free-function forms of the per-architecture passes.
Matrix transformer_forward(std::span<const double> params, const vocab::TokenIds& src,
                           const vocab::TokenIds& tgt_in, const vocab::EmbeddingMatrix& emb,
                           const ModelConfig& cfg);
ForwardResult seq2seq_forward(std::span<const double> params, const vocab::TokenIds& src,
                              const vocab::TokenIds& tgt_in, const vocab::EmbeddingMatrix& emb,
                              const ModelConfig& cfg);
vocab::TokenIds greedy_decode(std::span<const double> params, const vocab::TokenIds& src,
                              const vocab::EmbeddingMatrix& emb, const ModelConfig& cfg,
                              std::size_t max_steps);

}  // namespace slab::models

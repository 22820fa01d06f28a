#pragma once

#include <optional>
#include <vector>

#include "slab/models/attention.hpp"
#include "slab/models/model.hpp"
#include "slab/models/recurrent.hpp"
#include "slab/models/transformer.hpp"

namespace slab::models::detail {

// Embedding rows come from the searched parameters when the table is
// trainable, otherwise from the fixed matrix.
class EmbeddingSource {
 public:
  EmbeddingSource(const ModelConfig& cfg, const WeightsView& w, std::optional<std::size_t> entry,
                  const vocab::EmbeddingMatrix& emb);

  std::span<const double> row(vocab::TokenId id) const;
  std::size_t dim() const { return dim_; }

  // Rows for the unpadded prefix, scaled, with dropout applied when a stream is given.
  Matrix gather(const vocab::TokenIds& ids, double scale, double dropout,
                const RngStream* stream) const;

 private:
  std::optional<MatrixView> table_;
  const vocab::EmbeddingMatrix* fixed_;
  std::size_t dim_;
  std::size_t rows_;
};

void apply_dropout(std::span<double> values, double rate, RngStream& stream);

class CoverageModel final : public Model {
 public:
  explicit CoverageModel(ModelConfig cfg);
  const ParamLayout& layout() const override { return layout_; }
  ForwardResult forward(std::span<const double> params, const vocab::TokenIds& src,
                        const vocab::TokenIds& tgt_in, const vocab::EmbeddingMatrix& emb,
                        const ForwardOptions& opts) const override;
  vocab::TokenIds greedy_decode(std::span<const double> params, const vocab::TokenIds& src,
                                const vocab::EmbeddingMatrix& emb,
                                std::size_t max_steps) const override;

  struct Indices {
    std::optional<std::size_t> embedding;
    std::size_t enc_fwd, enc_bwd, dec;
    std::size_t enc_proj, dec_proj, v, coverage_weight;
    std::size_t out_w, out_b;
  };

 private:
  ParamLayout layout_;
  Indices idx_;
};

class PointerModel final : public Model {
 public:
  explicit PointerModel(ModelConfig cfg);
  const ParamLayout& layout() const override { return layout_; }
  ForwardResult forward(std::span<const double> params, const vocab::TokenIds& src,
                        const vocab::TokenIds& tgt_in, const vocab::EmbeddingMatrix& emb,
                        const ForwardOptions& opts) const override;
  vocab::TokenIds greedy_decode(std::span<const double> params, const vocab::TokenIds& src,
                                const vocab::EmbeddingMatrix& emb,
                                std::size_t max_steps) const override;

  struct Indices {
    std::optional<std::size_t> embedding;
    std::size_t enc_fwd, enc_bwd, dec;
    std::size_t w1, w2, v;
  };

 private:
  ParamLayout layout_;
  Indices idx_;
};

class TransformerModel final : public Model {
 public:
  explicit TransformerModel(ModelConfig cfg);
  const ParamLayout& layout() const override { return t_.layout; }
  ForwardResult forward(std::span<const double> params, const vocab::TokenIds& src,
                        const vocab::TokenIds& tgt_in, const vocab::EmbeddingMatrix& emb,
                        const ForwardOptions& opts) const override;
  vocab::TokenIds greedy_decode(std::span<const double> params, const vocab::TokenIds& src,
                                const vocab::EmbeddingMatrix& emb,
                                std::size_t max_steps) const override;

 private:
  Matrix encode(const WeightsView& w, const EmbeddingSource& emb, const vocab::TokenIds& src,
                const ForwardOptions& opts, RngStream* dropout) const;
  Matrix decode(const WeightsView& w, const EmbeddingSource& emb, const Matrix& memory,
                const vocab::TokenIds& tgt_in, const ForwardOptions& opts,
                RngStream* dropout) const;

  TransformerLayout t_;
  Matrix positions_;
};

// Packs decoded ids into the [start, ..., (end)] + padding form.
vocab::TokenIds finish_decode(const std::vector<vocab::TokenId>& generated, std::size_t max_steps);

}  // namespace slab::models::detail

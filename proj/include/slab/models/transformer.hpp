#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "slab/matrix.hpp"
#include "slab/models/config.hpp"
#include "slab/params.hpp"

namespace slab::models {

inline constexpr double kLayerNormEpsilon = 1e-5;

// PE(pos, 2k) = sin(pos / 10000^(2k/dim)), PE(pos, 2k+1) = cos(same). Throws OddDim.
Matrix positional_encoding(std::size_t length, std::size_t dim);

struct MultiHeadWeights {
  MatrixView query;   // E x E
  MatrixView key;     // E x E
  MatrixView value;   // E x E
  MatrixView output;  // E x E
};

// Receives each head's attention matrix (queries x keys), row-normalized.
using HeadObserver = std::function<void(std::size_t head, const Matrix& weights)>;

// Scaled dot-product attention per head over projected inputs, heads
// concatenated then projected by `output`. With causal_mask, scores at key
// positions after the query position become -inf before the softmax.
// Throws ShapeMismatch.
Matrix multi_head_attention(const Matrix& q, const Matrix& k, const Matrix& v, std::size_t heads,
                            const MultiHeadWeights& w, bool causal_mask,
                            const HeadObserver& observer = {});

// Normalizes each row, then scales by (1 + gain) and shifts by bias, so an
// all-zero parameter block is the plain normalization.
void layer_norm_rows(Matrix& x, std::span<const double> gain, std::span<const double> bias);

struct FeedForwardWeights {
  std::vector<MatrixView> hidden;                    // depth affine layers
  std::vector<std::span<const double>> hidden_bias;
  MatrixView out;                                    // E x width
  std::span<const double> out_bias;
};

// depth ReLU layers of the configured width followed by a linear map back to
// the model width, applied row by row.
Matrix feed_forward(const Matrix& x, const FeedForwardWeights& w);

// Indices into the transformer layout, derived from the config alone.
struct TransformerLayout {
  struct Attention {
    std::size_t query, key, value, output;
  };
  struct Norm {
    std::size_t gain, bias;
  };
  struct Ffn {
    std::vector<std::size_t> hidden, hidden_bias;
    std::size_t out, out_bias;
  };
  struct EncoderBlock {
    Attention self;
    Norm norm1;
    Ffn ffn;
    Norm norm2;
  };
  struct DecoderBlock {
    Attention self;
    Norm norm1;
    Attention cross;
    Norm norm2;
    Ffn ffn;
    Norm norm3;
  };

  ParamLayout layout;
  std::size_t embedding = 0;  // only meaningful with train_embeddings
  std::vector<EncoderBlock> encoder;
  std::vector<DecoderBlock> decoder;
  std::size_t logits_weight = 0;
  std::size_t logits_bias = 0;
};

TransformerLayout build_transformer_layout(const ModelConfig& cfg);

MultiHeadWeights attention_weights(const WeightsView& w, const TransformerLayout::Attention& a);
FeedForwardWeights ffn_weights(const WeightsView& w, const TransformerLayout::Ffn& f);

}  // namespace slab::models

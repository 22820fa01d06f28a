#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "slab/matrix.hpp"
#include "slab/models/recurrent.hpp"

namespace slab::models {

// Additive attention over encoder rows e_j given decoder state d:
//   score_j = v . tanh(enc_proj e_j + dec_proj d + w_c * cov_j)
// where the scalar w_c is broadcast over the attention units.
struct AttentionWeights {
  MatrixView enc_proj;  // A x state_dim
  MatrixView dec_proj;  // A x hidden
  std::span<const double> v;              // A
  double coverage_weight = 0.0;
};

struct AttentionOutput {
  std::vector<double> weights;  // over source positions, sums to 1
  std::vector<double> context;  // sum_j weights[j] * e_j
};

// c^{t+1} = c^t + a^t. Throws LengthMismatch.
std::vector<double> coverage_update(std::span<const double> coverage,
                                    std::span<const double> attention);

// sum_i min(a_i, c_i). Throws LengthMismatch.
double coverage_loss(std::span<const double> attention, std::span<const double> coverage);

// enc_proj applied to every encoder row; reused across decoder steps.
Matrix project_encoder(const Matrix& enc, MatrixView enc_proj);

// Throws ShapeMismatch.
AttentionOutput attention_step(std::span<const double> dec, const Matrix& enc,
                               std::span<const double> coverage, const AttentionWeights& w,
                               bool use_coverage);
AttentionOutput attention_step_projected(std::span<const double> dec, const Matrix& enc,
                                         const Matrix& enc_keys,
                                         std::span<const double> coverage,
                                         const AttentionWeights& w, bool use_coverage);

struct PointerParams {
  std::span<const double> v;  // A
  MatrixView w1;              // A x state_dim, applied to encoder rows
  MatrixView w2;              // A x hidden, applied to the decoder state
};

// u_j = v . tanh(W1 e_j + W2 d), returned as softmax(u). The distribution is
// the output itself; it never mixes encoder rows into a context vector.
std::vector<double> pointer_scores(const Matrix& enc, std::span<const double> dec,
                                   const PointerParams& pp);
std::vector<double> pointer_scores_projected(const Matrix& enc_keys, std::span<const double> dec,
                                             const PointerParams& pp);

struct DecoderState {
  CellState cell;
  std::size_t step = 0;
};

struct PointerDecodeState {
  std::vector<std::size_t> selected;  // chosen input positions, in order
};

struct PointerStepResult {
  std::size_t index = 0;
  PointerDecodeState decode;
  DecoderState state;
  std::vector<double> distribution;
};

// Feeds the encoder row of the last selected position (position 0, the
// start marker, before anything is selected) together with the previous
// decoder state through the cell, then points at the argmax position of
// the new distribution (ties to the lowest index). Throws IndexOutOfRange.
PointerStepResult pointer_step(const Matrix& enc, const DecoderState& dec_state,
                               const PointerParams& pp, const CellWeights& cell,
                               const PointerDecodeState& prev);
// Same step with W1 already applied to the encoder rows.
PointerStepResult pointer_step_projected(const Matrix& enc, const Matrix& enc_keys,
                                         const DecoderState& dec_state, const PointerParams& pp,
                                         const CellWeights& cell,
                                         const PointerDecodeState& prev);

}  // namespace slab::models

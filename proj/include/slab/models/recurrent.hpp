#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slab/matrix.hpp"
#include "slab/models/config.hpp"
#include "slab/params.hpp"
#include "slab/vocab.hpp"

namespace slab::models {

// Gate blocks are stacked row-wise: GRU [update, reset, candidate],
// LSTM [input, forget, cell, output].
std::size_t gate_count(CellKind kind);

struct CellWeights {
  CellKind kind = CellKind::kGru;
  std::size_t hidden = 0;
  MatrixView input;      // gates*hidden x input_dim
  MatrixView recurrent;  // gates*hidden x hidden
  std::span<const double> bias;  // gates*hidden
};

// Registers `<prefix>.W`, `<prefix>.U`, `<prefix>.b` and returns the index of the first.
std::size_t add_cell_layout(ParamLayout& layout, const std::string& prefix, CellKind kind,
                            std::size_t input_dim, std::size_t hidden);
CellWeights cell_weights(const WeightsView& w, std::size_t first_index, CellKind kind,
                         std::size_t hidden);

struct CellState {
  std::vector<double> h;
  std::vector<double> c;  // LSTM memory; empty for GRU

  static CellState zero(CellKind kind, std::size_t hidden);
};

// One recurrent step. Throws ShapeMismatch.
CellState cell_step(const CellWeights& w, std::span<const double> x, const CellState& prev);

// Rows are the per-position input vectors. Returns inputs.rows() x 2*hidden,
// each row the forward state followed by the backward state for that
// position, both starting from zero states.
Matrix bidirectional_encode(const Matrix& inputs, const CellWeights& forward,
                            const CellWeights& backward);

// Embeds the unpadded prefix of ids and runs bidirectional_encode.
Matrix rnn_encode(const vocab::TokenIds& ids, const vocab::EmbeddingMatrix& emb,
                  const CellWeights& forward, const CellWeights& backward);

}  // namespace slab::models

#include "slab/models/recurrent.hpp"

#include <cmath>

#include "slab/error.hpp"

namespace slab::models {

std::size_t gate_count(CellKind kind) { return kind == CellKind::kGru ? 3 : 4; }

std::size_t add_cell_layout(ParamLayout& layout, const std::string& prefix, CellKind kind,
                            std::size_t input_dim, std::size_t hidden) {
  const std::size_t g = gate_count(kind) * hidden;
  const std::size_t first = layout.add(prefix + ".W", g, input_dim);
  layout.add(prefix + ".U", g, hidden);
  layout.add(prefix + ".b", g, 1);
  return first;
}

CellWeights cell_weights(const WeightsView& w, std::size_t first_index, CellKind kind,
                         std::size_t hidden) {
  return {kind, hidden, w.matrix(first_index), w.matrix(first_index + 1),
          w.vector(first_index + 2)};
}

CellState CellState::zero(CellKind kind, std::size_t hidden) {
  CellState s;
  s.h.assign(hidden, 0.0);
  if (kind == CellKind::kLstm) s.c.assign(hidden, 0.0);
  return s;
}

CellState cell_step(const CellWeights& w, std::span<const double> x, const CellState& prev) {
  const std::size_t H = w.hidden;
  const std::size_t G = gate_count(w.kind);
  if (w.input.rows != G * H || w.input.cols != x.size() || prev.h.size() != H ||
      w.recurrent.cols != H) {
    fail(ErrorKind::kShapeMismatch, "recurrent cell input/state shape mismatch");
  }
  std::vector<double> xin = matvec(w.input, x, w.bias);
  std::vector<double> hin = matvec(w.recurrent, prev.h);

  CellState next;
  next.h.resize(H);
  if (w.kind == CellKind::kGru) {
    for (std::size_t i = 0; i < H; ++i) {
      const double z = sigmoid(xin[i] + hin[i]);
      const double r = sigmoid(xin[H + i] + hin[H + i]);
      const double n = std::tanh(xin[2 * H + i] + r * hin[2 * H + i]);
      next.h[i] = (1.0 - z) * n + z * prev.h[i];
    }
  } else {
    if (prev.c.size() != H) fail(ErrorKind::kShapeMismatch, "LSTM state lacks its memory cell");
    next.c.resize(H);
    for (std::size_t i = 0; i < H; ++i) {
      const double in = sigmoid(xin[i] + hin[i]);
      const double forget = sigmoid(xin[H + i] + hin[H + i]);
      const double cand = std::tanh(xin[2 * H + i] + hin[2 * H + i]);
      const double out = sigmoid(xin[3 * H + i] + hin[3 * H + i]);
      next.c[i] = forget * prev.c[i] + in * cand;
      next.h[i] = out * std::tanh(next.c[i]);
    }
  }
  return next;
}

Matrix bidirectional_encode(const Matrix& inputs, const CellWeights& forward,
                            const CellWeights& backward) {
  const std::size_t L = inputs.rows();
  const std::size_t H = forward.hidden;
  if (backward.hidden != H) fail(ErrorKind::kShapeMismatch, "encoder directions differ in width");
  Matrix states(L, 2 * H);
  CellState s = CellState::zero(forward.kind, H);
  for (std::size_t t = 0; t < L; ++t) {
    s = cell_step(forward, inputs.row(t), s);
    std::copy(s.h.begin(), s.h.end(), states.row(t).begin());
  }
  s = CellState::zero(backward.kind, H);
  for (std::size_t t = L; t-- > 0;) {
    s = cell_step(backward, inputs.row(t), s);
    std::copy(s.h.begin(), s.h.end(), states.row(t).begin() + static_cast<std::ptrdiff_t>(H));
  }
  return states;
}

Matrix rnn_encode(const vocab::TokenIds& ids, const vocab::EmbeddingMatrix& emb,
                  const CellWeights& forward, const CellWeights& backward) {
  Matrix inputs(ids.true_length, emb.dim());
  for (std::size_t t = 0; t < ids.true_length; ++t) {
    const auto id = ids.ids[t];
    if (id < 0 || static_cast<std::size_t>(id) >= emb.rows()) {
      fail(ErrorKind::kShapeMismatch, "token id " + std::to_string(id) + " has no embedding row");
    }
    const auto row = emb.row(id);
    std::copy(row.begin(), row.end(), inputs.row(t).begin());
  }
  return bidirectional_encode(inputs, forward, backward);
}

}  // namespace slab::models

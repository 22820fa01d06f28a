#include "slab/models/attention.hpp"

#include <algorithm>
#include <cmath>

#include "slab/error.hpp"
#include "slab/kernels.hpp"

namespace slab::models {
namespace {

void require_same_length(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size()) {
    fail(ErrorKind::kLengthMismatch, std::string(what) + ": lengths " + std::to_string(a.size()) +
                                         " and " + std::to_string(b.size()));
  }
}

// v . tanh(key_j + query + extra_j) for every row of keys.
std::vector<double> additive_scores(const Matrix& keys, std::span<const double> query,
                                    std::span<const double> v,
                                    double coverage_weight,
                                    std::span<const double> coverage) {
  const std::size_t A = v.size();
  if (keys.cols() != A || query.size() != A) {
    fail(ErrorKind::kShapeMismatch, "attention projection widths disagree");
  }
  std::vector<double> scores(keys.rows());
  std::vector<double> hidden(A);
  for (std::size_t j = 0; j < keys.rows(); ++j) {
    const auto key = keys.row(j);
    const double cov = coverage.empty() ? 0.0 : coverage[j];
    for (std::size_t a = 0; a < A; ++a) {
      hidden[a] = std::tanh(key[a] + query[a] + coverage_weight * cov);
    }
    scores[j] = kernels::dot(v, hidden);
  }
  return scores;
}

}  // namespace

std::vector<double> coverage_update(std::span<const double> coverage,
                                    std::span<const double> attention) {
  require_same_length(coverage, attention, "coverage update");
  std::vector<double> out(coverage.begin(), coverage.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += attention[i];
  return out;
}

double coverage_loss(std::span<const double> attention, std::span<const double> coverage) {
  require_same_length(attention, coverage, "coverage loss");
  double loss = 0.0;
  for (std::size_t i = 0; i < attention.size(); ++i) loss += std::min(attention[i], coverage[i]);
  return loss;
}

Matrix project_encoder(const Matrix& enc, MatrixView enc_proj) {
  if (enc_proj.cols != enc.cols()) {
    fail(ErrorKind::kShapeMismatch, "encoder projection expects width " +
                                        std::to_string(enc_proj.cols) + ", got " +
                                        std::to_string(enc.cols()));
  }
  Matrix keys(enc.rows(), enc_proj.rows);
  for (std::size_t j = 0; j < enc.rows(); ++j) matvec(enc_proj, enc.row(j), {}, keys.row(j));
  return keys;
}

AttentionOutput attention_step_projected(std::span<const double> dec, const Matrix& enc,
                                         const Matrix& enc_keys,
                                         std::span<const double> coverage,
                                         const AttentionWeights& w, bool use_coverage) {
  if (enc.rows() == 0) fail(ErrorKind::kShapeMismatch, "attention over an empty source");
  if (use_coverage) {
    if (coverage.size() != enc.rows()) {
      fail(ErrorKind::kShapeMismatch, "coverage vector does not match the source");
    }
  }
  const std::vector<double> query = matvec(w.dec_proj, dec);
  AttentionOutput out;
  out.weights = additive_scores(enc_keys, query, w.v,
                                use_coverage ? w.coverage_weight : 0.0,
                                use_coverage ? coverage : std::span<const double>{});
  softmax_inplace(out.weights);
  out.context.assign(enc.cols(), 0.0);
  for (std::size_t j = 0; j < enc.rows(); ++j) kernels::axpy(out.weights[j], enc.row(j), out.context);
  return out;
}

AttentionOutput attention_step(std::span<const double> dec, const Matrix& enc,
                               std::span<const double> coverage, const AttentionWeights& w,
                               bool use_coverage) {
  return attention_step_projected(dec, enc, project_encoder(enc, w.enc_proj), coverage, w,
                                  use_coverage);
}

std::vector<double> pointer_scores_projected(const Matrix& enc_keys, std::span<const double> dec,
                                             const PointerParams& pp) {
  if (enc_keys.rows() == 0) fail(ErrorKind::kShapeMismatch, "pointer over an empty source");
  std::vector<double> u = additive_scores(enc_keys, matvec(pp.w2, dec), pp.v, 0.0, {});
  softmax_inplace(u);
  return u;
}

std::vector<double> pointer_scores(const Matrix& enc, std::span<const double> dec,
                                   const PointerParams& pp) {
  return pointer_scores_projected(project_encoder(enc, pp.w1), dec, pp);
}

PointerStepResult pointer_step_projected(const Matrix& enc, const Matrix& enc_keys,
                                         const DecoderState& dec_state, const PointerParams& pp,
                                         const CellWeights& cell,
                                         const PointerDecodeState& prev) {
  const std::size_t input_pos = prev.selected.empty() ? 0 : prev.selected.back();
  if (input_pos >= enc.rows()) {
    fail(ErrorKind::kIndexOutOfRange, "pointer position " + std::to_string(input_pos) +
                                          " outside source of length " +
                                          std::to_string(enc.rows()));
  }
  PointerStepResult result;
  result.state.cell = cell_step(cell, enc.row(input_pos), dec_state.cell);
  result.state.step = dec_state.step + 1;
  result.distribution = pointer_scores_projected(enc_keys, result.state.cell.h, pp);
  result.index = argmax(result.distribution);
  result.decode = prev;
  result.decode.selected.push_back(result.index);
  return result;
}

PointerStepResult pointer_step(const Matrix& enc, const DecoderState& dec_state,
                               const PointerParams& pp, const CellWeights& cell,
                               const PointerDecodeState& prev) {
  return pointer_step_projected(enc, project_encoder(enc, pp.w1), dec_state, pp, cell, prev);
}

}  // namespace slab::models

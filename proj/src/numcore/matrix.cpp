#include "slab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "slab/error.hpp"
#include "slab/kernels.hpp"

namespace slab {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    fail(ErrorKind::kShapeMismatch,
         "matrix data has " + std::to_string(data_.size()) + " values, expected " +
             std::to_string(rows * cols));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) fail(ErrorKind::kShapeMismatch, "ragged matrix rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorKind::kShapeMismatch, "matmul " + std::to_string(a.rows()) + "x" +
                                        std::to_string(a.cols()) + " by " +
                                        std::to_string(b.rows()) + "x" +
                                        std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) kernels::axpy(a(i, k), b.row(k), dst);
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  return out;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Matrix tanh_map(const Matrix& m) {
  Matrix out = m;
  for (double& v : out.values()) v = std::tanh(v);
  return out;
}

Matrix sigmoid_map(const Matrix& m) {
  Matrix out = m;
  for (double& v : out.values()) v = sigmoid(v);
  return out;
}

void matvec(MatrixView w, std::span<const double> x, std::span<const double> bias,
            std::span<double> out) {
  if (x.size() != w.cols || out.size() != w.rows || (!bias.empty() && bias.size() != w.rows)) {
    fail(ErrorKind::kShapeMismatch, "matvec " + std::to_string(w.rows) + "x" +
                                        std::to_string(w.cols) + " with input " +
                                        std::to_string(x.size()));
  }
  kernels::active().gemv(w.data, w.rows, w.cols, x.data(),
                         bias.empty() ? nullptr : bias.data(), out.data());
}

std::vector<double> matvec(MatrixView w, std::span<const double> x,
                           std::span<const double> bias) {
  std::vector<double> out(w.rows);
  matvec(w, x, bias, out);
  return out;
}

std::vector<double> softmax(std::span<const double> x) {
  if (x.empty()) fail(ErrorKind::kEmptyInput, "softmax of an empty sequence");
  std::vector<double> out(x.begin(), x.end());
  softmax_inplace(out);
  return out;
}

void softmax_inplace(std::span<double> x) {
  if (x.empty()) fail(ErrorKind::kEmptyInput, "softmax of an empty sequence");
  const double peak = *std::max_element(x.begin(), x.end());
  double total = 0.0;
  for (double& v : x) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : x) v /= total;
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) fail(ErrorKind::kEmptyInput, "log-sum-exp of an empty sequence");
  const double peak = *std::max_element(x.begin(), x.end());
  double total = 0.0;
  for (double v : x) total += std::exp(v - peak);
  return peak + std::log(total);
}

std::size_t argmax(std::span<const double> x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (x[i] > x[best]) best = i;
  return best;
}

}  // namespace slab

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace slab {

// Non-owning row-major view, used for weights that live inside a flat
// parameter vector.
struct MatrixView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data + r * cols, cols}; }
  std::span<const double> values() const { return {data, rows * cols}; }
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws ShapeMismatch when data.size() != rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  MatrixView view() const { return {data_.data(), rows_, cols_}; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Matrix tanh_map(const Matrix& m);
Matrix sigmoid_map(const Matrix& m);

// out = w * x + bias (bias may be empty). Throws ShapeMismatch.
void matvec(MatrixView w, std::span<const double> x, std::span<const double> bias,
            std::span<double> out);
std::vector<double> matvec(MatrixView w, std::span<const double> x,
                           std::span<const double> bias = {});

// Max-subtracted softmax. Throws EmptyInput on an empty sequence.
std::vector<double> softmax(std::span<const double> x);

// In-place variant that tolerates -infinity entries (masked positions get
// exactly zero weight). At least one entry must be finite.
void softmax_inplace(std::span<double> x);

// Row-wise log-sum-exp, used for cross-entropy.
double log_sum_exp(std::span<const double> x);

// Index of the largest entry; ties resolve to the lowest index.
std::size_t argmax(std::span<const double> x);

double sigmoid(double x);

}  // namespace slab

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "slab/matrix.hpp"

namespace slab {

struct LayoutEntry {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  bool operator==(const LayoutEntry&) const = default;
};

// Ordered description of the structured weights a flat vector encodes.
class ParamLayout {
 public:
  // Appends an entry and returns its index.
  std::size_t add(std::string name, std::size_t rows, std::size_t cols);

  const std::vector<LayoutEntry>& entries() const { return entries_; }
  std::size_t total() const { return total_; }
  std::size_t offset(std::size_t index) const { return offsets_[index]; }

  bool operator==(const ParamLayout& other) const { return entries_ == other.entries_; }

 private:
  std::vector<LayoutEntry> entries_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

struct NamedMatrix {
  std::string name;
  Matrix value;
};

struct ParamVector {
  std::vector<double> values;
  ParamLayout layout;
};

ParamVector flatten(std::span<const NamedMatrix> weights);
// Throws LengthMismatch when values.size() != layout.total().
std::vector<NamedMatrix> unflatten(const ParamVector& p);

// Zero-copy access to the weights encoded by a flat vector.
class WeightsView {
 public:
  // Throws LengthMismatch when values.size() != layout.total().
  WeightsView(const ParamLayout& layout, std::span<const double> values);

  MatrixView matrix(std::size_t index) const;
  std::span<const double> vector(std::size_t index) const;

 private:
  const ParamLayout* layout_;
  std::span<const double> values_;
};

}  // namespace slab

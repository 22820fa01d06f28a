#include "slab/params.hpp"

#include "slab/error.hpp"

namespace slab {

std::size_t ParamLayout::add(std::string name, std::size_t rows, std::size_t cols) {
  offsets_.push_back(total_);
  total_ += rows * cols;
  entries_.push_back({std::move(name), rows, cols});
  return entries_.size() - 1;
}

ParamVector flatten(std::span<const NamedMatrix> weights) {
  ParamVector p;
  for (const auto& w : weights) {
    p.layout.add(w.name, w.value.rows(), w.value.cols());
    p.values.insert(p.values.end(), w.value.values().begin(), w.value.values().end());
  }
  return p;
}

std::vector<NamedMatrix> unflatten(const ParamVector& p) {
  if (p.values.size() != p.layout.total()) {
    fail(ErrorKind::kLengthMismatch, "parameter vector has " + std::to_string(p.values.size()) +
                                         " values, layout needs " +
                                         std::to_string(p.layout.total()));
  }
  std::vector<NamedMatrix> out;
  out.reserve(p.layout.entries().size());
  for (std::size_t i = 0; i < p.layout.entries().size(); ++i) {
    const auto& e = p.layout.entries()[i];
    const auto first = p.values.begin() + static_cast<std::ptrdiff_t>(p.layout.offset(i));
    out.push_back({e.name, Matrix(e.rows, e.cols, std::vector<double>(first, first + e.size()))});
  }
  return out;
}

WeightsView::WeightsView(const ParamLayout& layout, std::span<const double> values)
    : layout_(&layout), values_(values) {
  if (values.size() != layout.total()) {
    fail(ErrorKind::kLengthMismatch, "parameter vector has " + std::to_string(values.size()) +
                                         " values, layout needs " + std::to_string(layout.total()));
  }
}

MatrixView WeightsView::matrix(std::size_t index) const {
  const auto& e = layout_->entries()[index];
  return {values_.data() + layout_->offset(index), e.rows, e.cols};
}

std::span<const double> WeightsView::vector(std::size_t index) const {
  return values_.subspan(layout_->offset(index), layout_->entries()[index].size());
}

}  // namespace slab

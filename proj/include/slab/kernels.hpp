#pragma once

// Data-parallel inner loops shared by every forward pass. Each kernel has a
// scalar reference implementation and optional SIMD variants; one table is
// selected at startup and used for the life of the process, so results are
// reproducible run to run on the same machine.

#include <cstddef>
#include <span>
#include <string_view>

namespace slab::kernels {

struct KernelTable {
  std::string_view name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y[r] = bias[r] + sum_c w[r * cols + c] * x[c]; bias may be null.
  void (*gemv)(const double* w, std::size_t rows, std::size_t cols,
               const double* x, const double* bias, double* y);
};

const KernelTable& scalar_table();

// Null when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Picks the widest supported table. The SLAB_KERNELS environment variable
// (`scalar`, `avx2`, `neon`) overrides the choice when that table exists.
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

}  // namespace slab::kernels

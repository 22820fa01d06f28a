#include <doctest.h>

#include <cmath>
#include <vector>

#include "slab/kernels.hpp"
#include "slab/rng.hpp"

using namespace slab;

namespace {

std::vector<const kernels::KernelTable*> simd_tables() {
  std::vector<const kernels::KernelTable*> out;
  if (auto* t = kernels::avx2_table()) out.push_back(t);
  if (auto* t = kernels::neon_table()) out.push_back(t);
  return out;
}

std::vector<double> random_vector(RngStream& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.next_uniform(-2.0, 2.0);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels on small inputs") {
  const auto& s = kernels::scalar_table();
  const double a[] = {1, 2, 3};
  const double b[] = {4, 5, 6};
  CHECK(s.dot(a, b, 3) == 32.0);
  double y[] = {1, 1, 1};
  s.axpy(2.0, a, y, 3);
  CHECK(y[2] == 7.0);
  const double w[] = {1, 0, 2, 0, 1, 1};
  const double bias[] = {10, 20};
  double out[2];
  s.gemv(w, 2, 3, a, bias, out);
  CHECK(out[0] == 17.0);
  CHECK(out[1] == 25.0);
  s.gemv(w, 2, 3, a, nullptr, out);
  CHECK(out[0] == 7.0);
}

TEST_CASE("SIMD kernels match the scalar reference") {
  const auto& ref = kernels::scalar_table();
  RngStream rng(2024, 0);
  for (const auto* table : simd_tables()) {
    INFO(table->name);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 257}) {
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n);
      const double expect = ref.dot(a.data(), b.data(), n);
      CHECK(std::abs(table->dot(a.data(), b.data(), n) - expect) <= 1e-12 * (1.0 + std::abs(expect)));

      auto y1 = b;
      auto y2 = b;
      ref.axpy(0.37, a.data(), y1.data(), n);
      table->axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (1.0 + std::abs(y1[i])));

      const std::size_t rows = 1 + n % 7;
      const auto w = random_vector(rng, rows * n);
      const auto bias = random_vector(rng, rows);
      std::vector<double> o1(rows), o2(rows);
      ref.gemv(w.data(), rows, n, a.data(), bias.data(), o1.data());
      table->gemv(w.data(), rows, n, a.data(), bias.data(), o2.data());
      for (std::size_t r = 0; r < rows; ++r) CHECK(std::abs(o1[r] - o2[r]) <= 1e-12 * (1.0 + std::abs(o1[r])));
    }
  }
}

TEST_CASE("active table is stable and named") {
  const auto& t = kernels::active();
  CHECK(&t == &kernels::active());
  CHECK(!t.name.empty());
}

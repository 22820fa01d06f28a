#include <doctest.h>

#include <cmath>
#include <numeric>

#include "slab/error.hpp"
#include "slab/matrix.hpp"
#include "slab/params.hpp"
#include "slab/rng.hpp"
#include "support.hpp"

using namespace slab;
using slab::testing::kind_of;

namespace {

Matrix random_matrix(RngStream& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.next_uniform(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("softmax examples") {
  const auto third = softmax(std::vector<double>{0, 0, 0});
  for (double v : third) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  for (double c : {-7.5, 0.0, 3.25, 400.0}) {
    const auto p = softmax(std::vector<double>{c, c + std::log(3.0)});
    CHECK(std::abs(p[0] - 0.25) < 1e-12);
    CHECK(std::abs(p[1] - 0.75) < 1e-12);
  }
  CHECK(softmax(std::vector<double>{42.0}) == std::vector<double>{1.0});
  CHECK(kind_of([] { softmax(std::vector<double>{}); }) == ErrorKind::kEmptyInput);
}

TEST_CASE("softmax shift invariance and monotonicity") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(1 + rng.next_index(12));
    for (double& v : x) v = rng.next_uniform(-20.0, 20.0);
    const double c = rng.next_uniform(-50.0, 50.0);
    std::vector<double> shifted = x;
    for (double& v : shifted) v += c;
    const auto p = softmax(x);
    const auto q = softmax(shifted);
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-12);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(p[i] > 0.0);
      CHECK(std::abs(p[i] - q[i]) < 1e-12);
      for (std::size_t j = 0; j < x.size(); ++j)
        if (x[i] > x[j]) CHECK(p[i] > p[j]);
    }
  }
}

TEST_CASE("softmax_inplace gives masked entries zero weight") {
  std::vector<double> x{1.0, -INFINITY, 1.0};
  softmax_inplace(x);
  CHECK(x[0] == 0.5);
  CHECK(x[1] == 0.0);
  CHECK(x[2] == 0.5);
}

TEST_CASE("matmul examples") {
  const Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
  CHECK(matmul(Matrix::identity(2), m) == m);
  CHECK(matmul(m, Matrix::from_rows({{1}, {1}})) == Matrix::from_rows({{3}, {7}}));
  CHECK(matmul(Matrix(3, 2), m) == Matrix(3, 2));
  CHECK(kind_of([&] { matmul(m, Matrix(3, 1)); }) == ErrorKind::kShapeMismatch);
}

TEST_CASE("matmul is associative on random chains") {
  RngStream rng(5, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t a = 1 + rng.next_index(6), b = 1 + rng.next_index(6),
                      c = 1 + rng.next_index(6), d = 1 + rng.next_index(6);
    const Matrix x = random_matrix(rng, a, b), y = random_matrix(rng, b, c), z = random_matrix(rng, c, d);
    const Matrix left = matmul(matmul(x, y), z);
    const Matrix right = matmul(x, matmul(y, z));
    for (std::size_t i = 0; i < left.size(); ++i) {
      const double scale = std::max(1.0, std::abs(left.values()[i]));
      CHECK(std::abs(left.values()[i] - right.values()[i]) / scale < 1e-9);
    }
  }
}

TEST_CASE("activations") {
  CHECK(tanh_map(Matrix(2, 3)) == Matrix(2, 3));
  CHECK(sigmoid_map(Matrix(2, 2)) == Matrix(2, 2, 0.5));
  CHECK(tanh_map(Matrix::from_rows({{0.5}}))(0, 0) == doctest::Approx(0.46211715726).epsilon(1e-10));
  const Matrix t = tanh_map(Matrix::from_rows({{-30, 30}}));
  CHECK(t(0, 0) >= -1.0);
  CHECK(t(0, 1) <= 1.0);
}

TEST_CASE("argmax ties go to the lowest index") {
  CHECK(argmax(std::vector<double>{1, 3, 3, 2}) == 1);
  CHECK(argmax(std::vector<double>{0, 0, 0}) == 0);
}

TEST_CASE("flatten and unflatten") {
  const std::vector<NamedMatrix> one{{"w", Matrix::from_rows({{1, 2}, {3, 4}})}};
  const ParamVector p = flatten(one);
  CHECK(p.values == std::vector<double>{1, 2, 3, 4});
  CHECK(unflatten(p)[0].value == one[0].value);

  ParamVector bad = p;
  bad.values.pop_back();
  CHECK(kind_of([&] { unflatten(bad); }) == ErrorKind::kLengthMismatch);
}

TEST_CASE("flatten is a bijection on random layouts") {
  RngStream rng(99, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<NamedMatrix> weights;
    const std::size_t count = 1 + rng.next_index(6);
    for (std::size_t i = 0; i < count; ++i) {
      weights.push_back({"m" + std::to_string(i),
                         random_matrix(rng, 1 + rng.next_index(5), 1 + rng.next_index(5))});
    }
    const ParamVector p = flatten(weights);
    CHECK(p.values.size() == p.layout.total());
    const auto back = unflatten(p);
    REQUIRE(back.size() == weights.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].name == weights[i].name);
      CHECK(back[i].value == weights[i].value);
    }
    CHECK(flatten(back).values == p.values);
  }
}

TEST_CASE("WeightsView reads entries in place") {
  ParamLayout layout;
  const auto a = layout.add("a", 2, 2);
  const auto b = layout.add("b", 3, 1);
  const std::vector<double> values{1, 2, 3, 4, 5, 6, 7};
  const WeightsView w(layout, values);
  CHECK(w.matrix(a)(1, 0) == 3);
  CHECK(w.vector(b)[2] == 7);
  CHECK(kind_of([&] { WeightsView(layout, std::span<const double>(values).first(6)); }) ==
        ErrorKind::kLengthMismatch);
}

TEST_CASE("rand_uniform") {
  const RngStream s(3, 4);
  CHECK(rand_uniform(s, -1, 1, 32).first == rand_uniform(s, -1, 1, 32).first);

  const double hi = 1.0;
  const double lo = std::nextafter(hi, 0.0);
  for (double v : rand_uniform(s, lo, hi, 1000).first) {
    CHECK(v >= lo);
    CHECK(v < hi);
  }

  const auto a = rand_uniform(RngStream(8, 0), 0, 1, 64).first;
  const auto b = rand_uniform(RngStream(8, 1), 0, 1, 64).first;
  CHECK(a != b);

  CHECK(kind_of([&] { rand_uniform(s, 1, 1, 3); }) == ErrorKind::kBadRange);

  // The returned stream continues where the draws stopped.
  auto [first, next] = rand_uniform(s, 0, 1, 4);
  auto [all, ignored] = rand_uniform(s, 0, 1, 8);
  CHECK(rand_uniform(next, 0, 1, 4).first == std::vector<double>(all.begin() + 4, all.end()));
}

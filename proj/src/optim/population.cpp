#include "population.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "slab/error.hpp"

namespace slab::optim::detail {

void Bounds::clamp(Point& x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

Point Bounds::sample(RngStream& rng) const {
  Point x(lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.next_uniform(lo[i], hi[i]);
  return x;
}

Bounds check_config(const Objective& f, const OptConfig& cfg, std::size_t min_population) {
  if (cfg.population < min_population) {
    fail(ErrorKind::kBadConfig, "population must be at least " + std::to_string(min_population));
  }
  if (cfg.iterations == 0) fail(ErrorKind::kBadConfig, "iterations must be positive");
  if (f.arity() == 0) fail(ErrorKind::kBadConfig, "objective has no dimensions");

  Bounds b;
  if (cfg.lower.empty() && cfg.upper.empty()) {
    b.lo.assign(f.arity(), cfg.lo);
    b.hi.assign(f.arity(), cfg.hi);
  } else {
    if (cfg.lower.size() != f.arity() || cfg.upper.size() != f.arity()) {
      fail(ErrorKind::kBadConfig, "per-dimension bounds do not match the objective arity");
    }
    b.lo = cfg.lower;
    b.hi = cfg.upper;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(b.lo[i] < b.hi[i]) || !std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i])) {
      fail(ErrorKind::kBadConfig, "bounds need finite lo < hi in every dimension");
    }
  }
  return b;
}

std::vector<double> evaluate_all(const Objective& f, const std::vector<Point>& points,
                                 std::size_t threads) {
  std::vector<double> values(points.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, points.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) values[i] = f.evaluate(points[i]);
    return values;
  }

  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < points.size(); i += threads) values[i] = f.evaluate(points[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return values;
}

void Tracker::record(const std::vector<Point>& points, const std::vector<double>& values) {
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sum += values[i];
    if (result_.best_point.empty() || values[i] < result_.best_value) {
      result_.best_point = points[i];
      result_.best_value = values[i];
    }
  }
  result_.trace.push_back(result_.best_value);
  result_.mean_trace.push_back(sum / static_cast<double>(points.size()));
  if (cfg_.observer) cfg_.observer(result_.trace.size() - 1, result_.best_point, result_.best_value);
}

OptResult Tracker::finish() {
  result_.evals_used = f_.eval_count() - start_count_;
  return std::move(result_);
}

}  // namespace slab::optim::detail

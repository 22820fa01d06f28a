#pragma once

#include <cstddef>
#include <vector>

#include "slab/optim/optim.hpp"
#include "slab/rng.hpp"

namespace slab::optim::detail {

using Point = std::vector<double>;

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t size() const { return lo.size(); }
  void clamp(Point& x) const;
  Point sample(RngStream& rng) const;
};

// Validates the configuration for an objective of the given arity.
Bounds check_config(const Objective& f, const OptConfig& cfg, std::size_t min_population);

// Evaluates every point, spreading the work over cfg.threads workers. Results
// are stored by index, so the outcome never depends on scheduling.
std::vector<double> evaluate_all(const Objective& f, const std::vector<Point>& points,
                                 std::size_t threads);

// Best-so-far bookkeeping shared by all optimizers. record() is the per
// iteration synchronization point: members are folded in index order and a
// strictly lower value is needed to replace the incumbent.
class Tracker {
 public:
  Tracker(const Objective& f, const OptConfig& cfg) : f_(f), cfg_(cfg) {}

  void record(const std::vector<Point>& points, const std::vector<double>& values);
  const Point& best_point() const { return result_.best_point; }
  double best_value() const { return result_.best_value; }
  OptResult finish();

 private:
  const Objective& f_;
  const OptConfig& cfg_;
  OptResult result_;
  std::uint64_t start_count_ = f_.eval_count();
};

}  // namespace slab::optim::detail

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slab::optim {

// A pure map from R^n to a finite real, lower is better. Every call to
// evaluate() bumps the shared evaluation counter by one, including calls made
// concurrently from worker threads.
class Objective {
 public:
  using Function = std::function<double(std::span<const double>)>;

  Objective(std::size_t arity, Function fn) : arity_(arity), fn_(std::move(fn)) {}
  Objective(const Objective& other)
      : arity_(other.arity_), fn_(other.fn_), count_(other.count_.load()) {}
  Objective& operator=(const Objective&) = delete;

  std::size_t arity() const { return arity_; }
  double evaluate(std::span<const double> x) const {
    count_.fetch_add(1, std::memory_order_relaxed);
    return fn_(x);
  }
  std::uint64_t eval_count() const { return count_.load(); }

 private:
  std::size_t arity_;
  Function fn_;
  mutable std::atomic<std::uint64_t> count_{0};
};

struct PsoConstants {
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
};

struct WoaConstants {
  double spiral = 1.0;
};

struct AcoConstants {
  std::size_t archive = 10;
  double locality = 0.1;
  double deviation = 0.85;
};

// Called once per iteration after the synchronization point with the
// best-so-far point and value.
using IterationObserver =
    std::function<void(std::size_t iteration, std::span<const double> best_point, double best_value)>;

struct OptConfig {
  std::size_t population = 20;
  std::size_t iterations = 100;
  double lo = -1.0;
  double hi = 1.0;
  // Per-dimension bounds; when non-empty they replace lo/hi and must match
  // the objective's arity.
  std::vector<double> lower;
  std::vector<double> upper;
  std::uint64_t seed = 0;
  // Worker threads for population evaluation. 0 means one per hardware thread.
  std::size_t threads = 1;
  PsoConstants pso;
  WoaConstants woa;
  AcoConstants aco;
  IterationObserver observer;
};

struct OptResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  // Best-so-far value after each iteration.
  std::vector<double> trace;
  // Mean objective value of the points evaluated in each iteration.
  std::vector<double> mean_trace;
  std::uint64_t evals_used = 0;

  bool operator==(const OptResult&) const = default;
};

enum class Algorithm { kPso, kWoa, kAco, kRandom };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// Each optimizer spends exactly population * iterations evaluations:
// iteration 0 evaluates the initial population, every later iteration moves
// and re-evaluates all members. All throw BadConfig on population < 2 (< 1
// for random_search), iterations == 0, or empty / inverted bounds.
OptResult pso_minimize(const Objective& f, const OptConfig& cfg);
OptResult woa_minimize(const Objective& f, const OptConfig& cfg);
OptResult aco_minimize(const Objective& f, const OptConfig& cfg);
OptResult random_search(const Objective& f, const OptConfig& cfg);
OptResult minimize(Algorithm algorithm, const Objective& f, const OptConfig& cfg);

double sphere(std::span<const double> x);
double rastrigin(std::span<const double> x);

// CSV with header iteration,best_value,mean_value and, when validation is
// non-empty, a validation column. Values use shortest round-trip form.
std::string trace_csv(const OptResult& result, std::span<const double> validation = {});

}  // namespace slab::optim

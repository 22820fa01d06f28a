#include <cmath>
#include <numbers>

#include "slab/error.hpp"
#include "slab/format.hpp"
#include "slab/optim/optim.hpp"

namespace slab::optim {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kPso:
      return "pso";
    case Algorithm::kWoa:
      return "woa";
    case Algorithm::kAco:
      return "aco";
    case Algorithm::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kPso, Algorithm::kWoa, Algorithm::kAco, Algorithm::kRandom}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return s;
}

std::string trace_csv(const OptResult& result, std::span<const double> validation) {
  if (!validation.empty() && validation.size() != result.trace.size()) {
    fail(ErrorKind::kLengthMismatch, "validation column does not match the trace length");
  }
  std::string out = validation.empty() ? "iteration,best_value,mean_value\n"
                                       : "iteration,best_value,mean_value,validation\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    out += std::to_string(i) + "," + format_double(result.trace[i]) + "," +
           format_double(result.mean_trace[i]);
    if (!validation.empty()) out += "," + format_double(validation[i]);
    out += "\n";
  }
  return out;
}

}  // namespace slab::optim

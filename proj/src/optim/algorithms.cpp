#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "population.hpp"
#include "slab/error.hpp"

namespace slab::optim {

using detail::Bounds;
using detail::Point;
using detail::Tracker;

namespace {

std::vector<RngStream> member_streams(const OptConfig& cfg) {
  std::vector<RngStream> streams;
  streams.reserve(cfg.population);
  for (std::size_t i = 0; i < cfg.population; ++i) streams.emplace_back(cfg.seed, i);
  return streams;
}

std::vector<Point> initial_population(const Bounds& bounds, std::vector<RngStream>& streams) {
  std::vector<Point> xs;
  xs.reserve(streams.size());
  for (auto& rng : streams) xs.push_back(bounds.sample(rng));
  return xs;
}

}  // namespace

OptResult pso_minimize(const Objective& f, const OptConfig& cfg) {
  const Bounds bounds = detail::check_config(f, cfg, 2);
  const std::size_t n = f.arity();
  auto streams = member_streams(cfg);
  Tracker tracker(f, cfg);

  std::vector<Point> x = initial_population(bounds, streams);
  std::vector<Point> v(cfg.population, Point(n));
  for (std::size_t p = 0; p < cfg.population; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      v[p][i] = (streams[p].next_uniform(bounds.lo[i], bounds.hi[i]) - x[p][i]) / 2.0;
    }
  }
  std::vector<double> fx = detail::evaluate_all(f, x, cfg.threads);
  std::vector<Point> pbest = x;
  std::vector<double> pbest_f = fx;
  tracker.record(x, fx);

  const auto& c = cfg.pso;
  for (std::size_t it = 1; it < cfg.iterations; ++it) {
    const Point gbest = tracker.best_point();
    for (std::size_t p = 0; p < cfg.population; ++p) {
      auto& rng = streams[p];
      for (std::size_t i = 0; i < n; ++i) {
        const double r1 = rng.next_unit();
        const double r2 = rng.next_unit();
        v[p][i] = c.inertia * v[p][i] + c.cognitive * r1 * (pbest[p][i] - x[p][i]) +
                  c.social * r2 * (gbest[i] - x[p][i]);
        x[p][i] += v[p][i];
      }
      bounds.clamp(x[p]);
    }
    fx = detail::evaluate_all(f, x, cfg.threads);
    for (std::size_t p = 0; p < cfg.population; ++p) {
      if (fx[p] < pbest_f[p]) {
        pbest[p] = x[p];
        pbest_f[p] = fx[p];
      }
    }
    tracker.record(x, fx);
  }
  return tracker.finish();
}

OptResult woa_minimize(const Objective& f, const OptConfig& cfg) {
  const Bounds bounds = detail::check_config(f, cfg, 2);
  const std::size_t n = f.arity();
  auto streams = member_streams(cfg);
  Tracker tracker(f, cfg);

  std::vector<Point> x = initial_population(bounds, streams);
  tracker.record(x, detail::evaluate_all(f, x, cfg.threads));

  const std::size_t moves = cfg.iterations - 1;
  const double b = cfg.woa.spiral;
  for (std::size_t m = 0; m < moves; ++m) {
    const double a =
        moves > 1 ? 2.0 * (1.0 - static_cast<double>(m) / static_cast<double>(moves - 1)) : 2.0;
    const Point leader = tracker.best_point();
    const std::vector<Point> prev = x;
    for (std::size_t p = 0; p < cfg.population; ++p) {
      auto& rng = streams[p];
      const double A = 2.0 * a * rng.next_unit() - a;
      const double C = 2.0 * rng.next_unit();
      const double prob = rng.next_unit();
      const double l = rng.next_uniform(-1.0, 1.0);
      const std::size_t other = rng.next_index(cfg.population);
      Point& xp = x[p];
      if (prob < 0.5) {
        // Encircle the leader while |A| < 1, otherwise explore around a
        // randomly chosen whale.
        const Point& target = std::abs(A) < 1.0 ? leader : prev[other];
        for (std::size_t i = 0; i < n; ++i) {
          const double d = std::abs(C * target[i] - prev[p][i]);
          xp[i] = target[i] - A * d;
        }
      } else {
        const double spiral = std::exp(b * l) * std::cos(2.0 * std::numbers::pi * l);
        for (std::size_t i = 0; i < n; ++i) {
          const double d = std::abs(leader[i] - prev[p][i]);
          xp[i] = d * spiral + leader[i];
        }
      }
      bounds.clamp(xp);
    }
    tracker.record(x, detail::evaluate_all(f, x, cfg.threads));
  }
  return tracker.finish();
}

OptResult aco_minimize(const Objective& f, const OptConfig& cfg) {
  const Bounds bounds = detail::check_config(f, cfg, 2);
  const auto& c = cfg.aco;
  if (c.archive < 2) fail(ErrorKind::kBadConfig, "ACO archive must hold at least 2 solutions");
  if (!(c.locality > 0.0) || !(c.deviation > 0.0)) {
    fail(ErrorKind::kBadConfig, "ACO locality and deviation must be positive");
  }
  const std::size_t n = f.arity();
  auto streams = member_streams(cfg);
  Tracker tracker(f, cfg);

  struct Entry {
    Point x;
    double value;
  };
  std::vector<Entry> archive;
  auto merge = [&](const std::vector<Point>& xs, const std::vector<double>& fx) {
    for (std::size_t p = 0; p < xs.size(); ++p) archive.push_back({xs[p], fx[p]});
    std::stable_sort(archive.begin(), archive.end(),
                     [](const Entry& a, const Entry& b) { return a.value < b.value; });
    if (archive.size() > c.archive) archive.resize(c.archive);
  };

  std::vector<Point> x = initial_population(bounds, streams);
  std::vector<double> fx = detail::evaluate_all(f, x, cfg.threads);
  merge(x, fx);
  tracker.record(x, fx);

  std::vector<double> weights;
  std::vector<double> sigma(n);
  for (std::size_t it = 1; it < cfg.iterations; ++it) {
    // Gaussian rank weights over the current archive.
    const std::size_t k = archive.size();
    const double qk = c.locality * static_cast<double>(k);
    weights.resize(k);
    for (std::size_t r = 0; r < k; ++r) {
      const double rd = static_cast<double>(r);
      weights[r] = std::exp(-rd * rd / (2.0 * qk * qk)) / (qk * std::sqrt(2.0 * std::numbers::pi));
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

    for (std::size_t p = 0; p < cfg.population; ++p) {
      auto& rng = streams[p];
      double pick = rng.next_unit() * total;
      std::size_t guide = k - 1;
      for (std::size_t r = 0; r < k; ++r) {
        if (pick < weights[r]) {
          guide = r;
          break;
        }
        pick -= weights[r];
      }
      const Point& s = archive[guide].x;
      for (std::size_t i = 0; i < n; ++i) {
        double spread = 0.0;
        for (const auto& e : archive) spread += std::abs(e.x[i] - s[i]);
        sigma[i] = c.deviation * spread / static_cast<double>(k - 1);
        x[p][i] = s[i] + sigma[i] * rng.next_normal();
      }
      bounds.clamp(x[p]);
    }
    fx = detail::evaluate_all(f, x, cfg.threads);
    merge(x, fx);
    tracker.record(x, fx);
  }
  return tracker.finish();
}

OptResult random_search(const Objective& f, const OptConfig& cfg) {
  const Bounds bounds = detail::check_config(f, cfg, 1);
  auto streams = member_streams(cfg);
  Tracker tracker(f, cfg);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const std::vector<Point> x = initial_population(bounds, streams);
    tracker.record(x, detail::evaluate_all(f, x, cfg.threads));
  }
  return tracker.finish();
}

OptResult minimize(Algorithm algorithm, const Objective& f, const OptConfig& cfg) {
  switch (algorithm) {
    case Algorithm::kPso:
      return pso_minimize(f, cfg);
    case Algorithm::kWoa:
      return woa_minimize(f, cfg);
    case Algorithm::kAco:
      return aco_minimize(f, cfg);
    case Algorithm::kRandom:
      return random_search(f, cfg);
  }
  fail(ErrorKind::kBadConfig, "unknown optimizer");
}

}  // namespace slab::optim

#pragma once

// Generation-by-generation simulation of the branching random walk,
// conditioned on survival to generation n by restart-on-extinction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brw/error.hpp"
#include "brw/offspring.hpp"
#include "brw/point_sample.hpp"
#include "brw/random.hpp"
#include "brw/steps.hpp"

namespace brw {

struct SimCaps {
  std::uint64_t population = 10'000'000;  // per generation
  std::uint64_t restarts = 100'000;
};

struct SimOptions {
  int n = 1;
  double window = 0.05;
  bool track_one_jump = false;
  SimCaps caps;
};

struct SimReplicate {
  int n = 0;
  double b_n = 1.0;
  PointSample positions;                // b_n^-1 S_v, |v| = n
  std::optional<PointSample> one_jump;  // b_n^-1 X_e with descendant counts
  double w_proxy = 0.0;                 // Z_n / mu^n
  std::uint64_t population = 0;         // Z_n
  std::uint64_t restarts = 0;
  double maximum = -kInf;               // exact scaled extremes, unwindowed
  double minimum = kInf;
};

/// Extremes with the exact minimum from the simulation itself.
inline Extremes extremes(const SimReplicate& rep, std::size_t k) {
  Extremes out = extremes(rep.positions, k);
  if (rep.population > 0) out.minimum = rep.minimum;
  return out;
}

namespace detail {

struct EdgeRecord {
  std::uint32_t parent;
  double step;
};

}  // namespace detail

/// Simulates one replicate. Only the current frontier of positions is kept
/// unless one-jump tracking is requested, in which case every edge is
/// recorded and descendant counts are propagated back from generation n.
inline SimReplicate simulate_replicate(const OffspringDistribution& offspring,
                                       const StepDistribution& step, const SimOptions& opt,
                                       Rng& rng) {
  if (opt.n < 1) throw domain_error("simulate_replicate: n must be >= 1");
  if (!(opt.window >= 0.0)) throw domain_error("simulate_replicate: window must be >= 0");
  if (opt.caps.population > std::numeric_limits<std::uint32_t>::max())
    throw domain_error("simulate_replicate: population cap must fit 32-bit indices");

  SimReplicate rep;
  rep.n = opt.n;
  rep.b_n = scaling_constant(step, offspring.mean(), opt.n);

  std::vector<double> frontier;
  std::vector<double> next;
  std::vector<std::vector<detail::EdgeRecord>> edges;

  for (;;) {
    frontier.assign(1, 0.0);
    edges.clear();
    if (opt.track_one_jump) edges.resize(static_cast<std::size_t>(opt.n));
    bool extinct = false;
    for (int gen = 0; gen < opt.n; ++gen) {
      next.clear();
      for (std::size_t idx = 0; idx < frontier.size(); ++idx) {
        const std::uint64_t kids = offspring.sample(rng);
        if (next.size() + kids > opt.caps.population)
          throw resource_error("population cap " + std::to_string(opt.caps.population) +
                               " exceeded in generation " + std::to_string(gen + 1) +
                               " (restarts so far " + std::to_string(rep.restarts) + ")");
        const double base = frontier[idx];
        for (std::uint64_t c = 0; c < kids; ++c) {
          const double x = sample_step(step, rng);
          next.push_back(base + x);
          if (opt.track_one_jump)
            edges[static_cast<std::size_t>(gen)].push_back({static_cast<std::uint32_t>(idx), x});
        }
      }
      frontier.swap(next);
      if (frontier.empty()) {
        extinct = true;
        break;
      }
    }
    if (!extinct) break;
    if (++rep.restarts > opt.caps.restarts)
      throw resource_error("restart cap " + std::to_string(opt.caps.restarts) +
                           " exceeded: offspring law is close to critical");
  }

  const double inv_b = 1.0 / rep.b_n;
  rep.population = frontier.size();
  rep.w_proxy = static_cast<double>(rep.population) / std::pow(offspring.mean(), opt.n);
  rep.positions = PointSample(opt.window);
  for (double s : frontier) {
    const double x = s * inv_b;
    rep.maximum = std::max(rep.maximum, x);
    rep.minimum = std::min(rep.minimum, x);
    rep.positions.add(x);
  }
  rep.positions.normalize();

  if (opt.track_one_jump) {
    PointSample jumps(opt.window);
    std::vector<std::uint64_t> below(frontier.size(), 1);
    for (int gen = opt.n - 1; gen >= 0; --gen) {
      const auto& layer = edges[static_cast<std::size_t>(gen)];
      const std::size_t parents = gen == 0 ? 1 : edges[static_cast<std::size_t>(gen - 1)].size();
      std::vector<std::uint64_t> above(parents, 0);
      for (std::size_t j = 0; j < layer.size(); ++j) {
        if (below[j] == 0) continue;
        jumps.add(layer[j].step * inv_b, below[j]);
        above[layer[j].parent] += below[j];
      }
      below.swap(above);
    }
    jumps.normalize();
    rep.one_jump = std::move(jumps);
  }
  return rep;
}

/// Per-set N_n(A) - N~_n(A).
inline std::vector<std::int64_t> one_jump_discrepancy(const SimReplicate& rep,
                                                      std::span<const Interval> sets) {
  if (!rep.one_jump) throw domain_error("one_jump_discrepancy: replicate has no one-jump data");
  const auto a = counts(rep.positions, sets);
  const auto b = counts(*rep.one_jump, sets);
  std::vector<std::int64_t> out(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    out[i] = static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]);
  return out;
}

}  // namespace brw

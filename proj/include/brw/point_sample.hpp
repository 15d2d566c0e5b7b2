#pragma once

// Finite point configurations on the punctured line, observed outside a
// window [-delta, delta], and the functionals evaluated on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "brw/error.hpp"
#include "brw/steps.hpp"

namespace brw {

struct Atom {
  double location;
  std::uint64_t multiplicity;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Atoms with |location| > window; everything inside the window is unobserved.
class PointSample {
 public:
  PointSample() = default;
  explicit PointSample(double window) : window_(window) {
    if (!(window >= 0.0)) throw domain_error("PointSample: window must be >= 0");
  }
  PointSample(std::vector<Atom> atoms, double window) : PointSample(window) {
    for (const auto& a : atoms) add(a.location, a.multiplicity);
  }

  /// Adds an atom; silently dropped when inside the window.
  void add(double location, std::uint64_t multiplicity = 1) {
    if (multiplicity == 0) throw domain_error("PointSample: multiplicity must be >= 1");
    if (std::fabs(location) > window_) atoms_.push_back({location, multiplicity});
  }

  double window() const { return window_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  std::uint64_t total_multiplicity() const {
    std::uint64_t n = 0;
    for (const auto& a : atoms_) n += a.multiplicity;
    return n;
  }

  /// Sorts atoms by descending location (ties keep insertion order).
  void normalize() {
    std::stable_sort(atoms_.begin(), atoms_.end(),
                     [](const Atom& a, const Atom& b) { return a.location > b.location; });
  }

  friend bool operator==(const PointSample&, const PointSample&) = default;

 private:
  std::vector<Atom> atoms_;
  double window_ = 0.0;
};

namespace detail {

// A set is observable when it keeps distance >= window from 0.
inline void require_observable(const Interval& iv, double window) {
  if (!(iv.lo < iv.hi)) throw domain_error("interval must satisfy lo < hi");
  const bool ok = (iv.lo >= 0.0 && iv.lo >= window && iv.lo > 0.0) ||
                  (iv.hi <= 0.0 && iv.hi <= -window && iv.hi < 0.0);
  if (!ok) throw domain_error("interval intersects the unobserved window around 0");
}

}  // namespace detail

/// N(A) = sum of multiplicities of atoms in A, per set.
inline std::vector<std::uint64_t> counts(const PointSample& sample,
                                         std::span<const Interval> sets) {
  for (const auto& iv : sets) detail::require_observable(iv, sample.window());
  std::vector<std::uint64_t> out(sets.size(), 0);
  for (const auto& a : sample.atoms())
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (sets[i].contains(a.location)) out[i] += a.multiplicity;
  return out;
}

/// s_a: every location multiplied by a, window rescaled to a * window.
inline PointSample scale_process(const PointSample& sample, double a) {
  if (!(a > 0.0)) throw domain_error("scale_process: a must be > 0");
  PointSample out(sample.window() * a);
  for (const auto& at : sample.atoms()) out.add(at.location * a, at.multiplicity);
  return out;
}

/// Sum of two point measures, observed on the coarser of the two windows.
inline PointSample superpose(const PointSample& a, const PointSample& b) {
  PointSample out(std::max(a.window(), b.window()));
  for (const auto& at : a.atoms()) out.add(at.location, at.multiplicity);
  for (const auto& at : b.atoms()) out.add(at.location, at.multiplicity);
  return out;
}

/// Step function g = sum_j value_j 1_{cell_j}; cells must be disjoint.
struct StepFunction {
  struct Cell {
    Interval set;
    double value;
  };
  std::vector<Cell> cells;

  double operator()(double x) const {
    for (const auto& c : cells)
      if (c.set.contains(x)) return c.value;
    return 0.0;
  }

  /// x -> g(x / y).
  StepFunction dilated(double y) const {
    if (!(y > 0.0)) throw domain_error("dilated: y must be > 0");
    StepFunction out;
    for (const auto& c : cells) out.cells.push_back({{c.set.lo * y, c.set.hi * y}, c.value});
    return out;
  }

  void validate() const {
    for (const auto& c : cells) {
      if (!(c.value >= 0.0)) throw domain_error("step function values must be >= 0");
      detail::require_away_from_zero(c.set);
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = i + 1; j < cells.size(); ++j)
        if (cells[i].set.lo < cells[j].set.hi && cells[j].set.lo < cells[i].set.hi)
          throw domain_error("step function cells must be disjoint");
  }
};

/// N(g) = sum multiplicity * g(location).
inline double integrate(const PointSample& sample, const StepFunction& g) {
  for (const auto& c : g.cells) detail::require_observable(c.set, sample.window());
  double total = 0.0;
  for (const auto& a : sample.atoms()) {
    const double v = g(a.location);
    if (v != 0.0) total += static_cast<double>(a.multiplicity) * v;
  }
  return total;
}

/// Upper order statistics (with multiplicity), their gaps and the minimum.
struct Extremes {
  std::vector<double> order;  // M^(1) >= M^(2) >= ...
  std::vector<double> gaps;   // G^(j) = M^(j) - M^(j+1)
  std::optional<double> minimum;
  bool shortfall = false;     // fewer than k observed atoms above the window
};

/// Order statistics are read from atoms above +window only: anything at or
/// below the window may hide unobserved points. The minimum is known only if
/// some atom lies below -window.
inline Extremes extremes(const PointSample& sample, std::size_t k) {
  std::vector<Atom> upper;
  std::optional<double> minimum;
  for (const auto& a : sample.atoms()) {
    if (a.location > sample.window()) upper.push_back(a);
    if (a.location < -sample.window() && (!minimum || a.location < *minimum))
      minimum = a.location;
  }
  std::stable_sort(upper.begin(), upper.end(),
                   [](const Atom& a, const Atom& b) { return a.location > b.location; });
  Extremes out;
  out.minimum = minimum;
  for (const auto& a : upper) {
    for (std::uint64_t m = 0; m < a.multiplicity && out.order.size() < k; ++m)
      out.order.push_back(a.location);
    if (out.order.size() == k) break;
  }
  out.shortfall = out.order.size() < k;
  for (std::size_t j = 0; j + 1 < out.order.size(); ++j)
    out.gaps.push_back(out.order[j] - out.order[j + 1]);
  return out;
}

}  // namespace brw

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace redundancy {

// Model constants shared by the analytic formulas, the mean-field solver and the simulator.
//
// lambda is the arrival intensity per server: batches of n jobs arrive at rate lambda*k/n.
// m is the number of redundant coded jobs (MDS), d the copies per job (replication).
struct SystemParams {
  double lambda = 0.5;
  int n = 1;
  int m = 0;
  int d = 1;
  int k = 1000;

  bool operator==(const SystemParams&) const = default;

  // Per-queue arrival rate of coded copies under MDS(n, m).
  double alpha() const { return lambda * static_cast<double>(n + m) / static_cast<double>(n); }

  // True when the conservative load guard alpha < 1 is violated.
  bool exceeds_load_guard() const { return alpha() >= 1.0; }

  void validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("must be > 0", "lambda");
    if (n < 1) throw ValidationError("must be >= 1", "n");
    if (m < 0) throw ValidationError("must be >= 0", "m");
    if (d < 1) throw ValidationError("must be >= 1", "d");
    if (k < std::max(n + m, d)) throw ValidationError("must be >= max(n+m, d)", "k");
  }
};

// A complementary CDF sampled on a strictly increasing time grid.
struct TailCurve {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }

  // Linear interpolation; clamps to the end values outside the grid.
  double at(double t) const {
    if (times.empty()) throw DomainError("empty tail curve");
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const auto hi = static_cast<std::size_t>(it - times.begin());
    const auto lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
  }

  // Checks grid ordering, range and monotonicity. `tol` absorbs rounding noise.
  bool is_valid_tail(double tol = 0.0) const {
    if (times.size() != values.size()) return false;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] >= 0.0 && values[i] <= 1.0)) return false;
      if (i > 0) {
        if (!(times[i] > times[i - 1])) return false;
        if (values[i] > values[i - 1] + tol) return false;
      }
    }
    return true;
  }
};

// Evenly spaced grid [0, t_max] with the given spacing; the last point is t_max itself.
inline std::vector<double> uniform_grid(double t_max, double spacing) {
  if (!(spacing > 0.0)) throw ValidationError("must be > 0", "step");
  if (!(t_max >= 0.0)) throw ValidationError("must be >= 0", "t_max");
  const auto count = static_cast<std::size_t>(std::llround(std::floor(t_max / spacing + 1e-9)));
  std::vector<double> grid;
  grid.reserve(count + 2);
  for (std::size_t i = 0; i <= count; ++i) grid.push_back(static_cast<double>(i) * spacing);
  if (t_max - grid.back() > 1e-9 * spacing) grid.push_back(t_max);
  return grid;
}

}  // namespace redundancy

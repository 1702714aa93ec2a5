#pragma once

// Empirical tail estimates with distribution-free (Dvoretzky-Kiefer-Wolfowitz) bands,
// and Kolmogorov-Smirnov distances against theory curves or a second sample.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "params.hpp"

namespace redundancy {

inline constexpr std::size_t kMinEcdfSamples = 100;

struct TailEstimate {
  double value = 0.0;  // fraction of samples > t
  double lower = 0.0;
  double upper = 0.0;
  double half_width = 0.0;
};

// Half-width sqrt(ln(2/delta) / (2N)) of the two-sided band at confidence 1 - delta.
inline double dkw_half_width(std::size_t count, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (count == 0) throw DomainError("no samples");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(count)));
}

inline TailEstimate ecdf_tail(std::span<const double> sorted, double t, double delta = 0.05) {
  if (sorted.size() < kMinEcdfSamples)
    throw DomainError("ecdf needs at least " + std::to_string(kMinEcdfSamples) + " samples, got " +
                      std::to_string(sorted.size()));
  const auto above = static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
  TailEstimate est;
  est.value = static_cast<double>(above) / static_cast<double>(sorted.size());
  est.half_width = dkw_half_width(sorted.size(), delta);
  est.lower = std::max(0.0, est.value - est.half_width);
  est.upper = std::min(1.0, est.value + est.half_width);
  return est;
}

// Empirical tail on a grid, as a TailCurve.
inline TailCurve ecdf_curve(std::span<const double> sorted, std::span<const double> grid) {
  TailCurve out;
  out.times.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  for (double t : grid) out.values.push_back(ecdf_tail(sorted, t).value);
  return out;
}

// sup_t |empirical tail - theory tail|, examined on both sides of every jump.
template <typename TheoryTail>
double sup_distance(std::span<const double> sorted, TheoryTail&& theory) {
  if (sorted.empty()) throw DomainError("no samples");
  const double count = static_cast<double>(sorted.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double s = theory(sorted[i]);
    const double before = (count - static_cast<double>(i)) / count;  // tail just below sorted[i]
    const double after = (count - static_cast<double>(j)) / count;   // tail at sorted[i]
    sup = std::max({sup, std::abs(s - before), std::abs(s - after)});
    i = j;
  }
  return sup;
}

// Kolmogorov limiting survival function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
inline double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with Stephens' small-sample correction.
inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("both samples must be non-empty");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

}  // namespace redundancy

#pragma once

// Test-only reference computations. Each one reaches its answer by a different route from
// the library code it is used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace redundancy::oracle {

// P(at least m+1 of n+m independent variables exceed t) by enumerating all 2^(n+m) outcomes.
inline double order_stat_tail_enumerated(int n, int m, double q) {
  const int total = n + m;
  double sum = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    const int exceed = __builtin_popcount(mask);
    if (exceed < m + 1) continue;
    sum += std::pow(q, exceed) * std::pow(1.0 - q, total - exceed);
  }
  return sum;
}

// Mean-field virtual tail for replication-d (n = 1, m = d-1), solved in closed form.
inline double replication_virtual_tail(double lambda, int d, double t) {
  return std::pow(lambda + (1.0 - lambda) * std::exp(t * (d - 1)), -1.0 / (d - 1));
}

// A replicated job finishes with the first of its d independent copies.
inline double replication_single_tail(double lambda, int d, double t) {
  return std::pow(replication_virtual_tail(lambda, d, t), d);
}

// Carry-less multiply with reduction by `poly`; no tables.
inline std::uint32_t gf_mul_slow(std::uint32_t a, std::uint32_t b, unsigned bits, std::uint32_t poly) {
  std::uint32_t result = 0;
  while (b) {
    if (b & 1u) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << bits)) a ^= poly;
  }
  return result;
}

// Mean of the n-th smallest of n+m Exp(1) draws: sum_{i=0}^{n-1} 1/(n+m-i).
inline double exp_order_stat_mean(int n, int m) {
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += 1.0 / (n + m - i);
  return mean;
}

inline std::vector<double> exp_samples(std::size_t count, double rate, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> dist(rate);
  std::vector<double> out(count);
  for (auto& x : out) x = dist(rng);
  return out;
}

}  // namespace redundancy::oracle

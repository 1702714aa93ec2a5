#pragma once

// Closed-form tails for replication-d and for the order statistics behind MDS(n, m)
// batch completion. All functions are pure.

#include <cmath>
#include <cstdint>
#include <string>

#include "compensated.hpp"
#include "errors.hpp"
#include "params.hpp"

namespace redundancy {

// Largest n + m accepted by the order-statistic routines.
inline constexpr int kMaxCodeLength = 30;

// Exact binomial coefficient for the small arguments used here (n <= 62).
constexpr std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  return r;
}

namespace detail {

inline void check_probability(double q, const char* name) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(q));
}

inline void check_code_shape(int n, int m) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (m < 0) throw DomainError("m must be >= 0");
  if (n + m > kMaxCodeLength) throw DomainError("n+m must be <= " + std::to_string(kMaxCodeLength));
}

inline void check_replication(double lambda, int d) {
  if (d < 2) throw DomainError("formula undefined for d=1 (use the M/M/1 sojourn tail instead)");
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  if (!(lambda < 1.0)) throw DomainError("lambda >= 1 is an unstable regime");
}

// log(lambda + (1 - lambda) e^x) without overflow for large x.
inline double log_mix_exp(double lambda, double x) {
  if (x > 30.0) return x + std::log1p(-lambda + lambda * std::exp(-x));
  return std::log(lambda + (1.0 - lambda) * std::exp(x));
}

}  // namespace detail

// P(R^{1,d} > t): completion time of one job replicated d times, mean-field limit.
inline double rep_single_tail(double lambda, int d, double t) {
  detail::check_replication(lambda, d);
  if (!(t >= 0.0)) throw DomainError("t must be >= 0");
  const double dm1 = static_cast<double>(d - 1);
  return std::exp(-static_cast<double>(d) / dm1 * detail::log_mix_exp(lambda, dm1 * t));
}

inline double rep_single_tail(const SystemParams& p, double t) { return rep_single_tail(p.lambda, p.d, t); }

// 1 - (1 - x)^n, accurate when x is tiny.
inline double max_of_n_tail(double x, int n) {
  if (n == 1 || x >= 1.0) return std::min(x, 1.0);
  return -std::expm1(static_cast<double>(n) * std::log1p(-x));
}

// P(R^{n,d} > t): the last of n independently replicated jobs.
inline double rep_batch_tail(double lambda, int n, int d, double t) {
  if (n < 1) throw DomainError("n must be >= 1");
  return max_of_n_tail(rep_single_tail(lambda, d, t), n);
}

inline double rep_batch_tail(const SystemParams& p, double t) { return rep_batch_tail(p.lambda, p.n, p.d, t); }

// P(n-th smallest of n+m i.i.d. variables exceeds t), given per-variable tail q.
//
// Evaluated as the binomial tail P(Bin(n+m, q) >= m+1): every term is non-negative, so
// nothing cancels. Equal to the alternating-sum form below.
inline double order_stat_tail(int n, int m, double q) {
  detail::check_code_shape(n, m);
  detail::check_probability(q, "q");
  const int total = n + m;
  double sum = 0.0;
  for (int exceed = total; exceed >= m + 1; --exceed) {
    sum += static_cast<double>(binomial(total, exceed)) * std::pow(q, exceed) * std::pow(1.0 - q, total - exceed);
  }
  return std::min(sum, 1.0);
}

// The same probability as an alternating sum
//   (n+m) C(n+m-1, n-1) sum_i C(n-1, i) (-1)^i q^{m+i+1} / (m+i+1),
// accumulated in double-double arithmetic. Kept as a cross-check.
inline double order_stat_tail_alternating(int n, int m, double q) {
  detail::check_code_shape(n, m);
  detail::check_probability(q, "q");
  using detail::DoubleDouble;
  DoubleDouble sum;
  for (int i = 0; i < n; ++i) {
    DoubleDouble term = detail::dd_pow(q, m + i + 1) * static_cast<double>(binomial(n - 1, i)) /
                        static_cast<double>(m + i + 1);
    sum = (i % 2 == 0) ? sum + term : sum - term;
  }
  const double lead = static_cast<double>(n + m) * static_cast<double>(binomial(n + m - 1, n - 1));
  return (sum * lead).value();
}

// Leading term of the MDS tail as q -> 0: (n+m) C(n+m-1, n-1) q^{m+1} / (m+1).
inline double mds_leading_term(int n, int m, double q) {
  detail::check_code_shape(n, m);
  detail::check_probability(q, "q");
  const double coeff = static_cast<double>(n + m) * static_cast<double>(binomial(n + m - 1, n - 1)) /
                       static_cast<double>(m + 1);
  return coeff * std::pow(q, m + 1);
}

// Heuristic replication tail for i.i.d. queues with sojourn tail fbar: 1 - (1 - fbar^d)^n.
inline double rep_heuristic_tail(int n, int d, double fbar) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (d < 1) throw DomainError("d must be >= 1");
  detail::check_probability(fbar, "fbar");
  return max_of_n_tail(std::pow(fbar, d), n);
}

}  // namespace redundancy

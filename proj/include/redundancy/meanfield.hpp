#pragma once

// Mean-field tail of a virtual (uncoded, never removed) job under MDS(n, m) dispatch with
// redundant removal, and the batch-completion tail composed from it.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "compensated.hpp"
#include "errors.hpp"
#include "orderstats.hpp"
#include "params.hpp"
#include "rk4.hpp"

namespace redundancy {

struct MeanFieldProblem {
  SystemParams params;
  double t_max = 15.0;
  double step = 1e-3;

  void validate() const {
    if (!(params.lambda > 0.0)) throw ValidationError("must be > 0", "lambda");
    if (!(params.lambda < 1.0)) throw ValidationError("lambda >= 1 is an unstable regime", "lambda");
    if (params.n < 1) throw ValidationError("must be >= 1", "n");
    if (params.m < 0) throw ValidationError("must be >= 0", "m");
    if (params.n + params.m > kMaxCodeLength)
      throw ValidationError("n+m must be <= " + std::to_string(kMaxCodeLength), "m");
    if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("must be > 0", "step");
    if (!(t_max >= 10.0 / (params.m + 1))) throw ValidationError("must be >= 10/(m+1)", "t_max");
    if (step > t_max) throw ValidationError("must not exceed t_max", "step");
  }

  // Non-empty when the conservative guard lambda (n+m)/n < 1 is violated. The mean-field
  // dynamics still decay for any lambda < 1, so this is advisory.
  std::optional<std::string> load_warning() const {
    if (!params.exceeds_load_guard()) return std::nullopt;
    std::ostringstream os;
    os << "lambda*(n+m)/n = " << params.alpha() << " >= 1 (n=" << params.n << ", m=" << params.m
       << ", lambda=" << params.lambda << "); stability is not guaranteed";
    return os.str();
  }
};

struct VirtualTailSolution {
  TailCurve virtual_tail;  // P(V > t)
  TailCurve batch_tail;    // P(C^{n,m} > t)
};

// Right-hand side of d/dt P(V > t) at P(V > t) = q.
//
// The alternating sum alpha (n+m-1) C(n+m-2, n-1) sum_i C(n-1,i) (-1)^i q^{m+i+1} / ((m+i)(m+i+1))
// equals alpha * integral_0^q P(Bin(n+m-1, 1-u) <= n-1) du, which integrates term by term to
//   (lambda / n) * sum_{l=m+1}^{n+m} (l - m) C(n+m, l) q^l (1-q)^{n+m-l}.
// The latter has no cancellation and is also defined for m = 0.
inline double ode_rhs(const SystemParams& p, double q) {
  detail::check_probability(q, "q");
  const int total = p.n + p.m;
  if (total > kMaxCodeLength) throw DomainError("n+m must be <= " + std::to_string(kMaxCodeLength));
  double sum = 0.0;
  for (int l = total; l >= p.m + 1; --l) {
    sum += static_cast<double>(l - p.m) * static_cast<double>(binomial(total, l)) * std::pow(q, l) *
           std::pow(1.0 - q, total - l);
  }
  return -q + p.lambda / static_cast<double>(p.n) * sum;
}

inline double ode_rhs(const MeanFieldProblem& problem, double q) { return ode_rhs(problem.params, q); }

// The alternating form, in double-double arithmetic. Requires m >= 1.
inline double ode_rhs_alternating(const SystemParams& p, double q) {
  detail::check_probability(q, "q");
  if (p.m < 1) throw DomainError("alternating form requires m >= 1");
  if (p.n + p.m > kMaxCodeLength) throw DomainError("n+m must be <= " + std::to_string(kMaxCodeLength));
  using detail::DoubleDouble;
  DoubleDouble sum;
  for (int i = 0; i < p.n; ++i) {
    const double denom = static_cast<double>(p.m + i) * static_cast<double>(p.m + i + 1);
    DoubleDouble term = detail::dd_pow(q, p.m + i + 1) * static_cast<double>(binomial(p.n - 1, i)) / denom;
    sum = (i % 2 == 0) ? sum + term : sum - term;
  }
  const double coeff = p.alpha() * static_cast<double>(p.n + p.m - 1) *
                       static_cast<double>(binomial(p.n + p.m - 2, p.n - 1));
  return (sum * coeff - DoubleDouble(q)).value();
}

// Integrates the virtual-job tail from P(V > 0) = 1 with classical RK4 and maps the
// order-statistic tail over it to get the batch completion tail.
inline VirtualTailSolution solve_virtual_tail(const MeanFieldProblem& problem) {
  problem.validate();
  const SystemParams& p = problem.params;
  const auto expected = static_cast<std::size_t>(problem.t_max / problem.step) + 2;

  VirtualTailSolution out;
  out.virtual_tail.times.reserve(expected);
  out.virtual_tail.values.reserve(expected);

  auto system = [&p](double, double q) { return ode_rhs(p, std::clamp(q, 0.0, 1.0)); };
  auto observer = [&](double t, double& q) {
    if (!std::isfinite(q)) throw IntegrationError(problem.step, t, q);
    q = std::clamp(q, 0.0, 1.0);
    out.virtual_tail.times.push_back(t);
    out.virtual_tail.values.push_back(q);
    return true;
  };
  integrate_fixed(system, 1.0, 0.0, problem.t_max, problem.step, observer);

  out.batch_tail.times = out.virtual_tail.times;
  out.batch_tail.values.reserve(out.virtual_tail.values.size());
  for (double q : out.virtual_tail.values) out.batch_tail.values.push_back(order_stat_tail(p.n, p.m, q));
  return out;
}

// Least-squares slope of log(value) against t over the grid points inside [t_lo, t_hi].
inline double tail_exponent(const TailCurve& curve, double t_lo, double t_hi) {
  if (curve.empty()) throw DomainError("empty curve");
  if (!(t_lo < t_hi)) throw DomainError("window must satisfy t_lo < t_hi");
  const double slack = 1e-9 * std::max(1.0, std::abs(curve.times.back()));
  if (t_lo < curve.times.front() - slack || t_hi > curve.times.back() + slack)
    throw DomainError("window lies outside the curve's grid");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double t = curve.times[i];
    if (t < t_lo - slack || t > t_hi + slack) continue;
    const double v = curve.values[i];
    if (!(v > 0.0)) throw DomainError("curve value is not strictly positive at t=" + std::to_string(t));
    xs.push_back(t);
    ys.push_back(std::log(v));
  }
  if (xs.size() < 2) throw DomainError("window contains fewer than two grid points");
  const double count = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  return sxy / sxx;
}

}  // namespace redundancy

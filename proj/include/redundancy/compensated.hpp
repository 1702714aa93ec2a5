#pragma once

#include <cmath>

namespace redundancy::detail {

// Unevaluated sum hi + lo carrying roughly twice the precision of a double.
// Built from error-free transformations; used where alternating-sign
// sums must be evaluated accurately.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble a, double b) {
  const double q1 = a.hi / b;
  DoubleDouble r = a - two_prod(q1, b);
  const double q2 = r.hi / b;
  r = r - two_prod(q2, b);
  const double q3 = r.hi / b;
  return DoubleDouble(q1) + DoubleDouble(q2) + DoubleDouble(q3);
}

inline DoubleDouble dd_pow(double base, int exponent) {
  DoubleDouble result(1.0);
  DoubleDouble factor(base);
  while (exponent > 0) {
    if (exponent & 1) result = result * factor;
    factor = factor * factor;
    exponent >>= 1;
  }
  return result;
}

}  // namespace redundancy::detail

#pragma once

#include <cmath>

namespace mfib::local {

/// Forward-mode dual number. Nest Dual<Dual<double>> for second derivatives.
template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(double c) : v(c), d(0.0) {}  // NOLINT(google-explicit-constructor)
  Dual(T value, T deriv) : v(value), d(deriv) {}

  static Dual variable(T value) { return {value, T(1.0)}; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
};

template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.v), a.d * cos(a.v)};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.v), -(a.d * sin(a.v))};
}

inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) {
  return value(x.v);
}

}  // namespace mfib::local

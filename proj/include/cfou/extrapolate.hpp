#pragma once

#include <cmath>

namespace cfou {

// Sequences f(x) = L + a x^p + ... sampled at x, x/2 (f0, f1).
template <class T>
T richardson2(const T& f0, const T& f1, double p) {
  const double r = std::pow(2.0, -p);
  return (f1 - r * f0) / (1.0 - r);
}

// f(x) = L + a x^p1 + b x^p2 + ... sampled at x, x/2, x/4.
template <class T>
T richardson3(const T& f0, const T& f1, const T& f2, double p1, double p2) {
  const T g0 = richardson2(f0, f1, p1);
  const T g1 = richardson2(f1, f2, p1);
  return richardson2(g0, g1, p2);
}

}  // namespace cfou

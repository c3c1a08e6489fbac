#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cfou/errors.hpp"

namespace cfou {

using cplx = std::complex<double>;

enum class Regime { Low, Mid, Half, High };

struct HurstParam {
  double h;

  explicit HurstParam(double value) : h(value) {
    if (!(value > 0.0 && value < 1.0)) throw DomainError("hurst must lie in (0,1)");
  }
  Regime regime() const {
    if (h <= 0.25) return Regime::Low;
    if (h < 0.5) return Regime::Mid;
    if (h == 0.5) return Regime::Half;
    return Regime::High;
  }
  double two_h() const { return 2.0 * h; }
};

struct UniformGrid {
  double t_end;
  std::size_t n;

  UniformGrid(double horizon, std::size_t steps) : t_end(horizon), n(steps) {
    if (!(horizon > 0.0)) throw DomainError("t_end must be positive");
    if (steps < 2) throw DomainError("grid needs at least 2 steps");
  }
  double dt() const { return t_end / static_cast<double>(n); }
  double node(std::size_t k) const { return static_cast<double>(k) * dt(); }
};

struct Seed {
  std::uint64_t base = 0;
  std::uint64_t stream = 0;
};

struct RealPath {
  UniformGrid grid;
  std::vector<double> values;
};

struct ComplexPath {
  UniformGrid grid;
  std::vector<cplx> values;
};

// gamma = lambda - i omega with lambda > 0
struct DriftParam {
  double lambda;
  double omega;

  DriftParam(double l, double w) : lambda(l), omega(w) {
    if (!(l > 0.0)) throw DomainError("gamma.lambda must be positive");
  }
  cplx gamma() const { return {lambda, -omega}; }
  cplx gamma_bar() const { return {lambda, omega}; }
};

}  // namespace cfou

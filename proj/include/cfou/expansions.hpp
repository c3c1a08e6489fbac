#pragma once

#include <span>
#include <vector>

#include "cfou/quad.hpp"
#include "cfou/types.hpp"

namespace cfou::quad {

enum class DeltaRegime { DeltaNeg, DeltaZero, DeltaPos, NotApplicable };

struct ExpansionResult {
  cplx value_expansion;
  cplx value_quadrature;
  double abs_gap;
  DeltaRegime regime;
};

// Tolerance used for expansion checks: remainders are many digits below the values.
Tolerance expansion_tolerance();

// -Gamma(2H) Gamma(4H-1) Gamma(3-4H) / (2 Gamma(2-2H))
double kappa(const HurstParam& h);

// e^{-T} int_0^T e^x x^beta dx  against  T^beta - beta T^(beta-1)
ExpansionResult asym_key0(double beta, double t_end, const Tolerance& tol = expansion_tolerance());

// int_{0<=x<=z<=T} e^{x-z} x^a1 z^a2 against the regime-matched expansion in
// delta = 1 + a1 + a2.
ExpansionResult asym_key(double alpha1, double alpha2, double t_end, const Tolerance& tol = expansion_tolerance());

enum class CoroIntegral { XZ, ZX, Weighted };

// Complex triangle integrals with kernel e^{gamma(x-z)}:
//   XZ:       x^(2H-1) z^(2H)
//   ZX:       x^(2H)   z^(2H-1)
//   Weighted: x^(2H-1) z^(2H) (z-x)
ExpansionResult asym_coro(const DriftParam& gamma, const HurstParam& h, double t_end, CoroIntegral which,
                          const Tolerance& tol = expansion_tolerance());
cplx coro_expansion(const DriftParam& gamma, const HurstParam& h, double t_end, CoroIntegral which);

// e^{-s} int_0^s e^r r^beta dr / min(1, s^beta)
double upper_bound_ratio(double beta, double s, const Tolerance& tol = {});

struct LineFit {
  double slope;
  double intercept;
};
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);
// Slope of log|y| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace cfou::quad

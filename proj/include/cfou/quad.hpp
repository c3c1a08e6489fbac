#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cfou/types.hpp"

namespace cfou::quad {

struct Tolerance {
  double rtol = 1e-8;
  double atol = 1e-12;
  int max_levels = 20;
  int max_panels = 20000;
  int refine_passes = 0;  // extra uniform bisections after convergence
};

// Weight (x-a)^exponent_left (b-x)^exponent_right on [a,b].
struct SingularWeight {
  double exponent_left = 0.0;
  double exponent_right = 0.0;
  double a = 0.0;
  double b = 1.0;
};

struct Estimate {
  cplx value;
  double error;
  int panels;
  bool converged;
};

// Gauss-Jacobi rule for (1-y)^alpha (1+y)^beta on [-1,1] (Golub-Welsch).
struct JacobiRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
JacobiRule gauss_jacobi_rule(int n, double alpha, double beta);
// Thread-local cached variant.
const JacobiRule& cached_rule(int n, double alpha, double beta);

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;
using ComplexFn2 = std::function<cplx(double, double)>;

// Globally adaptive bisection. Panels touching a (resp. b) carry the
// singular factor in the rule; interior panels evaluate it explicitly.
// `breaks` are extra initial split points inside (a,b).
Estimate integrate_adaptive(const ComplexFn& f, const SingularWeight& w, const Tolerance& tol = {},
                            std::span<const double> breaks = {});

// Throws AccuracyError when the tolerance is not met.
double integrate_singular_1d(const RealFn& f, const SingularWeight& w, const Tolerance& tol = {},
                             std::span<const double> breaks = {});
cplx integrate_singular_1d_complex(const ComplexFn& f, const SingularWeight& w, const Tolerance& tol = {},
                                   std::span<const double> breaks = {});

// Split points a + d, a + 2d, a + 4d, ... below b (geometric grading away from a).
std::vector<double> graded_breaks(double a, double b, double first);
// Mirror image: b - d, b - 2d, ... above a.
std::vector<double> graded_breaks_toward(double a, double b, double first);

// Double integral over 0 <= x <= z <= T of g(x,z) x^a z^b, via x = u z:
//   int_0^T z^(a+b+1) int_0^1 g(u z, z) u^a du dz.
// `decay` is the rate of any e^{-decay (z-x)} factor in g (0 if none); it
// sets the grading of the inner rule toward the diagonal.
cplx integrate_triangle(const ComplexFn2& g, double a, double b, double t_end, double decay,
                        const Tolerance& tol = {});

// Tolerance for inner integrals of a nested rule.
Tolerance inner_tolerance(const Tolerance& outer);

}  // namespace cfou::quad

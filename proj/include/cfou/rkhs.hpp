#pragma once

#include <functional>
#include <vector>

#include "cfou/quad.hpp"
#include "cfou/types.hpp"

namespace cfou::rkhs {

using Evaluator = std::function<cplx(double)>;

// One smooth piece on [a,b]. `hints` are interior points where the piece
// varies quickly; quadrature starts with them as split points.
struct Piece {
  double a;
  double b;
  Evaluator value;
  Evaluator derivative;
  std::vector<double> hints;
};

// Bounded-variation function built from smooth pieces with disjoint interiors,
// zero outside their union.
class PiecewiseSmoothFn {
 public:
  PiecewiseSmoothFn() = default;
  explicit PiecewiseSmoothFn(std::vector<Piece> pieces);

  void add(Piece p);
  const std::vector<Piece>& pieces() const { return pieces_; }
  cplx operator()(double t) const;
  double support_begin() const;
  double support_end() const;

  static PiecewiseSmoothFn indicator(double a, double b, cplx coeff = 1.0);
  // coeff * e^{rate t} on [a,b]
  static PiecewiseSmoothFn exponential(cplx rate, double a, double b, cplx coeff = 1.0);
  // sum_k coeffs[k] t^k on [a,b]
  static PiecewiseSmoothFn polynomial(std::vector<cplx> coeffs, double a, double b);
  // coeff * (t_end - u)^(-exponent) on [a,b], b < t_end
  static PiecewiseSmoothFn distance_power(double t_end, double exponent, double a, double b, cplx coeff = 1.0);

 private:
  std::vector<Piece> pieces_;
};

struct Atom {
  double location;
  cplx mass;
};

struct DensityPiece {
  double a;
  double b;
  Evaluator density;
  std::vector<double> hints;
};

// nu_g: a density part plus point masses.
struct AtomicMeasure {
  std::vector<DensityPiece> density;
  std::vector<Atom> atoms;

  cplx integrate(const Evaluator& f, const quad::Tolerance& tol = {}) const;
  cplx total_mass(const quad::Tolerance& tol = {}) const;
};

// Density from piece derivatives, +value at left ends, -value at right ends.
// Coincident atoms merge; atoms below 1e-14 in modulus are dropped.
AtomicMeasure bv_measure(const PiecewiseSmoothFn& g);

// <f, g> in the fBm reproducing kernel space, conjugate-linear in g.
// H < 1/2: H int int f(t) |t-s|^(2H-1) sgn(t-s) dt conj(nu_g)(ds)
// H = 1/2: L2 inner product
// H > 1/2: H(2H-1) int int f(t) conj(g(s)) |t-s|^(2H-2) dt ds
cplx inner_product(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const HurstParam& h,
                   const quad::Tolerance& tol = {});

// Brute-force oracle: midpoint step projection on an n-cell grid of
// [0, horizon] and the increment covariance Gram matrix.
cplx grid_gram_inner(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const HurstParam& h, std::size_t n);
cplx grid_gram_inner(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const HurstParam& h, std::size_t n,
                     double horizon);

// int_a^b F(x) |x-c|^p sgn(x-c) dx (signed) or without the sign (unsigned),
// with the power singularity at c carried by the quadrature rule.
cplx kernel_moment(const Evaluator& f, double a, double b, double c, double p, bool signed_kernel,
                   const quad::Tolerance& tol, const std::vector<double>& hints = {});

}  // namespace cfou::rkhs

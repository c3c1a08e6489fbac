#include "cfou/expansions.hpp"

#include <cmath>

namespace cfou::quad {

namespace {

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

// Gamma may be negative for arguments in (-1,0); lgamma drops the sign.
double gamma_fn(double x) { return std::tgamma(x); }

// e^{-T} int_0^T e^x x^beta dx, graded toward T where the weight e^{x-T} lives.
double damped_power_integral(double beta, double t_end, const Tolerance& tol) {
  const auto brk = graded_breaks_toward(0.0, t_end, 0.5);
  const RealFn f = [t_end](double x) { return std::exp(x - t_end); };
  return integrate_singular_1d(f, SingularWeight{beta, 0.0, 0.0, t_end}, tol, brk);
}

}  // namespace

Tolerance expansion_tolerance() {
  Tolerance t;
  t.rtol = 1e-12;
  t.atol = 1e-14;
  return t;
}

double kappa(const HurstParam& h) {
  const double x = h.h;
  return -gamma_fn(2.0 * x) * gamma_fn(4.0 * x - 1.0) * gamma_fn(3.0 - 4.0 * x) / (2.0 * gamma_fn(2.0 - 2.0 * x));
}

ExpansionResult asym_key0(double beta, double t_end, const Tolerance& tol) {
  if (!(beta > -1.0 && beta < 0.0)) throw DomainError("asym_key0: beta must lie in (-1,0)");
  if (!(t_end > 1.0)) throw DomainError("asym_key0: t_end must exceed 1");
  const double expansion = std::pow(t_end, beta) - beta * std::pow(t_end, beta - 1.0);
  const double q = damped_power_integral(beta, t_end, tol);
  return ExpansionResult{expansion, q, std::abs(expansion - q), DeltaRegime::NotApplicable};
}

ExpansionResult asym_key(double alpha1, double alpha2, double t_end, const Tolerance& tol) {
  if (!(alpha1 > -1.0)) throw DomainError("asym_key: alpha1 must exceed -1");
  const double delta = 1.0 + alpha1 + alpha2;
  if (!(delta > -1.0 && delta < 1.0)) throw DomainError("asym_key: delta = 1 + alpha1 + alpha2 must lie in (-1,1)");
  if (!(t_end > 1.0)) throw DomainError("asym_key: t_end must exceed 1");
  double expansion;
  DeltaRegime regime;
  if (std::abs(delta) < 1e-12) {
    regime = DeltaRegime::DeltaZero;
    expansion = std::log(t_end);
  } else if (delta < 0.0) {
    regime = DeltaRegime::DeltaNeg;
    expansion = gamma_fn(delta + 1.0) * beta_fn(1.0 + alpha1, -delta) + std::pow(t_end, delta) / delta;
  } else {
    regime = DeltaRegime::DeltaPos;
    expansion = std::pow(t_end, delta) / delta + alpha2 * gamma_fn(delta) * beta_fn(1.0 + alpha1, 1.0 - delta) -
                alpha1 / (alpha1 + alpha2) * std::pow(t_end, delta - 1.0);
  }
  const ComplexFn2 g = [](double x, double z) { return cplx(std::exp(x - z), 0.0); };
  const cplx q = integrate_triangle(g, alpha1, alpha2, t_end, 1.0, tol);
  return ExpansionResult{expansion, q, std::abs(expansion - q), regime};
}

cplx coro_expansion(const DriftParam& gamma, const HurstParam& h, double t_end, CoroIntegral which) {
  const double H = h.h;
  const cplx g = gamma.gamma();
  const double k = kappa(h);
  const double T = t_end;
  switch (which) {
    case CoroIntegral::XZ:
      return std::pow(T, 4 * H) / (4 * H * g) + (1 - 2 * H) / ((4 * H - 1) * g * g) * std::pow(T, 4 * H - 1) +
             2 * H * k / std::pow(g, 1 + 4 * H) + (H - 1) / (g * g * g) * std::pow(T, 4 * H - 2);
    case CoroIntegral::ZX:
      return std::pow(T, 4 * H) / (4 * H * g) - 2 * H / ((4 * H - 1) * g * g) * std::pow(T, 4 * H - 1) -
             2 * H * k / std::pow(g, 1 + 4 * H) + H / (g * g * g) * std::pow(T, 4 * H - 2);
    case CoroIntegral::Weighted:
      return std::pow(T, 4 * H) / (4 * H * g * g) + 2 * (1 - 2 * H) / ((4 * H - 1) * g * g * g) * std::pow(T, 4 * H - 1) +
             2 * H * (4 * H + 1) * k / std::pow(g, 2 + 4 * H) + H / (g * g * g) * std::pow(T, 4 * H - 2);
  }
  return 0.0;
}

ExpansionResult asym_coro(const DriftParam& gamma, const HurstParam& h, double t_end, CoroIntegral which,
                          const Tolerance& tol) {
  if (!(h.h > 0.25 && h.h < 0.5)) throw DomainError("asym_coro: hurst must lie in (1/4,1/2)");
  const double H = h.h;
  const cplx g = gamma.gamma();
  double a = 2 * H - 1, b = 2 * H;
  if (which == CoroIntegral::ZX) std::swap(a, b);
  const bool weighted = which == CoroIntegral::Weighted;
  const ComplexFn2 f = [g, weighted](double x, double z) {
    const cplx e = std::exp(g * (x - z));
    return weighted ? e * (z - x) : e;
  };
  const cplx q = integrate_triangle(f, a, b, t_end, gamma.lambda, tol);
  const cplx e = coro_expansion(gamma, h, t_end, which);
  return ExpansionResult{e, q, std::abs(e - q), DeltaRegime::NotApplicable};
}

double upper_bound_ratio(double beta, double s, const Tolerance& tol) {
  if (!(beta > -1.0)) throw DomainError("upper_bound_ratio: beta must exceed -1");
  if (!(s > 0.0)) throw DomainError("upper_bound_ratio: s must be positive");
  return damped_power_integral(beta, s, tol) / std::min(1.0, std::pow(s, beta));
}

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("least_squares_line needs two or more matching points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DegenerateError("least_squares_line: abscissae are all equal");
  const double slope = sxy / sxx;
  return LineFit{slope, my - slope * mx};
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return least_squares_line(lx, ly).slope;
}

}  // namespace cfou::quad

#include "cfou/bridges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "cfou/expansions.hpp"
#include "cfou/extrapolate.hpp"
#include "cfou/fbm.hpp"
#include "cfou/parallel.hpp"
#include "cfou/rkhs.hpp"

namespace cfou::bridges {

namespace {

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

double level_time(double t_end, int k) { return t_end * (1.0 - std::ldexp(1.0, -k)); }

double norm_sq(const rkhs::PiecewiseSmoothFn& f, const HurstParam& h, const quad::Tolerance& tol) {
  return rkhs::inner_product(f, f, h, tol).real();
}

void require_levels(int k_max) {
  if (k_max < 3 || k_max > 40) throw DomainError("dyadic level k_max must lie in [3,40]");
}

// Breaks graded toward b at the scale of the distance from b to T.
std::vector<double> toward_terminal(double a, double b, double t_end) {
  const double gap = t_end - b;
  if (gap >= b - a) return {};
  return quad::graded_breaks_toward(a, b, gap);
}

}  // namespace

void validate_xi(const BridgeParams& p) {
  if (!(p.alpha > 0.0 && p.alpha < p.h.h)) throw DomainError("alpha must lie in (0,hurst)");
  if (!(p.t_end > 0.0)) throw DomainError("t_end must be positive");
}

double xi_closed_form(const BridgeParams& p) {
  validate_xi(p);
  const double H = p.h.h, a = p.alpha;
  return H / (H - a) * std::exp(std::lgamma(1.0 - a) + std::lgamma(2.0 * H) - std::lgamma(2.0 * H - a)) *
         std::pow(p.t_end, 2.0 * (H - a));
}

LimitSequence xi_truncated_moments(const BridgeParams& p, int k_max, const quad::Tolerance& tol) {
  validate_xi(p);
  require_levels(k_max);
  LimitSequence seq;
  for (int k = 1; k <= k_max; ++k) {
    const double t = level_time(p.t_end, k);
    seq.k.push_back(k);
    seq.t.push_back(t);
    seq.raw.push_back(norm_sq(rkhs::PiecewiseSmoothFn::distance_power(p.t_end, p.alpha, 0.0, t), p.h, tol));
  }
  const std::size_t m = seq.raw.size();
  seq.limit = richardson3(seq.raw[m - 3], seq.raw[m - 2], seq.raw[m - 1], 2.0 * (p.h.h - p.alpha), 1.0 - p.alpha);
  return seq;
}

std::vector<double> xi_mc_weights(const BridgeParams& p, std::size_t n) {
  validate_xi(p);
  if (n < 2) throw DomainError("mc grid needs at least 2 cells");
  const double dt = p.t_end / static_cast<double>(n);
  std::vector<double> w(n);
  for (std::size_t k = 0; k + 1 < n; ++k) w[k] = std::pow(p.t_end - static_cast<double>(k) * dt, -p.alpha);
  w[n - 1] = std::pow(dt, -p.alpha) / (1.0 - p.alpha);
  return w;
}

double xi_discrete_variance(const BridgeParams& p, std::size_t n) {
  const auto w = xi_mc_weights(p, n);
  const std::vector<cplx> wc(w.begin(), w.end());
  auto acov = fbm::increment_autocov_table(n, p.h);
  const double scale = std::pow(p.t_end / static_cast<double>(n), 2.0 * p.h.h);
  for (auto& r : acov) r *= scale;
  return par::toeplitz_form(wc, wc, acov).real();
}

double xi_mc_moment(const BridgeParams& p, std::size_t n, std::size_t reps, std::uint64_t seed) {
  const auto w = xi_mc_weights(p, n);
  if (reps < 2) throw DomainError("mc needs at least 2 replications");
  const std::size_t pairs = (reps + 1) / 2;
  const fbm::FgnSynthesizer syn(p.h, UniformGrid(p.t_end, n));
  std::vector<double> x(2 * pairs);
  par::for_each_index(pairs, [&](std::size_t r) {
    std::vector<double> a(n), b(n);
    syn.increment_pair(Seed{seed, r}, a, b);
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sa += w[k] * a[k];
      sb += w[k] * b[k];
    }
    x[2 * r] = sa;
    x[2 * r + 1] = sb;
  });
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

double xi_second_moment(const BridgeParams& p, MomentMethod method, const MomentOptions& opts) {
  switch (method) {
    case MomentMethod::ClosedForm:
      return xi_closed_form(p);
    case MomentMethod::Quadrature:
      return xi_truncated_moments(p, opts.k_max, opts.tol).limit;
    case MomentMethod::MonteCarlo:
      return xi_mc_moment(p, opts.mc_steps, opts.mc_reps, opts.seed);
  }
  throw DomainError("unknown moment method");
}

double bridge_second_moment(const HurstParam& h, double g_exp) {
  const double H = h.h;
  if (!(g_exp > H && g_exp < 1.0)) throw DomainError("g_exp must lie in (hurst,1)");
  return H * H / (g_exp - H) * beta_fn(2.0 * H, 1.0 + g_exp - 2.0 * H);
}

double bridge_second_moment_with_boundary(const HurstParam& h, double g_exp) {
  return bridge_second_moment(h, g_exp) * g_exp / h.h;
}

LimitSequence bridge_second_moment_limit(const HurstParam& h, double g_exp, double t_end, int k_max,
                                         const quad::Tolerance& tol) {
  const double H = h.h;
  if (!(g_exp > H && g_exp < 1.0)) throw DomainError("g_exp must lie in (hurst,1)");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  require_levels(k_max);
  LimitSequence seq;
  for (int k = 1; k <= k_max; ++k) {
    const double t = level_time(t_end, k);
    const auto f = rkhs::PiecewiseSmoothFn::distance_power(t_end, g_exp, 0.0, t);
    seq.k.push_back(k);
    seq.t.push_back(t);
    seq.raw.push_back(std::pow(t_end - t, 2.0 * (g_exp - H)) * norm_sq(f, h, tol));
  }
  const std::size_t m = seq.raw.size();
  seq.limit = richardson3(seq.raw[m - 3], seq.raw[m - 2], seq.raw[m - 1], 2.0 * (g_exp - H), 1.0);
  return seq;
}

LimitSequence bridge_orthogonality(const HurstParam& h, double g_exp, double s, double t_end, int k_max,
                                   const quad::Tolerance& tol) {
  const double H = h.h;
  if (!(g_exp > H && g_exp < 1.0)) throw DomainError("g_exp must lie in (hurst,1)");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  if (!(s >= 0.0 && s < t_end)) throw DomainError("s must lie in [0,t_end)");
  require_levels(k_max);
  LimitSequence seq;
  for (int k = 1; k <= k_max; ++k) {
    const double t = level_time(t_end, k);
    double v = 0.0;
    if (s > 0.0) {
      const auto f = rkhs::PiecewiseSmoothFn::indicator(0.0, s);
      const auto g = rkhs::PiecewiseSmoothFn::distance_power(t_end, g_exp, 0.0, t);
      v = std::pow(t_end - t, g_exp - H) * rkhs::inner_product(f, g, h, tol).real();
    }
    seq.k.push_back(k);
    seq.t.push_back(t);
    seq.raw.push_back(v);
  }
  const std::size_t m = seq.raw.size();
  seq.limit = richardson3(seq.raw[m - 3], seq.raw[m - 2], seq.raw[m - 1], g_exp - H, 1.0 - H);
  return seq;
}

double structure_function(const BridgeParams& p, double s, double t, const quad::Tolerance& tol) {
  if (s > t) std::swap(s, t);
  const double T = p.t_end, H = p.h.h, a = p.alpha, e = 2.0 * H - 1.0;
  if (!(s >= 0.0 && t < T)) throw DomainError("structure_function: need 0 <= s <= t < t_end");
  if (s == t) return 0.0;
  const quad::Tolerance in_tol = quad::inner_tolerance(tol);
  const auto brk = toward_terminal(s, t, T);

  // inner(u) = int_u^t (T-v)^-a (v-u)^(2H-1) dv, divided by (t-u)^2H
  const quad::RealFn j1 = [&](double u) {
    const auto ib = toward_terminal(u, t, T);
    const double inner = quad::integrate_singular_1d([&](double v) { return std::pow(T - v, -a); },
                                                     quad::SingularWeight{e, 0.0, u, t}, in_tol, ib);
    return std::pow(T - u, -a - 1.0) * inner / std::pow(t - u, 2.0 * H);
  };
  const double J1 =
      2.0 * H * quad::integrate_singular_1d(j1, quad::SingularWeight{0.0, 2.0 * H, s, t}, tol, brk);
  const double J2 =
      std::pow(T - t, 1.0 - a) * quad::integrate_singular_1d([&](double u) { return std::pow(T - u, -a - 1.0); },
                                                             quad::SingularWeight{0.0, e, s, t}, tol, brk);
  const double J3 =
      std::pow(T - s, -a) * quad::integrate_singular_1d([&](double v) { return std::pow(T - v, -a); },
                                                        quad::SingularWeight{e, 0.0, s, t}, tol, brk);
  return H * (J1 + J2 + J3);
}

double structure_function_rkhs(const BridgeParams& p, double s, double t, const quad::Tolerance& tol) {
  if (s > t) std::swap(s, t);
  if (!(s >= 0.0 && t < p.t_end)) throw DomainError("structure_function: need 0 <= s <= t < t_end");
  if (s == t) return 0.0;
  return norm_sq(rkhs::PiecewiseSmoothFn::distance_power(p.t_end, p.alpha, s, t), p.h, tol);
}

double structure_bound_constant(const BridgeParams& p) {
  validate_xi(p);
  const double H = p.h.h, a = p.alpha;
  return H * ((H * beta_fn(1.0 - a, 2.0 * H) + 0.5) / (H - a) + beta_fn(1.0 - a, 2.0 * H - a));
}

HolderFit holder_exponent_estimate(const BridgeParams& p, HolderAnchor anchor, double s, const quad::Tolerance& tol) {
  validate_xi(p);
  const double T = p.t_end;
  HolderFit fit{};
  std::vector<double> lx, ly;
  for (int j = 4; j <= 10; ++j) {
    const double d = T * std::ldexp(1.0, -j);
    double lo = 0.0, hi = 0.0;
    switch (anchor) {
      case HolderAnchor::Terminal:
        lo = T - 2.0 * d;
        hi = T - d;
        break;
      case HolderAnchor::Origin:
        lo = 0.0;
        hi = d;
        break;
      case HolderAnchor::Interior:
        lo = s;
        hi = s + d;
        break;
    }
    if (!(lo >= 0.0 && hi < T)) throw DomainError("holder_exponent_estimate: anchor point out of range");
    const double v = structure_function(p, lo, hi, tol);
    fit.deltas.push_back(d);
    fit.values.push_back(v);
    lx.push_back(std::log(d));
    ly.push_back(0.5 * std::log(v));
  }
  fit.slope = quad::least_squares_line(lx, ly).slope;
  return fit;
}

void MomentTable::write_csv(std::ostream& os) const {
  const auto old = os.precision(17);
  os << "quantity,closed_form,quadrature,monte_carlo,rel_gap\n";
  for (const auto& r : rows)
    os << r.quantity << ',' << r.closed_form << ',' << r.quadrature << ',' << r.monte_carlo << ',' << r.rel_gap << '\n';
  os.precision(old);
}

MomentTable moment_table(const BridgeParams& p, bool closed, bool quadrature, bool monte_carlo,
                         const MomentOptions& opts) {
  validate_xi(p);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  MomentRow row{"xi_T_second_moment", nan, nan, nan, 0.0};
  std::vector<double> vals;
  if (closed) vals.push_back(row.closed_form = xi_second_moment(p, MomentMethod::ClosedForm, opts));
  if (quadrature) vals.push_back(row.quadrature = xi_second_moment(p, MomentMethod::Quadrature, opts));
  if (monte_carlo) vals.push_back(row.monte_carlo = xi_second_moment(p, MomentMethod::MonteCarlo, opts));
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      row.rel_gap = std::max(row.rel_gap, std::abs(vals[i] - vals[j]) / std::min(std::abs(vals[i]), std::abs(vals[j])));
  MomentTable tab;
  tab.rows.push_back(row);
  return tab;
}

}  // namespace cfou::bridges

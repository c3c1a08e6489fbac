#include "cfou/rkhs.hpp"

#include <algorithm>
#include <cmath>

#include "cfou/fbm.hpp"
#include "cfou/parallel.hpp"

namespace cfou::rkhs {

namespace {

constexpr double kAtomFloor = 1e-14;

bool same_location(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)); }

std::vector<double> inside(const std::vector<double>& pts, double a, double b) {
  std::vector<double> out;
  for (double x : pts)
    if (x > a && x < b) out.push_back(x);
  return out;
}

void append(std::vector<double>& dst, const std::vector<double>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

}  // namespace

PiecewiseSmoothFn::PiecewiseSmoothFn(std::vector<Piece> pieces) {
  for (auto& p : pieces) add(std::move(p));
}

void PiecewiseSmoothFn::add(Piece p) {
  if (!(p.b > p.a)) throw DomainError("piece interval must satisfy a < b");
  if (p.a < 0.0) throw DomainError("pieces must live in [0, T]");
  for (const auto& q : pieces_)
    if (p.a < q.b && q.a < p.b) throw DomainError("piece intervals overlap");
  pieces_.push_back(std::move(p));
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
}

cplx PiecewiseSmoothFn::operator()(double t) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const bool last = i + 1 == pieces_.size();
    if (t >= p.a && (t < p.b || (last && t == p.b))) return p.value(t);
  }
  return 0.0;
}

double PiecewiseSmoothFn::support_begin() const { return pieces_.empty() ? 0.0 : pieces_.front().a; }

double PiecewiseSmoothFn::support_end() const {
  double e = 0.0;
  for (const auto& p : pieces_) e = std::max(e, p.b);
  return e;
}

PiecewiseSmoothFn PiecewiseSmoothFn::indicator(double a, double b, cplx coeff) {
  return PiecewiseSmoothFn({Piece{a, b, [coeff](double) { return coeff; }, [](double) { return cplx(0.0); }, {}}});
}

PiecewiseSmoothFn PiecewiseSmoothFn::exponential(cplx rate, double a, double b, cplx coeff) {
  return PiecewiseSmoothFn({Piece{a, b, [=](double t) { return coeff * std::exp(rate * t); },
                                  [=](double t) { return coeff * rate * std::exp(rate * t); }, {}}});
}

PiecewiseSmoothFn PiecewiseSmoothFn::polynomial(std::vector<cplx> coeffs, double a, double b) {
  auto value = [coeffs](double t) {
    cplx s = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) s = s * t + coeffs[k];
    return s;
  };
  auto deriv = [coeffs](double t) {
    cplx s = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) s = s * t + static_cast<double>(k) * coeffs[k];
    return s;
  };
  return PiecewiseSmoothFn({Piece{a, b, value, deriv, {}}});
}

PiecewiseSmoothFn PiecewiseSmoothFn::distance_power(double t_end, double exponent, double a, double b, cplx coeff) {
  if (!(b < t_end)) throw DomainError("distance_power: piece must end before t_end");
  const double gap = t_end - b;
  std::vector<double> hints;
  for (double d = gap; b - d > a; d *= 2.0) hints.push_back(b - d);
  return PiecewiseSmoothFn({Piece{a, b, [=](double u) { return coeff * std::pow(t_end - u, -exponent); },
                                  [=](double u) { return coeff * exponent * std::pow(t_end - u, -exponent - 1.0); },
                                  hints}});
}

AtomicMeasure bv_measure(const PiecewiseSmoothFn& g) {
  AtomicMeasure m;
  auto add_atom = [&m](double x, cplx mass) {
    for (auto& at : m.atoms)
      if (same_location(at.location, x)) {
        at.mass += mass;
        return;
      }
    m.atoms.push_back(Atom{x, mass});
  };
  for (const auto& p : g.pieces()) {
    m.density.push_back(DensityPiece{p.a, p.b, p.derivative, p.hints});
    add_atom(p.a, p.value(p.a));
    add_atom(p.b, -p.value(p.b));
  }
  std::erase_if(m.atoms, [](const Atom& at) { return std::abs(at.mass) < kAtomFloor; });
  std::sort(m.atoms.begin(), m.atoms.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });
  return m;
}

cplx AtomicMeasure::integrate(const Evaluator& f, const quad::Tolerance& tol) const {
  cplx s = 0.0;
  for (const auto& d : density) {
    const Evaluator fd = [&](double x) { return f(x) * d.density(x); };
    s += quad::integrate_singular_1d_complex(fd, quad::SingularWeight{0.0, 0.0, d.a, d.b}, tol, d.hints);
  }
  for (const auto& at : atoms) s += f(at.location) * at.mass;
  return s;
}

cplx AtomicMeasure::total_mass(const quad::Tolerance& tol) const {
  return integrate([](double) { return cplx(1.0); }, tol);
}

cplx kernel_moment(const Evaluator& f, double a, double b, double c, double p, bool signed_kernel,
                   const quad::Tolerance& tol, const std::vector<double>& hints) {
  using quad::SingularWeight;
  const double below_sign = signed_kernel ? -1.0 : 1.0;
  if (c <= a) {
    if (c == a) return quad::integrate_singular_1d_complex(f, SingularWeight{p, 0.0, a, b}, tol, inside(hints, a, b));
    auto brk = quad::graded_breaks(a, b, a - c);
    append(brk, hints);
    const Evaluator g = [&](double x) { return f(x) * std::pow(x - c, p); };
    return quad::integrate_singular_1d_complex(g, SingularWeight{0.0, 0.0, a, b}, tol, brk);
  }
  if (c >= b) {
    cplx v;
    if (c == b) {
      v = quad::integrate_singular_1d_complex(f, SingularWeight{0.0, p, a, b}, tol, inside(hints, a, b));
    } else {
      auto brk = quad::graded_breaks_toward(a, b, c - b);
      append(brk, hints);
      const Evaluator g = [&](double x) { return f(x) * std::pow(c - x, p); };
      v = quad::integrate_singular_1d_complex(g, SingularWeight{0.0, 0.0, a, b}, tol, brk);
    }
    return below_sign * v;
  }
  const cplx left = quad::integrate_singular_1d_complex(f, SingularWeight{0.0, p, a, c}, tol, inside(hints, a, c));
  const cplx right = quad::integrate_singular_1d_complex(f, SingularWeight{p, 0.0, c, b}, tol, inside(hints, c, b));
  return below_sign * left + right;
}

namespace {

cplx inner_low(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, double H, const quad::Tolerance& tol) {
  const double beta = 2.0 * H - 1.0;
  const AtomicMeasure nu = bv_measure(g);
  const quad::Tolerance in_tol = quad::inner_tolerance(tol);
  std::vector<DensityPiece> dens;
  for (const auto& d : nu.density) {
    DensityPiece c = d;
    c.density = [src = d.density](double s) { return std::conj(src(s)); };
    dens.push_back(std::move(c));
  }
  cplx total = 0.0;
  for (const auto& p : f.pieces()) {
    for (const auto& at : nu.atoms)
      total += std::conj(at.mass) * kernel_moment(p.value, p.a, p.b, at.location, beta, true, tol, p.hints);
    if (dens.empty()) continue;
    // phi(t) = int conj(nu density)(s) |t-s|^beta sgn(t-s) ds
    const Evaluator integrand = [&](double t) {
      cplx phi = 0.0;
      for (const auto& d : dens) phi -= kernel_moment(d.density, d.a, d.b, t, beta, true, in_tol, d.hints);
      return p.value(t) * phi;
    };
    std::vector<double> brk = p.hints;
    for (const auto& d : dens) {
      brk.push_back(d.a);
      brk.push_back(d.b);
      append(brk, d.hints);
    }
    total += quad::integrate_singular_1d_complex(integrand, quad::SingularWeight{0.0, 0.0, p.a, p.b}, tol,
                                                 inside(brk, p.a, p.b));
  }
  return H * total;
}

cplx inner_high(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, double H, const quad::Tolerance& tol) {
  const double p2 = 2.0 * H - 2.0;
  const quad::Tolerance in_tol = quad::inner_tolerance(tol);
  cplx total = 0.0;
  for (const auto& p : f.pieces())
    for (const auto& q : g.pieces()) {
      const Evaluator gc = [&](double s) { return std::conj(q.value(s)); };
      const Evaluator integrand = [&](double t) {
        return p.value(t) * kernel_moment(gc, q.a, q.b, t, p2, false, in_tol, q.hints);
      };
      std::vector<double> brk = p.hints;
      brk.push_back(q.a);
      brk.push_back(q.b);
      append(brk, q.hints);
      total += quad::integrate_singular_1d_complex(integrand, quad::SingularWeight{0.0, 0.0, p.a, p.b}, tol,
                                                   inside(brk, p.a, p.b));
    }
  return H * (2.0 * H - 1.0) * total;
}

cplx inner_half(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const quad::Tolerance& tol) {
  cplx total = 0.0;
  for (const auto& p : f.pieces())
    for (const auto& q : g.pieces()) {
      const double lo = std::max(p.a, q.a), hi = std::min(p.b, q.b);
      if (!(hi > lo)) continue;
      const Evaluator integrand = [&](double t) { return p.value(t) * std::conj(q.value(t)); };
      std::vector<double> brk = p.hints;
      append(brk, q.hints);
      total += quad::integrate_singular_1d_complex(integrand, quad::SingularWeight{0.0, 0.0, lo, hi}, tol,
                                                   inside(brk, lo, hi));
    }
  return total;
}

}  // namespace

cplx inner_product(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const HurstParam& h,
                   const quad::Tolerance& tol) {
  if (h.h < 0.5) return inner_low(f, g, h.h, tol);
  if (h.h == 0.5) return inner_half(f, g, tol);
  return inner_high(f, g, h.h, tol);
}

cplx grid_gram_inner(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const HurstParam& h, std::size_t n,
                     double horizon) {
  if (n < 8) throw DomainError("grid_gram_inner: n must be at least 8");
  if (!(horizon > 0.0)) throw DomainError("grid_gram_inner: horizon must be positive");
  const double dt = horizon / static_cast<double>(n);
  std::vector<cplx> vf(n), vg(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = (static_cast<double>(i) + 0.5) * dt;
    vf[i] = f(m);
    vg[i] = g(m);
  }
  auto acov = fbm::increment_autocov_table(n, h);
  const double scale = std::pow(dt, 2.0 * h.h);
  for (auto& r : acov) r *= scale;
  return par::toeplitz_form(vf, vg, acov);
}

cplx grid_gram_inner(const PiecewiseSmoothFn& f, const PiecewiseSmoothFn& g, const HurstParam& h, std::size_t n) {
  return grid_gram_inner(f, g, h, n, std::max(f.support_end(), g.support_end()));
}

}  // namespace cfou::rkhs

#include "cfou/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cfou::quad {

namespace {

constexpr int kLow = 10;
constexpr int kHigh = 20;

struct Panel {
  double l, r;
  int depth;
  cplx value;
  double err;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

class Engine {
 public:
  Engine(const ComplexFn& f, const SingularWeight& w) : f_(f), w_(w) {}

  Panel eval(double l, double r, int depth) const {
    const bool left_sing = (l == w_.a) && w_.exponent_left != 0.0;
    const bool right_sing = (r == w_.b) && w_.exponent_right != 0.0;
    const double alpha = right_sing ? w_.exponent_right : 0.0;
    const double beta = left_sing ? w_.exponent_left : 0.0;
    const double half = 0.5 * (r - l), mid = 0.5 * (r + l);
    const double factor = std::pow(half, 1.0 + alpha + beta);
    auto apply = [&](const JacobiRule& rule) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = mid + half * rule.nodes[i];
        cplx v = f_(x);
        if (!left_sing && w_.exponent_left != 0.0) v *= std::pow(x - w_.a, w_.exponent_left);
        if (!right_sing && w_.exponent_right != 0.0) v *= std::pow(w_.b - x, w_.exponent_right);
        s += rule.weights[i] * v;
      }
      return factor * s;
    };
    const cplx lo = apply(cached_rule(kLow, alpha, beta));
    const cplx hi = apply(cached_rule(kHigh, alpha, beta));
    double err = std::abs(hi - lo);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return Panel{l, r, depth, hi, err};
  }

 private:
  const ComplexFn& f_;
  SingularWeight w_;
};

void check_weight(const SingularWeight& w) {
  if (!(w.exponent_left > -1.0) || !(w.exponent_right > -1.0))
    throw DomainError("singular weight exponents must exceed -1");
  if (!(w.b > w.a)) throw DomainError("integration interval must satisfy a < b");
}

}  // namespace

Estimate integrate_adaptive(const ComplexFn& f, const SingularWeight& w, const Tolerance& tol,
                            std::span<const double> breaks) {
  check_weight(w);
  Engine eng(f, w);
  std::vector<double> pts{w.a};
  for (double x : breaks)
    if (x > w.a && x < w.b) pts.push_back(x);
  pts.push_back(w.b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> frozen;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) active.push(eng.eval(pts[i], pts[i + 1], 0));

  auto totals = [&](cplx& value, double& err) {
    value = 0.0;
    err = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().value;
      err += copy.top().err;
      copy.pop();
    }
    for (const auto& p : frozen) {
      value += p.value;
      err += p.err;
    }
  };

  cplx value = 0.0;
  double err = 0.0;
  for (const auto& p : frozen) value += p.value;
  {
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().value;
      err += copy.top().err;
      copy.pop();
    }
  }
  int panels = static_cast<int>(active.size());
  bool converged = false;
  while (true) {
    if (err <= std::max(tol.atol, tol.rtol * std::abs(value))) {
      totals(value, err);
      if (err <= std::max(tol.atol, tol.rtol * std::abs(value))) {
        converged = true;
        break;
      }
    }
    if (active.empty() || panels >= tol.max_panels) break;
    Panel worst = active.top();
    active.pop();
    if (worst.depth >= tol.max_levels) {
      frozen.push_back(worst);
      continue;
    }
    const double m = 0.5 * (worst.l + worst.r);
    Panel a = eng.eval(worst.l, m, worst.depth + 1);
    Panel b = eng.eval(m, worst.r, worst.depth + 1);
    value += a.value + b.value - worst.value;
    err += a.err + b.err - worst.err;
    active.push(a);
    active.push(b);
    ++panels;
  }
  totals(value, err);
  if (converged && tol.refine_passes > 0) {
    std::vector<Panel> all = frozen;
    while (!active.empty()) {
      all.push_back(active.top());
      active.pop();
    }
    for (int pass = 0; pass < tol.refine_passes; ++pass) {
      std::vector<Panel> next;
      next.reserve(all.size() * 2);
      for (const auto& p : all) {
        const double m = 0.5 * (p.l + p.r);
        next.push_back(eng.eval(p.l, m, p.depth + 1));
        next.push_back(eng.eval(m, p.r, p.depth + 1));
      }
      all.swap(next);
    }
    value = 0.0;
    err = 0.0;
    for (const auto& p : all) {
      value += p.value;
      err += p.err;
    }
    panels = static_cast<int>(all.size());
  }
  return Estimate{value, err, panels, converged};
}

cplx integrate_singular_1d_complex(const ComplexFn& f, const SingularWeight& w, const Tolerance& tol,
                                   std::span<const double> breaks) {
  const Estimate e = integrate_adaptive(f, w, tol, breaks);
  if (!e.converged)
    throw AccuracyError("quadrature did not converge on [" + std::to_string(w.a) + ", " + std::to_string(w.b) + "]",
                        e.value, e.error);
  return e.value;
}

double integrate_singular_1d(const RealFn& f, const SingularWeight& w, const Tolerance& tol,
                             std::span<const double> breaks) {
  const ComplexFn g = [&f](double x) { return cplx(f(x), 0.0); };
  return integrate_singular_1d_complex(g, w, tol, breaks).real();
}

std::vector<double> graded_breaks(double a, double b, double first) {
  std::vector<double> out;
  if (!(first > 0.0)) return out;
  for (double d = first; a + d < b; d *= 2.0) out.push_back(a + d);
  return out;
}

std::vector<double> graded_breaks_toward(double a, double b, double first) {
  std::vector<double> out;
  if (!(first > 0.0)) return out;
  for (double d = first; b - d > a; d *= 2.0) out.push_back(b - d);
  std::reverse(out.begin(), out.end());
  return out;
}

Tolerance inner_tolerance(const Tolerance& outer) {
  Tolerance t = outer;
  t.rtol = outer.rtol * 0.05;
  t.atol = outer.atol * 1e-3;
  t.refine_passes = 0;
  return t;
}

cplx integrate_triangle(const ComplexFn2& g, double a, double b, double t_end, double decay,
                        const Tolerance& tol) {
  if (!(a > -1.0)) throw DomainError("integrate_triangle: x exponent must exceed -1");
  if (!(a + b + 1.0 > -1.0)) throw DomainError("integrate_triangle: combined exponent must exceed -2");
  const Tolerance in_tol = inner_tolerance(tol);
  const ComplexFn outer = [&](double z) {
    std::vector<double> brk;
    if (decay > 0.0 && decay * z > 1.0) brk = graded_breaks_toward(0.0, 1.0, 0.25 / (decay * z));
    const ComplexFn inner = [&](double u) { return g(u * z, z); };
    return integrate_singular_1d_complex(inner, SingularWeight{a, 0.0, 0.0, 1.0}, in_tol, brk);
  };
  std::vector<double> brk = graded_breaks(0.0, t_end, std::min(0.0625, t_end / 16.0));
  return integrate_singular_1d_complex(outer, SingularWeight{a + b + 1.0, 0.0, 0.0, t_end}, tol, brk);
}

}  // namespace cfou::quad

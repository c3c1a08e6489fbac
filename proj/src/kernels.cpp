#include "cfou/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cfou/estimator.hpp"
#include "cfou/expansions.hpp"
#include "cfou/extrapolate.hpp"
#include "cfou/fbm.hpp"
#include "cfou/quad.hpp"

namespace cfou::kernels {

namespace {

void require_mid(const HurstParam& h, const char* what) {
  if (!(h.h > 0.25 && h.h < 0.5)) throw DomainError(std::string(what) + ": hurst must lie in (1/4,1/2)");
}

std::vector<double> scaled_autocov(const HurstParam& h, double t_end, std::size_t n) {
  auto acov = fbm::increment_autocov_table(n, h);
  acov.resize(n);
  const double scale = std::pow(t_end / static_cast<double>(n), 2.0 * h.h);
  for (auto& r : acov) r *= scale;
  return acov;
}

double raw_norm(const ExpKernel& k, const HurstParam& h, std::size_t n) {
  const CMatrix m = kernel_matrix(k, n);
  return grid_tensor_form(m, m, h, k.t_end).real();
}

cplx raw_inner(const ExpKernel& psi, const ExpKernel& hh, const HurstParam& h, std::size_t n) {
  return grid_tensor_form(kernel_matrix(psi, n), kernel_matrix(hh, n), h, psi.t_end);
}

std::size_t cells_for(double t_end, double density) {
  return std::max<std::size_t>(32, static_cast<std::size_t>(std::lround(density * t_end)));
}

}  // namespace

cplx ExpKernel::operator()(double t, double s) const {
  if (t < 0.0 || s < 0.0 || t > t_end || s > t_end) return 0.0;
  if (kind == KernelKind::Psi) return s < t ? std::exp(-gamma.gamma_bar() * (t - s)) : cplx(0.0);
  return t <= s ? std::exp(-gamma.gamma() * (s - t)) : cplx(0.0);
}

CMatrix kernel_matrix(const ExpKernel& k, std::size_t n) {
  const double dt = k.t_end / static_cast<double>(n);
  // entries depend on i-j only
  std::vector<cplx> lag(n);
  const cplx rate = k.kind == KernelKind::Psi ? k.gamma.gamma_bar() : k.gamma.gamma();
  for (std::size_t d = 0; d < n; ++d) lag[d] = std::exp(-rate * (static_cast<double>(d) * dt));
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (k.kind == KernelKind::Psi && i > j) m(i, j) = lag[i - j];
      if (k.kind == KernelKind::Hh && i <= j) m(i, j) = lag[j - i];
    }
  return m;
}

linalg::SymmetricToeplitz gram_operator(const HurstParam& h, double t_end, std::size_t n) {
  return linalg::SymmetricToeplitz(scaled_autocov(h, t_end, n));
}

cplx grid_tensor_form(const CMatrix& a, const CMatrix& b, const HurstParam& h, double t_end) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  return par::tensor_form(a, b, gram_operator(h, t_end, n));
}

double tensor_norm_sq(const ExpKernel& k, const HurstParam& h, std::size_t n) {
  require_mid(h, "tensor_norm_sq");
  if (n < 32) throw DomainError("tensor_norm_sq: n must be at least 32");
  return raw_norm(k, h, n);
}

cplx tensor_inner(const ExpKernel& psi, const ExpKernel& hh, const HurstParam& h, std::size_t n) {
  require_mid(h, "tensor_inner");
  if (n < 32) throw DomainError("tensor_inner: n must be at least 32");
  if (psi.kind != KernelKind::Psi || hh.kind != KernelKind::Hh) throw DomainError("tensor_inner: expects (Psi, Hh)");
  return raw_inner(psi, hh, h, n);
}

double tensor_norm_sq_extrapolated(const ExpKernel& k, const HurstParam& h, std::size_t n0) {
  const double f0 = tensor_norm_sq(k, h, n0), f1 = tensor_norm_sq(k, h, 2 * n0), f2 = tensor_norm_sq(k, h, 4 * n0);
  return richardson3(f0, f1, f2, 4.0 * h.h - 1.0, 1.0);
}

cplx tensor_inner_extrapolated(const ExpKernel& psi, const ExpKernel& hh, const HurstParam& h, std::size_t n0) {
  const cplx f0 = tensor_inner(psi, hh, h, n0), f1 = tensor_inner(psi, hh, h, 2 * n0),
             f2 = tensor_inner(psi, hh, h, 4 * n0);
  return richardson3(f0, f1, f2, 4.0 * h.h - 1.0, 1.0);
}

double norm_drift_coefficient(const DriftParam& gamma, const HurstParam& h) {
  const auto c = estimator::asymptotic_constants(gamma, h);
  return c.gamma_factor * c.m_h2;
}

cplx inner_drift_coefficient(const DriftParam& gamma, const HurstParam& h) {
  const auto c = estimator::asymptotic_constants(gamma, h);
  return c.gamma_factor * c.n_h;
}

double ConvergenceTable::growth_ratio() const {
  if (rows.size() < 2) throw DegenerateError("growth_ratio: need two rows");
  const double first = std::abs(rows.front().estimate);
  if (!(first > 0.0)) throw DegenerateError("growth_ratio: first estimate is zero");
  return std::abs(rows.back().estimate) / first;
}

cplx ConvergenceTable::slope() const {
  if (rows.size() < 2) throw DegenerateError("slope: need two rows");
  std::vector<double> t, re, im;
  for (const auto& r : rows) {
    t.push_back(r.t_end);
    re.push_back(r.estimate.real());
    im.push_back(r.estimate.imag());
  }
  return {quad::least_squares_line(t, re).slope, quad::least_squares_line(t, im).slope};
}

void ConvergenceTable::write_csv(std::ostream& os) const {
  const auto old = os.precision(17);
  os << "T,n,estimate_re,estimate_im,target,residual,target_im\n";
  for (const auto& r : rows)
    os << r.t_end << ',' << r.n << ',' << r.estimate.real() << ',' << r.estimate.imag() << ',' << r.target.real() << ','
       << r.residual << ',' << r.target.imag() << '\n';
  os.precision(old);
}

ConvergenceTable linear_drift_table(DriftQuantity q, const DriftParam& gamma, const HurstParam& h,
                                    std::vector<double> t_list, const DriftOptions& opts) {
  require_mid(h, "linear_drift_table");
  if (t_list.empty()) throw DomainError("linear_drift_table: t_list is empty");
  if (!(opts.density > 0.0)) throw DomainError("linear_drift_table: density must be positive");
  std::sort(t_list.begin(), t_list.end());
  const cplx coef = q == DriftQuantity::NormPsi ? cplx(norm_drift_coefficient(gamma, h)) : inner_drift_coefficient(gamma, h);
  ConvergenceTable tab;
  for (double T : t_list) {
    if (!(T > 0.0)) throw DomainError("linear_drift_table: t_end must be positive");
    const std::size_t n = cells_for(T, opts.density);
    const ExpKernel psi{KernelKind::Psi, gamma, T}, hh{KernelKind::Hh, gamma, T};
    cplx est;
    if (q == DriftQuantity::NormPsi)
      est = opts.extrapolate ? tensor_norm_sq_extrapolated(psi, h, n) : tensor_norm_sq(psi, h, n);
    else
      est = opts.extrapolate ? tensor_inner_extrapolated(psi, hh, h, n) : tensor_inner(psi, hh, h, n);
    tab.rows.push_back(ConvergenceRow{T, n, est, coef, std::abs(est - coef * T)});
  }
  return tab;
}

ConvergenceTable divergence_probe(const HurstParam& h, const DriftParam& gamma, double t_end,
                                  std::vector<std::size_t> n_list, bool control) {
  if (!control && h.h > 0.25) throw DomainError("divergence_probe: hurst must be at most 1/4");
  if (!(t_end > 0.0)) throw DomainError("divergence_probe: t_end must be positive");
  if (n_list.size() < 2) throw DomainError("divergence_probe: need at least two grid sizes");
  std::sort(n_list.begin(), n_list.end());
  if (n_list.front() < 2) throw DomainError("divergence_probe: grid sizes must be at least 2");
  const ExpKernel psi{KernelKind::Psi, gamma, t_end};
  ConvergenceTable tab;
  double prev = 0.0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double v = raw_norm(psi, h, n_list[i]);
    tab.rows.push_back(ConvergenceRow{t_end, n_list[i], v, 0.0, i == 0 ? 0.0 : std::abs(v - prev)});
    prev = v;
  }
  return tab;
}

namespace {

void require_contraction(const HurstParam& h, double t_end, std::size_t n) {
  if (!(h.h > 1.0 / 6.0 && h.h < 0.5)) throw DomainError("contraction_norm: hurst must lie in (1/6,1/2)");
  if (n < 2 || n > 64) throw DomainError("contraction_norm: n must lie in [2,64]");
  if (!(t_end > 0.0)) throw DomainError("contraction_norm: t_end must be positive");
}

}  // namespace

double contraction_norm(const DriftParam& gamma, const HurstParam& h, double t_end, std::size_t n) {
  require_contraction(h, t_end, n);
  const auto g = gram_operator(h, t_end, n);
  const CMatrix p = kernel_matrix(ExpKernel{KernelKind::Psi, gamma, t_end}, n);
  const CMatrix phi = par::contraction(p, g);
  const double sq = par::tensor_form(phi, phi, g).real();
  return std::sqrt(std::max(sq, 0.0)) / t_end;
}

double contraction_norm_serial(const DriftParam& gamma, const HurstParam& h, double t_end, std::size_t n) {
  require_contraction(h, t_end, n);
  const auto acov = scaled_autocov(h, t_end, n);
  const CMatrix p = kernel_matrix(ExpKernel{KernelKind::Psi, gamma, t_end}, n);
  const CMatrix phi = serial::contraction_naive(p, acov);
  const double sq = serial::tensor_form_naive(phi, phi, acov).real();
  return std::sqrt(std::max(sq, 0.0)) / t_end;
}

ReductionCheck reduction_cross_check(const DriftParam& gamma, const HurstParam& h, double t_end, double density) {
  require_mid(h, "reduction_cross_check");
  if (!(t_end > 0.0)) throw DomainError("reduction_cross_check: t_end must be positive");
  const double H = h.h, T = t_end, beta = 2.0 * H - 1.0, lam = gamma.lambda;
  const cplx g = gamma.gamma(), gb = gamma.gamma_bar();
  const double g2 = std::norm(g);
  const double gam2h = std::tgamma(2.0 * H);
  const double kap = quad::kappa(h);

  const quad::ComplexFn2 pk = [g](double x, double y) { return std::exp(-g * (y - x)); };
  const quad::ComplexFn2 qk = [g, T](double x, double y) { return std::exp(-g * (y - x)) * (T - y); };
  const cplx P = quad::integrate_triangle(pk, beta, beta, T, lam);
  const cplx Q = quad::integrate_triangle(qk, beta, beta, T, lam);

  const double t4h = std::pow(T, 4.0 * H);
  ReductionCheck r{};
  r.a3 = t4h / (2.0 * H * (4.0 * H - 1.0)) - 2.0 * P.real();
  r.a2 = 2.0 * (P - 2.0 * g * Q + gam2h * gam2h * std::pow(g, 1.0 - 4.0 * H) * T).real();
  const cplx rt = t4h / (4.0 * H * (4.0 * H - 1.0) * g2) -
                  (T / lam) * (gam2h * gam2h / (2.0 * std::pow(gb, 4.0 * H)) - (kap / std::pow(g, 4.0 * H)).real()) -
                  lam / ((4.0 * H - 1.0) * g2 * g2) * std::pow(T, 4.0 * H - 1.0);
  r.a1 = 2.0 * g2 * rt.real();
  r.reduced = H * H * (r.a1 + r.a2 + r.a3);
  r.direct = tensor_norm_sq_extrapolated(ExpKernel{KernelKind::Psi, gamma, T}, h, cells_for(T, density));
  r.rel_gap = std::abs(r.reduced - r.direct) / std::abs(r.direct);
  return r;
}

}  // namespace cfou::kernels

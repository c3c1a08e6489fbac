#include "cfou/estimator.hpp"

#include <atomic>
#include <cmath>

#include "cfou/expansions.hpp"
#include "cfou/fbm.hpp"
#include "cfou/fou.hpp"
#include "cfou/parallel.hpp"
#include "cfou/rng.hpp"

namespace cfou::estimator {

CovarianceSummary asymptotic_constants(const DriftParam& gamma, const HurstParam& h) {
  const double H = h.h;
  if (!(H > 0.25 && H < 0.75)) throw DomainError("asymptotic_constants: hurst must lie in (1/4,3/4)");
  const cplx g = gamma.gamma(), gb = gamma.gamma_bar();
  const double lam = gamma.lambda;
  const double factor =
      1.0 + std::tgamma(3.0 - 4.0 * H) * std::tgamma(4.0 * H - 1.0) / (std::tgamma(2.0 * H) * std::tgamma(2.0 - 2.0 * H));
  CovarianceSummary s{};
  const cplx sig = (std::pow(g, 2.0 - 4.0 * H) + std::pow(gb, 2.0 - 4.0 * H)) / (2.0 * lam) * factor;
  const cplx cb = (4.0 * H - 2.0) * std::pow(gb, 1.0 - 4.0 * H) * factor;
  const cplx d = (std::pow(g, 1.0 - 2.0 * H) + std::pow(gb, 1.0 - 2.0 * H)) / (2.0 * lam);
  s.sigma2 = sig.real();
  s.c = cb.real();
  s.b = cb.imag();
  s.d = d.real();
  s.kappa = quad::kappa(h);
  s.m_h2 = s.sigma2;
  s.n_h = cb;
  const double hg = H * std::tgamma(2.0 * H);
  s.gamma_factor = hg * hg;
  s.matrix_c << s.sigma2 + s.c, s.b, s.b, s.sigma2 - s.c;
  s.limit_cov = s.matrix_c / (s.d * s.d);
  s.limit_cov_half = s.limit_cov / 2.0;
  return s;
}

cplx lse_gamma(const ComplexPath& z) {
  const auto& v = z.values;
  if (v.size() < 2) throw DegenerateError("lse_gamma: path too short");
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    num += std::conj(v[k]) * (v[k + 1] - v[k]);
    den += std::norm(v[k]);
  }
  den *= z.grid.dt();
  if (!(den > 0.0)) throw DegenerateError("lse_gamma: zero denominator");
  return -num / den;
}

cplx trace_correction(const DriftParam& gamma, const HurstParam& h, const UniformGrid& grid) {
  const std::size_t n = grid.n;
  const double dt = grid.dt();
  const cplx eb = std::conj(std::exp(-gamma.gamma() * dt));
  cplx pw = 1.0, s = 0.0;
  for (std::size_t l = 1; l < n; ++l) {
    pw *= eb;
    s += static_cast<double>(n - l) * pw * fbm::increment_autocov(l, h);
  }
  return std::pow(dt, 2.0 * h.h) * s;
}

cplx lse_gamma_divergence(const ComplexPath& z, const DriftParam& gamma, const HurstParam& h) {
  const auto& v = z.values;
  if (v.size() < 2) throw DegenerateError("lse_gamma_divergence: path too short");
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    num += std::conj(v[k]) * (v[k + 1] - v[k]);
    den += std::norm(v[k]);
  }
  den *= z.grid.dt();
  if (!(den > 0.0)) throw DegenerateError("lse_gamma_divergence: zero denominator");
  const cplx e = std::exp(-gamma.gamma() * z.grid.dt());
  num -= e * trace_correction(gamma, h, z.grid);
  return -num / den;
}

Eigen::Matrix2d sample_covariance(std::span<const cplx> samples, Eigen::Vector2d* mean) {
  const std::size_t n = samples.size();
  if (n < 2) throw DegenerateError("sample_covariance: need two or more samples");
  Eigen::Vector2d m = Eigen::Vector2d::Zero();
  for (const auto& x : samples) m += Eigen::Vector2d(x.real(), x.imag());
  m /= static_cast<double>(n);
  Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
  for (const auto& x : samples) {
    const Eigen::Vector2d d(x.real() - m[0], x.imag() - m[1]);
    c += d * d.transpose();
  }
  c /= static_cast<double>(n - 1);
  if (mean) *mean = m;
  return c;
}

double frobenius_relative(const Eigen::Matrix2d& a, const Eigen::Matrix2d& reference) {
  return (a - reference).norm() / reference.norm();
}

namespace {

template <class Loop>
McReport run_mc(const McConfig& cfg, Loop&& loop) {
  if (cfg.t_list.empty()) throw DomainError("mc: t_list is empty");
  if (cfg.n_reps < 2) throw DomainError("mc: n_reps must be at least 2");
  if (cfg.n_steps < 2) throw DomainError("mc: n_steps must be at least 2");
  for (double t : cfg.t_list)
    if (!(t > 0.0)) throw DomainError("mc: t_list entries must be positive");
  const cplx g = cfg.gamma.gamma();
  McReport rep{};
  rep.n_reps = cfg.n_reps;
  for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
    const double T = cfg.t_list[ti];
    const UniformGrid grid(T, cfg.n_steps);
    const fou::FouSimulator sim(cfg.gamma, cfg.h, grid);
    const std::uint64_t base = derive_base(cfg.seed, ti);
    const cplx corr = cfg.numerator == Numerator::Divergence
                          ? sim.step_factor() * trace_correction(cfg.gamma, cfg.h, grid)
                          : cplx(0.0);
    McBlock block{T, std::vector<cplx>(cfg.n_reps), 0.0};
    std::atomic<bool> degenerate{false};
    loop(cfg.n_reps, [&](std::size_t r) {
      const std::size_t n = grid.n;
      std::vector<cplx> dz(n), z(n + 1);
      sim.driver(Seed{base, r}, dz);
      sim.integrate(dz, z);
      cplx num = 0.0;
      double den = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        num += std::conj(z[k]) * (z[k + 1] - z[k]);
        den += std::norm(z[k]);
      }
      den *= grid.dt();
      if (!(den > 0.0)) degenerate = true;
      block.estimates[r] = -(num - corr) / den;
    });
    if (degenerate) throw DegenerateError("mc: zero denominator in a replication");
    double mae = 0.0;
    for (const auto& e : block.estimates) mae += std::abs(e - g);
    block.mean_abs_error = mae / static_cast<double>(cfg.n_reps);
    rep.consistency_curve.emplace_back(T, block.mean_abs_error);
    rep.blocks.push_back(std::move(block));
  }
  std::size_t last = 0;
  for (std::size_t i = 1; i < cfg.t_list.size(); ++i)
    if (cfg.t_list[i] > cfg.t_list[last]) last = i;
  rep.t_end = cfg.t_list[last];
  rep.estimates = rep.blocks[last].estimates;
  const double sq = std::sqrt(rep.t_end);
  for (const auto& e : rep.estimates) rep.scaled_errors.push_back(sq * (e - g));
  rep.empirical_cov = sample_covariance(rep.scaled_errors, &rep.empirical_mean);
  rep.has_target = cfg.h.h > 0.25 && cfg.h.h < 0.75;
  if (rep.has_target) {
    const auto cs = asymptotic_constants(cfg.gamma, cfg.h);
    rep.target_cov = cs.limit_cov_half;
    rep.target_cov_full = cs.limit_cov;
  } else {
    rep.target_cov.setZero();
    rep.target_cov_full.setZero();
  }
  return rep;
}

}  // namespace

McReport run_mc_experiment(const McConfig& cfg) {
  return run_mc(cfg, [](std::size_t n, const auto& body) { par::for_each_index(n, body); });
}

McReport run_mc_experiment_serial(const McConfig& cfg) {
  return run_mc(cfg, [](std::size_t n, const auto& body) { serial::for_each_index(n, body); });
}

DiagnosticsReport normality_diagnostics(std::span<const cplx> samples, const Eigen::Matrix2d& target_half,
                                        const Eigen::Matrix2d& target_full) {
  const std::size_t n = samples.size();
  if (n < 2) throw DegenerateError("normality_diagnostics: too few samples");
  Eigen::LLT<Eigen::Matrix2d> llt(target_half);
  if (llt.info() != Eigen::Success || target_half.determinant() <= 0.0)
    throw DegenerateError("normality_diagnostics: target covariance is singular");
  Eigen::LLT<Eigen::Matrix2d> llt_full(target_full);
  if (llt_full.info() != Eigen::Success) throw DegenerateError("normality_diagnostics: target covariance is singular");

  Eigen::Vector2d mean;
  const Eigen::Matrix2d cov = sample_covariance(samples, &mean);
  if (cov(0, 0) <= 0.0 || cov(1, 1) <= 0.0) throw DegenerateError("normality_diagnostics: zero sample variance");

  DiagnosticsReport d{};
  d.n = n;
  const Eigen::Matrix2d lower = llt.matrixL();
  std::vector<Eigen::Vector2d> w(n);
  double maha = 0.0, maha_full = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d x(samples[i].real(), samples[i].imag());
    w[i] = lower.triangularView<Eigen::Lower>().solve(x);
    maha += w[i].squaredNorm();
    maha_full += x.dot(llt_full.solve(x));
  }
  d.mahalanobis_mean = maha / static_cast<double>(n);
  d.mahalanobis_mean_full = maha_full / static_cast<double>(n);
  for (int c = 0; c < 2; ++c) {
    double m = 0.0;
    for (const auto& v : w) m += v[c];
    m /= static_cast<double>(n);
    double m2 = 0, m3 = 0, m4 = 0;
    for (const auto& v : w) {
      const double x = v[c] - m;
      m2 += x * x;
      m3 += x * x * x;
      m4 += x * x * x * x;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    d.skewness[c] = m3 / std::pow(m2, 1.5);
    d.excess_kurtosis[c] = m4 / (m2 * m2) - 3.0;
  }
  d.frob_rel_half = frobenius_relative(cov, target_half);
  d.frob_rel_full = frobenius_relative(cov, target_full);
  d.better_fit = d.frob_rel_half <= d.frob_rel_full ? "C/2" : "C";
  return d;
}

DiagnosticsReport normality_diagnostics(const McReport& report) {
  if (!report.has_target) throw DegenerateError("normality_diagnostics: no limit covariance for this hurst value");
  return normality_diagnostics(report.scaled_errors, report.target_cov, report.target_cov_full);
}

}  // namespace cfou::estimator

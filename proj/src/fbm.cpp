#include "cfou/fbm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cfou::fbm {

double fbm_covariance(double s, double t, const HurstParam& h) {
  if (s < 0.0 || t < 0.0) throw DomainError("fbm_covariance: negative time");
  const double p = h.two_h();
  return 0.5 * (std::pow(s, p) + std::pow(t, p) - std::pow(std::abs(s - t), p));
}

double increment_autocov(std::size_t k, const HurstParam& h) {
  const double p = h.two_h();
  if (k == 0) return 1.0;
  const double x = static_cast<double>(k);
  return 0.5 * (std::pow(x + 1.0, p) - 2.0 * std::pow(x, p) + std::pow(x - 1.0, p));
}

std::vector<double> increment_autocov_table(std::size_t n, const HurstParam& h) {
  std::vector<double> r(n + 1);
  for (std::size_t k = 0; k <= n; ++k) r[k] = increment_autocov(k, h);
  return r;
}

struct FgnSynthesizer::Dense {
  Eigen::MatrixXd lower;
};

FgnSynthesizer::FgnSynthesizer(const HurstParam& h, const UniformGrid& grid, const SynthesisOptions& opts)
    : h_(h), grid_(grid), scale_(std::pow(grid.dt(), h.h)), m_(2 * grid.n) {
  const std::size_t n = grid.n;
  const auto acov = increment_autocov_table(n, h);
  bool circulant_ok = !opts.force_dense;
  if (circulant_ok) {
    auto lam = linalg::circulant_eigenvalues(linalg::circulant_embedding(acov, n));
    min_eig_ = *std::min_element(lam.begin(), lam.end());
    if (min_eig_ < -opts.eigen_tol) {
      circulant_ok = false;
    } else {
      sqrt_eig_.resize(m_);
      const double inv_m = 1.0 / static_cast<double>(m_);
      for (std::size_t k = 0; k < m_; ++k) sqrt_eig_[k] = std::sqrt(std::max(lam[k], 0.0) * inv_m);
      dft_ = std::make_unique<linalg::Dft>(m_, linalg::Dft::Sign::Forward);
    }
  }
  if (!circulant_ok) {
    if (!opts.allow_fallback && !opts.force_dense)
      throw SynthesisError("circulant embedding has a negative eigenvalue and fallback is disabled");
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cov(i, j) = acov[i > j ? i - j : j - i];
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw SynthesisError("dense factorization of the increment covariance failed");
    dense_ = std::make_unique<Dense>(Dense{llt.matrixL()});
  }
}

FgnSynthesizer::~FgnSynthesizer() = default;

void FgnSynthesizer::increment_pair(const Seed& seed, std::span<double> a, std::span<double> b) const {
  const std::size_t n = grid_.n;
  NormalStream rng(seed);
  if (dense_) {
    Eigen::VectorXd z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = rng.next();
    Eigen::VectorXd x = dense_->lower * z;
    for (std::size_t i = 0; i < n; ++i) a[i] = scale_ * x[i];
    if (!b.empty()) {
      for (std::size_t i = 0; i < n; ++i) z[i] = rng.next();
      x = dense_->lower * z;
      for (std::size_t i = 0; i < n; ++i) b[i] = scale_ * x[i];
    }
    return;
  }
  thread_local std::size_t cap = 0;
  thread_local linalg::AlignedBuffer w, y;
  if (cap < m_) {
    w = linalg::make_buffer(m_);
    y = linalg::make_buffer(m_);
    cap = m_;
  }
  for (std::size_t k = 0; k < m_; ++k) {
    const double re = rng.next();
    const double im = rng.next();
    w[k] = cplx(sqrt_eig_[k] * re, sqrt_eig_[k] * im);
  }
  dft_->execute(w.get(), y.get());
  for (std::size_t i = 0; i < n; ++i) a[i] = scale_ * y[i].real();
  if (!b.empty())
    for (std::size_t i = 0; i < n; ++i) b[i] = scale_ * y[i].imag();
}

void FgnSynthesizer::increments(const Seed& seed, std::span<double> out) const {
  increment_pair(seed, out, {});
}

std::vector<double> cumulative(std::span<const double> inc) {
  std::vector<double> v(inc.size() + 1, 0.0);
  for (std::size_t i = 0; i < inc.size(); ++i) v[i + 1] = v[i] + inc[i];
  return v;
}

RealPath sample_fbm_path(const HurstParam& h, const UniformGrid& grid, const Seed& seed,
                         const SynthesisOptions& opts) {
  FgnSynthesizer syn(h, grid, opts);
  std::vector<double> inc(grid.n);
  syn.increments(seed, inc);
  return RealPath{grid, cumulative(inc)};
}

void complex_increments(const FgnSynthesizer& syn, const Seed& seed, std::span<cplx> out) {
  const std::size_t n = syn.grid().n;
  std::vector<double> b1(n), b2(n);
  syn.increments(Seed{seed.base, 2 * seed.stream}, b1);
  syn.increments(Seed{seed.base, 2 * seed.stream + 1}, b2);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) out[i] = cplx(r * b1[i], r * b2[i]);
}

ComplexPath sample_complex_fbm(const HurstParam& h, const UniformGrid& grid, const Seed& seed,
                               const SynthesisOptions& opts) {
  FgnSynthesizer syn(h, grid, opts);
  std::vector<cplx> inc(grid.n);
  complex_increments(syn, seed, inc);
  std::vector<cplx> v(grid.n + 1, cplx(0.0));
  for (std::size_t i = 0; i < grid.n; ++i) v[i + 1] = v[i] + inc[i];
  return ComplexPath{grid, std::move(v)};
}

}  // namespace cfou::fbm

#include "cfou/toeplitz.hpp"

#include <fftw3.h>

#include <mutex>

namespace cfou::linalg {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

void FftwFree::operator()(cplx* p) const { fftw_free(p); }

AlignedBuffer make_buffer(std::size_t m) {
  return AlignedBuffer(reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * m)));
}

Dft::Dft(std::size_t m, Sign sign) : m_(m), plan_(nullptr) {
  AlignedBuffer a = make_buffer(m), b = make_buffer(m);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_ = fftw_plan_dft_1d(static_cast<int>(m), as_fftw(a.get()), as_fftw(b.get()),
                           sign == Sign::Forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void Dft::execute(cplx* in, cplx* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(in), as_fftw(out));
}

std::vector<double> circulant_eigenvalues(std::span<const double> c) {
  const std::size_t m = c.size();
  Dft dft(m, Dft::Sign::Forward);
  AlignedBuffer in = make_buffer(m), out = make_buffer(m);
  for (std::size_t k = 0; k < m; ++k) in[k] = c[k];
  dft.execute(in.get(), out.get());
  std::vector<double> lam(m);
  for (std::size_t k = 0; k < m; ++k) lam[k] = out[k].real();
  return lam;
}

std::vector<double> circulant_embedding(std::span<const double> acov, std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<double> c(m);
  for (std::size_t k = 0; k <= n; ++k) c[k] = acov[k];
  for (std::size_t k = n + 1; k < m; ++k) c[k] = acov[m - k];
  return c;
}

SymmetricToeplitz::SymmetricToeplitz(std::vector<double> first_column)
    : n_(first_column.size()), m_(2 * first_column.size()), col_(std::move(first_column)) {
  std::vector<double> ext(n_ + 1, 0.0);
  for (std::size_t k = 0; k < n_; ++k) ext[k] = col_[k];
  eig_ = circulant_eigenvalues(circulant_embedding(ext, n_));
  fwd_ = std::make_unique<Dft>(m_, Dft::Sign::Forward);
  bwd_ = std::make_unique<Dft>(m_, Dft::Sign::Backward);
}

void SymmetricToeplitz::apply(std::span<const cplx> x, std::span<cplx> y) const {
  thread_local std::size_t cap = 0;
  thread_local AlignedBuffer a, b;
  if (cap < m_) {
    a = make_buffer(m_);
    b = make_buffer(m_);
    cap = m_;
  }
  for (std::size_t k = 0; k < n_; ++k) a[k] = x[k];
  for (std::size_t k = n_; k < m_; ++k) a[k] = 0.0;
  fwd_->execute(a.get(), b.get());
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < m_; ++k) b[k] *= eig_[k] * scale;
  bwd_->execute(b.get(), a.get());
  for (std::size_t k = 0; k < n_; ++k) y[k] = a[k];
}

}  // namespace cfou::linalg

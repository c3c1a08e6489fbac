#include <omp.h>

#include <algorithm>
#include <vector>

#include "cfou/parallel.hpp"

namespace cfou::par {

namespace {
constexpr std::size_t kBlock = 64;

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

cplx ordered_sum(const std::vector<cplx>& parts) {
  cplx s = 0.0;
  for (const auto& p : parts) s += p;
  return s;
}
}  // namespace

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

cplx toeplitz_form(std::span<const cplx> u, std::span<const cplx> v, std::span<const double> acov) {
  const std::size_t n = u.size();
  const std::size_t nb = block_count(n);
  std::vector<cplx> parts(nb, 0.0);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock, hi = std::min(n, lo + kBlock);
    cplx s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      cplx row = 0.0;
      for (std::size_t j = 0; j < i; ++j) row += std::conj(v[j]) * acov[i - j];
      for (std::size_t j = i; j < n; ++j) row += std::conj(v[j]) * acov[j - i];
      s += u[i] * row;
    }
    parts[b] = s;
  }
  return ordered_sum(parts);
}

CMatrix sandwich(const CMatrix& k, const linalg::SymmetricToeplitz& g) {
  const std::size_t n = g.size();
  CMatrix a(n, n), out(n, n);
#pragma omp parallel
  {
    std::vector<cplx> x(n), y(n);
#pragma omp for schedule(static)
    for (long long j = 0; j < static_cast<long long>(n); ++j) {
      for (std::size_t i = 0; i < n; ++i) x[i] = k(i, j);
      g.apply(x, y);
      for (std::size_t i = 0; i < n; ++i) a(i, j) = y[i];
    }
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      for (std::size_t j = 0; j < n; ++j) x[j] = a(i, j);
      g.apply(x, y);
      for (std::size_t j = 0; j < n; ++j) out(i, j) = y[j];
    }
  }
  return out;
}

cplx frobenius_inner(const CMatrix& a, const CMatrix& b) {
  const std::size_t cols = static_cast<std::size_t>(a.cols()), rows = static_cast<std::size_t>(a.rows());
  const std::size_t nb = block_count(cols);
  std::vector<cplx> parts(nb, 0.0);
#pragma omp parallel for schedule(static)
  for (long long blk = 0; blk < static_cast<long long>(nb); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kBlock, hi = std::min(cols, lo + kBlock);
    cplx s = 0.0;
    for (std::size_t j = lo; j < hi; ++j)
      for (std::size_t i = 0; i < rows; ++i) s += a(i, j) * std::conj(b(i, j));
    parts[blk] = s;
  }
  return ordered_sum(parts);
}

cplx tensor_form(const CMatrix& a, const CMatrix& b, const linalg::SymmetricToeplitz& g) {
  return frobenius_inner(a, sandwich(b, g));
}

CMatrix contraction(const CMatrix& p, const linalg::SymmetricToeplitz& g) {
  const std::size_t n = g.size();
  CMatrix gp(n, n);
#pragma omp parallel
  {
    std::vector<cplx> x(n), y(n);
#pragma omp for schedule(static)
    for (long long j = 0; j < static_cast<long long>(n); ++j) {
      for (std::size_t i = 0; i < n; ++i) x[i] = p(i, j);
      g.apply(x, y);
      for (std::size_t i = 0; i < n; ++i) gp(i, j) = y[i];
    }
  }
  return p.conjugate() * gp;
}

}  // namespace cfou::par

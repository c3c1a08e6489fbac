#include "cfou/parallel.hpp"

namespace cfou::serial {

namespace {
double entry(std::span<const double> acov, std::size_t i, std::size_t j) { return acov[i > j ? i - j : j - i]; }
}  // namespace

cplx toeplitz_form(std::span<const cplx> u, std::span<const cplx> v, std::span<const double> acov) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * std::conj(v[j]) * entry(acov, i, j);
  return s;
}

CMatrix sandwich(const CMatrix& k, std::span<const double> acov) {
  const std::size_t n = static_cast<std::size_t>(k.rows());
  CMatrix a = CMatrix::Zero(n, n), out = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < n; ++p) {
      const double g = entry(acov, i, p);
      for (std::size_t j = 0; j < n; ++j) a(i, j) += g * k(p, j);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a(i, q) * entry(acov, q, j);
  return out;
}

cplx tensor_form(const CMatrix& a, const CMatrix& b, std::span<const double> acov) {
  const CMatrix gbg = sandwich(b, acov);
  cplx s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) s += a(i, j) * std::conj(gbg(i, j));
  return s;
}

cplx tensor_form_naive(const CMatrix& a, const CMatrix& b, std::span<const double> acov) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) s += a(i, j) * std::conj(b(p, q)) * entry(acov, i, p) * entry(acov, j, q);
  return s;
}

CMatrix contraction_naive(const CMatrix& p, std::span<const double> acov) {
  const std::size_t n = static_cast<std::size_t>(p.rows());
  CMatrix phi = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < n; ++q) s += p(i, b) * std::conj(p(a, q)) * entry(acov, i, q);
      phi(a, b) = s;
    }
  return phi;
}

}  // namespace cfou::serial

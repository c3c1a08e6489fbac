#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "cfou/toeplitz.hpp"
#include "cfou/types.hpp"

namespace cfou {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

// OpenMP kernels. Reductions accumulate per fixed index block and combine the
// block partials in block order, so results do not depend on the thread count.
namespace par {

void set_threads(int n);
int max_threads();

// sum_ij u_i conj(v_j) acov[|i-j|]
cplx toeplitz_form(std::span<const cplx> u, std::span<const cplx> v, std::span<const double> acov);

// G K G with G symmetric Toeplitz, by FFT along columns then rows.
CMatrix sandwich(const CMatrix& k, const linalg::SymmetricToeplitz& g);

// sum_ij a_ij conj(b_ij)
cplx frobenius_inner(const CMatrix& a, const CMatrix& b);

// sum a_ij conj(b_pq) G_ip G_jq
cplx tensor_form(const CMatrix& a, const CMatrix& b, const linalg::SymmetricToeplitz& g);

// Phi = conj(P) G P, the one-slot contraction of a kernel matrix with itself.
CMatrix contraction(const CMatrix& p, const linalg::SymmetricToeplitz& g);

// Runs body(i) for i in [0, count); each index must write only its own slot.
template <class Body>
void for_each_index(std::size_t count, Body&& body) {
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace par

// Plain loop versions kept as references for the parallel kernels.
namespace serial {

cplx toeplitz_form(std::span<const cplx> u, std::span<const cplx> v, std::span<const double> acov);
CMatrix sandwich(const CMatrix& k, std::span<const double> acov);
cplx tensor_form(const CMatrix& a, const CMatrix& b, std::span<const double> acov);
// O(n^4) direct quadruple sum
cplx tensor_form_naive(const CMatrix& a, const CMatrix& b, std::span<const double> acov);
CMatrix contraction_naive(const CMatrix& p, std::span<const double> acov);

template <class Body>
void for_each_index(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace serial

}  // namespace cfou

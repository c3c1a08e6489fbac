#pragma once

#include <iosfwd>
#include <vector>

#include "cfou/parallel.hpp"
#include "cfou/types.hpp"

namespace cfou::kernels {

enum class KernelKind { Psi, Hh };

// Psi(t,s) = e^{-conj(gamma)(t-s)} 1{0 <= s < t <= T}
// Hh(t,s)  = e^{-gamma(s-t)} 1{0 <= t <= s <= T}
struct ExpKernel {
  KernelKind kind;
  DriftParam gamma;
  double t_end;

  cplx operator()(double t, double s) const;
};

// Values at cell midpoints of an n-cell grid: K(i,j) = k(m_i, m_j).
CMatrix kernel_matrix(const ExpKernel& k, std::size_t n);

// Increment covariance of B^H over the n cells of [0, t_end].
linalg::SymmetricToeplitz gram_operator(const HurstParam& h, double t_end, std::size_t n);

// Bilinear form sum a_ij conj(b_pq) G_ip G_jq on an arbitrary grid kernel.
cplx grid_tensor_form(const CMatrix& a, const CMatrix& b, const HurstParam& h, double t_end);

// Step-projection norm of the kernel on an n x n grid.
// Requires H in (1/4,1/2) and n >= 32.
double tensor_norm_sq(const ExpKernel& k, const HurstParam& h, std::size_t n);
// <psi, hh> on the same grid.
cplx tensor_inner(const ExpKernel& psi, const ExpKernel& hh, const HurstParam& h, std::size_t n);

// Three-level extrapolation over n0, 2 n0, 4 n0 with projection-error
// exponents 4H-1 and 1 in the mesh size.
double tensor_norm_sq_extrapolated(const ExpKernel& k, const HurstParam& h, std::size_t n0);
cplx tensor_inner_extrapolated(const ExpKernel& psi, const ExpKernel& hh, const HurstParam& h, std::size_t n0);

// (H Gamma(2H))^2 M_H^2 and (H Gamma(2H))^2 N_H
double norm_drift_coefficient(const DriftParam& gamma, const HurstParam& h);
cplx inner_drift_coefficient(const DriftParam& gamma, const HurstParam& h);

struct ConvergenceRow {
  double t_end;
  std::size_t n;
  cplx estimate;
  cplx target;  // linear drift coefficient, or 0 when none applies
  double residual;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  // last/first ratio of |estimate|
  double growth_ratio() const;
  // least-squares slope of the estimate against t_end
  cplx slope() const;
  void write_csv(std::ostream& os) const;
};

enum class DriftQuantity { NormPsi, InnerPsiHh };

struct DriftOptions {
  double density = 12.8;  // grid cells per unit time at the coarsest level
  bool extrapolate = true;
};

// Rows over t_list (sorted); residual = |estimate - target T|.
ConvergenceTable linear_drift_table(DriftQuantity q, const DriftParam& gamma, const HurstParam& h,
                                    std::vector<double> t_list, const DriftOptions& opts = {});

// Raw Psi norms across n_list refinements. Requires H <= 1/4 unless
// `control` is set (used for the convergent comparison runs).
ConvergenceTable divergence_probe(const HurstParam& h, const DriftParam& gamma, double t_end,
                                  std::vector<std::size_t> n_list, bool control = false);

// ||Phi|| / T with Phi(s,t) = <Psi(.,t), Psi(s,.)> on the grid.
// Requires H in (1/6,1/2) and n <= 64.
double contraction_norm(const DriftParam& gamma, const HurstParam& h, double t_end, std::size_t n);
// Same via the O(n^4) direct sums.
double contraction_norm_serial(const DriftParam& gamma, const HurstParam& h, double t_end, std::size_t n);

// H^2 (A1 + A2 + A3) split of ||Psi||^2 from two triangle integrals
//   P = int_{x<y} e^{-gamma(y-x)} x^b y^b,  Q = same with (T-y),  b = 2H-1,
// and the leading expansion of the A1 block. Requires H in (1/4,1/2).
struct ReductionCheck {
  double a1;
  double a2;
  double a3;
  double reduced;  // H^2 (A1 + A2 + A3)
  double direct;   // extrapolated step-projection norm
  double rel_gap;
};
ReductionCheck reduction_cross_check(const DriftParam& gamma, const HurstParam& h, double t_end,
                                     double density = 12.8);

}  // namespace cfou::kernels

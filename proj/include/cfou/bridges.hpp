#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cfou/quad.hpp"
#include "cfou/types.hpp"

namespace cfou::bridges {

// xi_t = int_0^t (T-u)^{-alpha} dB^H_u. `alpha` is the kernel exponent: in
// (0,H) for xi, and the bridge exponent g_exp in (H,1) for the bridge.
struct BridgeParams {
  HurstParam h;
  double alpha;
  double t_end;
};

// Throws DomainError unless alpha in (0,H) and t_end > 0.
void validate_xi(const BridgeParams& p);

enum class MomentMethod { ClosedForm, Quadrature, MonteCarlo };

struct MomentOptions {
  int k_max = 12;                  // last dyadic level t_k = T(1 - 2^-k)
  std::size_t mc_steps = 8192;     // grid cells for the Monte Carlo sum
  std::size_t mc_reps = 100000;    // replications (rounded up to even)
  std::uint64_t seed = 20240607;
  quad::Tolerance tol{};
};

// Values along t_k = T(1 - 2^-k) and their extrapolated limit.
struct LimitSequence {
  std::vector<int> k;
  std::vector<double> t;
  std::vector<double> raw;
  double limit;
};

// (H/(H-alpha)) Gamma(1-alpha) Gamma(2H) / Gamma(2H-alpha) T^{2(H-alpha)}
double xi_closed_form(const BridgeParams& p);

// ||(T-u)^{-alpha} 1_[0,t_k]||^2 for k = 1..k_max, extrapolated with
// exponents 2(H-alpha) and 1-alpha in T-t.
LimitSequence xi_truncated_moments(const BridgeParams& p, int k_max = 12, const quad::Tolerance& tol = {});

// Left-point kernel values on the grid, with the last cell carrying the
// cell-averaged kernel dt^{-alpha}/(1-alpha).
std::vector<double> xi_mc_weights(const BridgeParams& p, std::size_t n);
// Exact variance of the discretized sum, w' G w.
double xi_discrete_variance(const BridgeParams& p, std::size_t n);
// Sample second moment of the discretized sum (replication-parallel).
double xi_mc_moment(const BridgeParams& p, std::size_t n, std::size_t reps, std::uint64_t seed);

double xi_second_moment(const BridgeParams& p, MomentMethod method, const MomentOptions& opts = {});

// H^2/(g-H) B(2H, 1+g-2H); requires g in (H,1).
double bridge_second_moment(const HurstParam& h, double g_exp);

// H g/(g-H) B(2H, 1+g-2H): the same limit keeping the boundary term
// lim (T-t)^{1+g-2H} int_0^t (T-u)^{-g-1} (t-u)^{2H-1} du = B(2H, 1+g-2H).
double bridge_second_moment_with_boundary(const HurstParam& h, double g_exp);

// (T-t)^{2(g-H)} ||(T-u)^{-g} 1_[0,t]||^2 along t_k, extrapolated from the
// last three levels with exponents 2(g-H) and 1.
LimitSequence bridge_second_moment_limit(const HurstParam& h, double g_exp, double t_end, int k_max = 10,
                                         const quad::Tolerance& tol = {});

// E[B_s Y_t] = (T-t)^{g-H} <1_[0,s], (T-u)^{-g} 1_[0,t]> along t_k,
// extrapolated with exponents g-H and 1-H.
LimitSequence bridge_orthogonality(const HurstParam& h, double g_exp, double s, double t_end, int k_max = 10,
                                   const quad::Tolerance& tol = {});

// E[(xi_s - xi_t)^2] = H (J1 + J2 + J3), each term by singular quadrature.
double structure_function(const BridgeParams& p, double s, double t, const quad::Tolerance& tol = {});
// Same quantity as ||(T-u)^{-alpha} 1_[s,t]||^2 from the inner product.
double structure_function_rkhs(const BridgeParams& p, double s, double t, const quad::Tolerance& tol = {});

// H [ (H B(1-alpha,2H) + 1/2)/(H-alpha) + B(1-alpha, 2H-alpha) ]
double structure_bound_constant(const BridgeParams& p);

enum class HolderAnchor {
  Terminal,  // pairs (T - 2 delta, T - delta)
  Origin,    // pairs (0, delta)
  Interior   // pairs (s, s + delta)
};

struct HolderFit {
  double slope;
  std::vector<double> deltas;
  std::vector<double> values;  // structure function per delta
};

// Least-squares slope of (1/2) log structure_function against log delta,
// delta = 2^-4 .. 2^-10 (scaled by T).
HolderFit holder_exponent_estimate(const BridgeParams& p, HolderAnchor anchor = HolderAnchor::Terminal,
                                   double s = 0.5, const quad::Tolerance& tol = {});

struct MomentRow {
  std::string quantity;
  double closed_form;
  double quadrature;
  double monte_carlo;
  double rel_gap;  // largest pairwise relative gap among the computed columns
};

struct MomentTable {
  std::vector<MomentRow> rows;
  void write_csv(std::ostream& os) const;
};

// Rows for E[xi_T^2]; methods not requested are reported as NaN.
MomentTable moment_table(const BridgeParams& p, bool closed, bool quadrature, bool monte_carlo,
                         const MomentOptions& opts = {});

}  // namespace cfou::bridges

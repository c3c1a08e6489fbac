#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfou/types.hpp"

namespace cfou::estimator {

struct CovarianceSummary {
  double sigma2;
  double c;
  double b;
  double d;
  double kappa;
  double m_h2;
  cplx n_h;
  double gamma_factor;    // (H Gamma(2H))^2, scale of the tensor-norm drifts
  Eigen::Matrix2d matrix_c;        // [[sigma2 + c, b], [b, sigma2 - c]]
  Eigen::Matrix2d limit_cov;       // matrix_c / d^2
  Eigen::Matrix2d limit_cov_half;  // matrix_c / (2 d^2)
};

// Domain error for H outside (1/4, 3/4); H = 1/2 is allowed.
CovarianceSummary asymptotic_constants(const DriftParam& gamma, const HurstParam& h);

// -sum conj(Z_k)(Z_{k+1}-Z_k) / sum |Z_k|^2 dt
cplx lse_gamma(const ComplexPath& z);

// E[sum_k conj(Z_k) dzeta_k] for the exponential-Euler scheme:
//   sum_{l>=1} (n-l) conj(e)^l dt^2H rho(l),  e = e^{-gamma dt}.
cplx trace_correction(const DriftParam& gamma, const HurstParam& h, const UniformGrid& grid);

// Forward-sum estimator with the noise trace removed from the numerator.
cplx lse_gamma_divergence(const ComplexPath& z, const DriftParam& gamma, const HurstParam& h);

enum class Numerator { Forward, Divergence };

struct McConfig {
  DriftParam gamma{1.0, 1.0};
  HurstParam h{0.35};
  std::vector<double> t_list{25.0, 50.0, 100.0};
  std::size_t n_steps = 16384;
  std::size_t n_reps = 500;
  std::uint64_t seed = 20240607;
  Numerator numerator = Numerator::Divergence;
};

struct McBlock {
  double t_end;
  std::vector<cplx> estimates;
  double mean_abs_error;
};

struct McReport {
  std::size_t n_reps;
  double t_end;
  std::vector<cplx> estimates;      // at the largest T
  std::vector<cplx> scaled_errors;  // sqrt(T)(gamma_hat - gamma) at the largest T
  Eigen::Vector2d empirical_mean;
  Eigen::Matrix2d empirical_cov;
  Eigen::Matrix2d target_cov;       // matrix_c / (2 d^2)
  Eigen::Matrix2d target_cov_full;  // matrix_c / d^2
  std::vector<std::pair<double, double>> consistency_curve;  // (T, mean |gamma_hat - gamma|)
  std::vector<McBlock> blocks;
  bool has_target;
};

McReport run_mc_experiment(const McConfig& cfg);
// Serial reference of the replication loop (identical output).
McReport run_mc_experiment_serial(const McConfig& cfg);

struct DiagnosticsReport {
  std::size_t n;
  double skewness[2];
  double excess_kurtosis[2];
  double mahalanobis_mean;       // against the half normalization
  double mahalanobis_mean_full;  // against matrix_c / d^2
  double frob_rel_half;
  double frob_rel_full;
  std::string better_fit;  // "C/2" or "C"
};

DiagnosticsReport normality_diagnostics(const McReport& report);
DiagnosticsReport normality_diagnostics(std::span<const cplx> samples, const Eigen::Matrix2d& target_half,
                                        const Eigen::Matrix2d& target_full);

Eigen::Matrix2d sample_covariance(std::span<const cplx> samples, Eigen::Vector2d* mean = nullptr);
double frobenius_relative(const Eigen::Matrix2d& a, const Eigen::Matrix2d& reference);

}  // namespace cfou::estimator

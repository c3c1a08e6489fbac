#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cfou/rng.hpp"
#include "cfou/toeplitz.hpp"
#include "cfou/types.hpp"

namespace cfou::fbm {

// Cov(B_s, B_t) = (s^2H + t^2H - |s-t|^2H) / 2
double fbm_covariance(double s, double t, const HurstParam& h);

// Unit-step increment autocovariance rho(k) = (|k+1|^2H - 2|k|^2H + |k-1|^2H) / 2.
double increment_autocov(std::size_t k, const HurstParam& h);
std::vector<double> increment_autocov_table(std::size_t n, const HurstParam& h);  // k = 0..n

struct SynthesisOptions {
  double eigen_tol = 1e-12;
  bool allow_fallback = true;
  bool force_dense = false;  // bypass the circulant route (testing)
};

// Exact fractional Gaussian noise on a fixed grid. Circulant embedding by
// default, dense Cholesky when the embedding is not nonnegative.
// Immutable after construction; sampling is safe from many threads.
class FgnSynthesizer {
 public:
  FgnSynthesizer(const HurstParam& h, const UniformGrid& grid, const SynthesisOptions& opts = {});
  ~FgnSynthesizer();

  const UniformGrid& grid() const { return grid_; }
  const HurstParam& hurst() const { return h_; }
  bool uses_dense() const { return dense_ != nullptr; }
  double min_eigenvalue() const { return min_eig_; }

  // One increment sequence (length n) for the seed.
  void increments(const Seed& seed, std::span<double> out) const;
  // Two independent increment sequences from a single draw.
  void increment_pair(const Seed& seed, std::span<double> a, std::span<double> b) const;

 private:
  struct Dense;
  HurstParam h_;
  UniformGrid grid_;
  double scale_;  // dt^H
  std::size_t m_;
  std::vector<double> sqrt_eig_;
  double min_eig_ = 0.0;
  std::unique_ptr<linalg::Dft> dft_;
  std::unique_ptr<Dense> dense_;
};

// Partial sums of increments, with a leading zero.
std::vector<double> cumulative(std::span<const double> inc);

RealPath sample_fbm_path(const HurstParam& h, const UniformGrid& grid, const Seed& seed,
                         const SynthesisOptions& opts = {});

// zeta = (B1 + i B2)/sqrt(2); B1 from stream 2*seed.stream, B2 from 2*seed.stream+1.
ComplexPath sample_complex_fbm(const HurstParam& h, const UniformGrid& grid, const Seed& seed,
                               const SynthesisOptions& opts = {});

// Complex increments of zeta for a prepared synthesizer (same stream rule).
void complex_increments(const FgnSynthesizer& syn, const Seed& seed, std::span<cplx> out);

}  // namespace cfou::fbm

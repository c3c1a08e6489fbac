#pragma once

#include <span>

#include "cfou/fbm.hpp"
#include "cfou/types.hpp"

namespace cfou::fou {

// dZ = -gamma Z dt + dzeta, Z_0 = 0, by Z_{k+1} = e^{-gamma dt} (Z_k + dzeta_k).
class FouSimulator {
 public:
  FouSimulator(const DriftParam& gamma, const HurstParam& h, const UniformGrid& grid,
               const fbm::SynthesisOptions& opts = {});

  const UniformGrid& grid() const { return syn_.grid(); }
  cplx step_factor() const { return step_; }
  // Driver increments for the seed (streams 2*seed.stream, 2*seed.stream+1).
  void driver(const Seed& seed, std::span<cplx> dzeta) const;
  // Z on the grid (length n+1) from given driver increments.
  void integrate(std::span<const cplx> dzeta, std::span<cplx> z) const;
  ComplexPath path(const Seed& seed) const;

 private:
  DriftParam gamma_;
  fbm::FgnSynthesizer syn_;
  cplx step_;
};

ComplexPath simulate_fou(const DriftParam& gamma, const HurstParam& h, const UniformGrid& grid, const Seed& seed);

// Same recursion driven by an explicit complex path zeta (zeta_0 is ignored).
ComplexPath simulate_fou_from_driver(const DriftParam& gamma, const ComplexPath& zeta);

// Trapezoidal (1/T) int_0^T |Z_t|^2 dt.
double ergodic_average(const ComplexPath& z);

// H Gamma(2H) (1/2 lambda) (conj(gamma)^(1-2H) + gamma^(1-2H))
double stationary_variance(const DriftParam& gamma, const HurstParam& h);

}  // namespace cfou::fou

#include "cfou/fou.hpp"

#include <cmath>
#include <vector>

namespace cfou::fou {

FouSimulator::FouSimulator(const DriftParam& gamma, const HurstParam& h, const UniformGrid& grid,
                           const fbm::SynthesisOptions& opts)
    : gamma_(gamma), syn_(h, grid, opts), step_(std::exp(-gamma.gamma() * grid.dt())) {}

void FouSimulator::driver(const Seed& seed, std::span<cplx> dzeta) const { fbm::complex_increments(syn_, seed, dzeta); }

void FouSimulator::integrate(std::span<const cplx> dzeta, std::span<cplx> z) const {
  z[0] = 0.0;
  for (std::size_t k = 0; k < dzeta.size(); ++k) z[k + 1] = step_ * (z[k] + dzeta[k]);
}

ComplexPath FouSimulator::path(const Seed& seed) const {
  const std::size_t n = grid().n;
  std::vector<cplx> dz(n), z(n + 1);
  driver(seed, dz);
  integrate(dz, z);
  return ComplexPath{grid(), std::move(z)};
}

ComplexPath simulate_fou(const DriftParam& gamma, const HurstParam& h, const UniformGrid& grid, const Seed& seed) {
  return FouSimulator(gamma, h, grid).path(seed);
}

ComplexPath simulate_fou_from_driver(const DriftParam& gamma, const ComplexPath& zeta) {
  const std::size_t n = zeta.grid.n;
  const cplx e = std::exp(-gamma.gamma() * zeta.grid.dt());
  std::vector<cplx> z(n + 1, cplx(0.0));
  for (std::size_t k = 0; k < n; ++k) z[k + 1] = e * (z[k] + (zeta.values[k + 1] - zeta.values[k]));
  return ComplexPath{zeta.grid, std::move(z)};
}

double ergodic_average(const ComplexPath& z) {
  const std::size_t n = z.grid.n;
  double s = 0.5 * (std::norm(z.values[0]) + std::norm(z.values[n]));
  for (std::size_t k = 1; k < n; ++k) s += std::norm(z.values[k]);
  return s * z.grid.dt() / z.grid.t_end;
}

double stationary_variance(const DriftParam& gamma, const HurstParam& h) {
  const double H = h.h;
  const cplx g = gamma.gamma();
  const cplx v = (std::pow(std::conj(g), 1.0 - 2.0 * H) + std::pow(g, 1.0 - 2.0 * H)) / (2.0 * gamma.lambda);
  return H * std::tgamma(2.0 * H) * v.real();
}

}  // namespace cfou::fou

#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "cfou/types.hpp"

namespace cfou {

// splitmix64 finalizer, used to derive independent seeds from counters
std::uint64_t mix64(std::uint64_t x);

// Base seed of the k-th sub-experiment (counter-based derivation).
std::uint64_t derive_base(std::uint64_t base, std::uint64_t k);

// Standard normal variates from mt19937_64 via the Marsaglia polar method.
// The sequence is a pure function of the seed.
class NormalStream {
 public:
  explicit NormalStream(const Seed& seed);
  double next();
  void fill(std::span<double> out);
  double uniform();  // in (0,1)

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cfou

#include "cfou/rng.hpp"

#include <cmath>

namespace cfou {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_base(std::uint64_t base, std::uint64_t k) {
  return mix64(base ^ mix64(k + 0x632be59bd9b4e019ULL));
}

NormalStream::NormalStream(const Seed& seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.base), static_cast<std::uint32_t>(seed.base >> 32),
                    static_cast<std::uint32_t>(seed.stream), static_cast<std::uint32_t>(seed.stream >> 32)};
  eng_.seed(seq);
}

double NormalStream::uniform() {
  // 53 random bits, shifted off zero
  return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

void NormalStream::fill(std::span<double> out) {
  for (auto& x : out) x = next();
}

}  // namespace cfou

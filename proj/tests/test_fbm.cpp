#include <gtest/gtest.h>

#include <Eigen/Cholesky>
#include <cmath>
#include <vector>

#include "cfou/errors.hpp"
#include "cfou/fbm.hpp"
#include "cfou/rng.hpp"
#include "cfou/toeplitz.hpp"

using namespace cfou;

namespace {

struct Moments {
  double mean = 0.0, var = 0.0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(x.size());
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var /= static_cast<double>(x.size() - 1);
  return m;
}

}  // namespace

TEST(FbmCovariance, Examples) {
  const HurstParam h(0.3);
  EXPECT_DOUBLE_EQ(fbm::fbm_covariance(1.0, 1.0, h), 1.0);
  EXPECT_DOUBLE_EQ(fbm::fbm_covariance(0.0, 5.0, h), 0.0);
  EXPECT_NEAR(fbm::fbm_covariance(2.0, 1.0, h), std::pow(2.0, -0.4), 1e-15);
  EXPECT_NEAR(fbm::fbm_covariance(2.0, 1.0, h), 0.757858, 1e-6);
  EXPECT_THROW(fbm::fbm_covariance(-1.0, 1.0, h), DomainError);
}

TEST(FbmCovariance, SymmetricAndBrownianAtHalf) {
  const HurstParam h(0.37), half(0.5);
  for (double s : {0.0, 0.1, 0.7, 1.3, 4.0})
    for (double t : {0.05, 0.9, 2.2, 3.0}) {
      EXPECT_EQ(fbm::fbm_covariance(s, t, h), fbm::fbm_covariance(t, s, h));
      EXPECT_NEAR(fbm::fbm_covariance(s, t, half), std::min(s, t), 1e-12);
    }
}

TEST(FbmCovariance, IncrementMatrixPositiveDefinite) {
  for (double hv : {0.1, 0.3, 0.5, 0.8}) {
    const HurstParam h(hv);
    const std::size_t n = 512;
    const double dt = 1.0 / n;
    Eigen::MatrixXd g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double a = i * dt, b = (i + 1) * dt, c = j * dt, d = (j + 1) * dt;
        g(i, j) = fbm::fbm_covariance(b, d, h) - fbm::fbm_covariance(b, c, h) - fbm::fbm_covariance(a, d, h) +
                  fbm::fbm_covariance(a, c, h);
      }
    EXPECT_LT((g - g.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    g.diagonal().array() += 1e-10;
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    EXPECT_EQ(llt.info(), Eigen::Success) << "H=" << hv;
  }
}

TEST(FbmCovariance, AutocovTableMatchesCovarianceDifferences) {
  const HurstParam h(0.3);
  const auto rho = fbm::increment_autocov_table(10, h);
  ASSERT_EQ(rho.size(), 11u);
  for (std::size_t k = 0; k <= 10; ++k) {
    const double direct = fbm::fbm_covariance(k + 1.0, 1.0, h) - fbm::fbm_covariance(k + 1.0, 0.0, h) -
                          fbm::fbm_covariance(k, 1.0, h) + fbm::fbm_covariance(k, 0.0, h);
    EXPECT_NEAR(rho[k], direct, 1e-13);
  }
}

TEST(Toeplitz, ApplyMatchesDenseProduct) {
  const HurstParam h(0.35);
  const std::size_t n = 37;
  linalg::SymmetricToeplitz g(std::vector<double>(fbm::increment_autocov_table(n - 1, h)));
  std::vector<cplx> x(n), y(n);
  NormalStream ns(Seed{7, 0});
  for (auto& v : x) v = {ns.next(), ns.next()};
  g.apply(x, y);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += g.entry(i, j) * x[j];
    EXPECT_NEAR(std::abs(s - y[i]), 0.0, 1e-12);
  }
}

TEST(FbmPath, StartsAtZeroWithRightLength) {
  const UniformGrid grid(2.0, 100);
  const auto p = fbm::sample_fbm_path(HurstParam(0.3), grid, Seed{1, 0});
  ASSERT_EQ(p.values.size(), 101u);
  EXPECT_EQ(p.values[0], 0.0);
  const auto z = fbm::sample_complex_fbm(HurstParam(0.3), grid, Seed{1, 0});
  ASSERT_EQ(z.values.size(), 101u);
  EXPECT_EQ(z.values[0], cplx(0.0));
}

TEST(FbmPath, DeterministicPerSeed) {
  const UniformGrid grid(1.0, 2048);
  const HurstParam h(0.3);
  const auto a = fbm::sample_fbm_path(h, grid, Seed{99, 3});
  const auto b = fbm::sample_fbm_path(h, grid, Seed{99, 3});
  const auto c = fbm::sample_fbm_path(h, grid, Seed{99, 4});
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
}

TEST(FbmPath, BrownianIncrementVariance) {
  const UniformGrid grid(1.0, 1024);
  const auto p = fbm::sample_fbm_path(HurstParam(0.5), grid, Seed{5, 0});
  std::vector<double> inc(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) inc[k] = p.values[k + 1] - p.values[k];
  const auto m = moments(inc);
  // sample variance of 1024 normals: relative s.e. sqrt(2/1023)
  EXPECT_NEAR(m.var / grid.dt(), 1.0, 4.0 * std::sqrt(2.0 / 1023.0));
}

TEST(FbmPath, TerminalVarianceMonteCarlo) {
  const HurstParam h(0.3);
  const UniformGrid grid(1.0, 2048);
  const fbm::FgnSynthesizer syn(h, grid);
  EXPECT_FALSE(syn.uses_dense());
  const std::size_t reps = 5000;
  std::vector<double> end(reps), other(reps);
  std::vector<double> a(grid.n), b(grid.n);
  for (std::size_t r = 0; r < reps / 2; ++r) {
    syn.increment_pair(Seed{2024, r}, a, b);
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k) {
      sa += a[k];
      sb += b[k];
    }
    end[2 * r] = sa;
    end[2 * r + 1] = sb;
  }
  double m2 = 0.0, m4 = 0.0;
  for (double v : end) {
    m2 += v * v;
    m4 += v * v * v * v;
  }
  m2 /= reps;
  m4 /= reps;
  const double se = std::sqrt((m4 - m2 * m2) / reps);
  EXPECT_NEAR(m2, 1.0, 3.0 * se);
}

TEST(FbmPath, DistinctStreamsUncorrelated) {
  const HurstParam h(0.3);
  const UniformGrid grid(1.0, 256);
  const std::size_t reps = 1000;
  std::vector<double> x(reps), y(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    x[r] = fbm::sample_fbm_path(h, grid, Seed{11, 2 * r}).values.back();
    y[r] = fbm::sample_fbm_path(h, grid, Seed{11, 2 * r + 1}).values.back();
  }
  const auto mx = moments(x), my = moments(y);
  double cov = 0.0;
  for (std::size_t r = 0; r < reps; ++r) cov += (x[r] - mx.mean) * (y[r] - my.mean);
  cov /= static_cast<double>(reps - 1);
  EXPECT_LT(std::abs(cov / std::sqrt(mx.var * my.var)), 0.1);
}

TEST(FbmPath, ComplexMoments) {
  for (auto [hv, T] : {std::pair{0.3, 1.0}, std::pair{0.5, 2.0}}) {
    const HurstParam h(hv);
    const UniformGrid grid(T, 512);
    const std::size_t reps = 5000;
    std::vector<double> mod2(reps), re2(reps), im2(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const cplx z = fbm::sample_complex_fbm(h, grid, Seed{77, r}).values.back();
      mod2[r] = std::norm(z);
      re2[r] = (z * z).real();
      im2[r] = (z * z).imag();
    }
    const double target = std::pow(T, 2.0 * hv);
    const auto m = moments(mod2), a = moments(re2), b = moments(im2);
    const double sq = std::sqrt(static_cast<double>(reps));
    EXPECT_NEAR(m.mean, target, 3.0 * std::sqrt(m.var) / sq);
    EXPECT_NEAR(a.mean, 0.0, 3.0 * std::sqrt(a.var) / sq);
    EXPECT_NEAR(b.mean, 0.0, 3.0 * std::sqrt(b.var) / sq);
  }
}

TEST(FbmPath, DenseFallbackAgreesInDistribution) {
  const HurstParam h(0.3);
  const UniformGrid grid(1.0, 64);
  fbm::SynthesisOptions dense;
  dense.force_dense = true;
  const fbm::FgnSynthesizer syn(h, grid, dense);
  EXPECT_TRUE(syn.uses_dense());
  const std::size_t reps = 4000;
  std::vector<double> inc(grid.n), end(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    syn.increments(Seed{3, r}, inc);
    double s = 0.0;
    for (double v : inc) s += v;
    end[r] = s;
  }
  const auto m = moments(end);
  EXPECT_NEAR(m.var, 1.0, 4.0 * std::sqrt(2.0 / reps));
}

TEST(FbmPath, EmbeddingEigenvaluesNonnegative) {
  for (double hv : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const fbm::FgnSynthesizer syn(HurstParam(hv), UniformGrid(1.0, 1000));
    EXPECT_GT(syn.min_eigenvalue(), -1e-12) << hv;
  }
}

TEST(Rng, SeedDerivationIsInjectiveOnSample) {
  std::vector<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 2000; ++k) seen.push_back(derive_base(42, k));
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
}

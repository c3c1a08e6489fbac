#include <gtest/gtest.h>

#include "cfou/estimator.hpp"
#include "cfou/fbm.hpp"
#include "cfou/kernels.hpp"
#include "cfou/parallel.hpp"
#include "cfou/rng.hpp"
#include "cfou/toeplitz.hpp"

using namespace cfou;

namespace {

CMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  NormalStream ns(Seed{seed, 0});
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {ns.next(), ns.next()};
  return m;
}

std::vector<double> acov(std::size_t n, double h) {
  auto a = fbm::increment_autocov_table(n - 1, HurstParam(h));
  return {a.begin(), a.end()};
}

class ThreadReset : public ::testing::Test {
 protected:
  void SetUp() override { saved_ = par::max_threads(); }
  void TearDown() override { par::set_threads(saved_); }
  int saved_ = 1;
};

}  // namespace

TEST(Parallel, ToeplitzFormMatchesSerial) {
  const std::size_t n = 300;
  const auto a = acov(n, 0.3);
  const CMatrix u = random_matrix(n, 1), v = random_matrix(n, 2);
  std::vector<cplx> x(u.col(0).begin(), u.col(0).end()), y(v.col(0).begin(), v.col(0).end());
  const cplx p = par::toeplitz_form(x, y, a), s = serial::toeplitz_form(x, y, a);
  EXPECT_NEAR(std::abs(p - s), 0.0, 1e-10 * std::abs(s));
}

TEST(Parallel, SandwichMatchesSerial) {
  const std::size_t n = 50;
  const auto a = acov(n, 0.35);
  const linalg::SymmetricToeplitz g(a);
  const CMatrix k = random_matrix(n, 3);
  EXPECT_LT((par::sandwich(k, g) - serial::sandwich(k, a)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Parallel, TensorFormAgainstNaiveSum) {
  const std::size_t n = 14;
  const auto a = acov(n, 0.4);
  const linalg::SymmetricToeplitz g(a);
  const CMatrix x = random_matrix(n, 4), y = random_matrix(n, 5);
  const cplx naive = serial::tensor_form_naive(x, y, a);
  EXPECT_NEAR(std::abs(par::tensor_form(x, y, g) - naive), 0.0, 1e-10 * std::abs(naive));
  EXPECT_NEAR(std::abs(serial::tensor_form(x, y, a) - naive), 0.0, 1e-10 * std::abs(naive));
}

TEST(Parallel, ContractionAgainstNaiveSum) {
  const std::size_t n = 16;
  const auto a = acov(n, 0.3);
  const linalg::SymmetricToeplitz g(a);
  const CMatrix p = random_matrix(n, 6);
  EXPECT_LT((par::contraction(p, g) - serial::contraction_naive(p, a)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST_F(ThreadReset, ReductionsIndependentOfThreadCount) {
  const std::size_t n = 96;
  const auto a = acov(n, 0.35);
  const linalg::SymmetricToeplitz g(a);
  const CMatrix x = random_matrix(n, 7), y = random_matrix(n, 8);
  par::set_threads(1);
  const cplx one = par::tensor_form(x, y, g);
  par::set_threads(4);
  const cplx four = par::tensor_form(x, y, g);
  EXPECT_EQ(one, four);
}

TEST_F(ThreadReset, McSerialReferenceIsIdentical) {
  estimator::McConfig cfg;
  cfg.t_list = {5.0, 10.0};
  cfg.n_steps = 512;
  cfg.n_reps = 64;
  cfg.seed = 99;
  par::set_threads(3);
  const auto p = estimator::run_mc_experiment(cfg);
  const auto s = estimator::run_mc_experiment_serial(cfg);
  ASSERT_EQ(p.blocks.size(), s.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) EXPECT_EQ(p.blocks[b].estimates, s.blocks[b].estimates);
  EXPECT_EQ(p.empirical_cov, s.empirical_cov);
}

TEST(Parallel, ForEachIndexVisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  par::for_each_index(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

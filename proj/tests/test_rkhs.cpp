#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "cfou/fbm.hpp"
#include "cfou/fou.hpp"
#include "cfou/quad.hpp"
#include "cfou/rkhs.hpp"
#include "support/pairs.hpp"

using namespace cfou;
using rkhs::PiecewiseSmoothFn;

TEST(BvMeasure, Examples) {
  {
    const auto m = rkhs::bv_measure(PiecewiseSmoothFn::indicator(0, 1));
    ASSERT_EQ(m.atoms.size(), 2u);
    EXPECT_EQ(m.atoms[0].location, 0.0);
    EXPECT_EQ(m.atoms[0].mass, cplx(1.0));
    EXPECT_EQ(m.atoms[1].location, 1.0);
    EXPECT_EQ(m.atoms[1].mass, cplx(-1.0));
    EXPECT_NEAR(std::abs(m.integrate([](double t) { return cplx(t * t); })), 1.0, 1e-14);
  }
  {
    const auto m = rkhs::bv_measure(PiecewiseSmoothFn::exponential(-1.0, 0, 1));
    ASSERT_EQ(m.atoms.size(), 2u);
    EXPECT_NEAR(m.atoms[1].mass.real(), -std::exp(-1.0), 1e-15);
    ASSERT_EQ(m.density.size(), 1u);
    EXPECT_NEAR(m.density[0].density(0.4).real(), -std::exp(-0.4), 1e-15);
  }
  {
    // t on [0,2]: the atom at 0 has zero mass and is dropped
    const auto m = rkhs::bv_measure(PiecewiseSmoothFn::polynomial({0.0, 1.0}, 0, 2));
    ASSERT_EQ(m.atoms.size(), 1u);
    EXPECT_EQ(m.atoms[0].location, 2.0);
    EXPECT_NEAR(m.atoms[0].mass.real(), -2.0, 1e-15);
    EXPECT_NEAR(std::abs(m.total_mass()), 0.0, 1e-10);
  }
}

TEST(BvMeasure, CoincidentAtomsMerge) {
  PiecewiseSmoothFn f = PiecewiseSmoothFn::indicator(0, 1);
  const auto step = PiecewiseSmoothFn::indicator(1, 2);
  for (const auto& p : step.pieces()) f.add(p);
  const auto m = rkhs::bv_measure(f);
  EXPECT_EQ(m.atoms.size(), 2u);  // +1 at 0, -1 at 2; the jumps at 1 cancel
}

TEST(BvMeasure, ZeroTotalMass) {
  for (const auto& p : cfou::testing::oracle_pairs()) {
    EXPECT_NEAR(std::abs(rkhs::bv_measure(p.f).total_mass()), 0.0, 1e-10) << p.name;
    EXPECT_NEAR(std::abs(rkhs::bv_measure(p.g).total_mass()), 0.0, 1e-10) << p.name;
  }
}

TEST(BvMeasure, IntegrationByParts) {
  // -int g f' dt = int f d nu_g
  struct Smooth {
    rkhs::Evaluator f, df;
  };
  const std::vector<Smooth> fs{
      {[](double t) { return cplx(std::sin(t)); }, [](double t) { return cplx(std::cos(t)); }},
      {[](double t) { return cplx(t * t * t); }, [](double t) { return cplx(3 * t * t); }},
      {[](double t) { return std::exp(cplx(0.0, 2.0 * t)); }, [](double t) { return cplx(0.0, 2.0) * std::exp(cplx(0.0, 2.0 * t)); }},
      {[](double t) { return cplx(std::exp(-t)); }, [](double t) { return cplx(-std::exp(-t)); }},
      {[](double t) { return cplx(1.0 / (1.0 + t)); }, [](double t) { return cplx(-1.0 / ((1.0 + t) * (1.0 + t))); }},
  };
  const auto pairs = cfou::testing::oracle_pairs();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto& g = pairs[k + 4].g;
    cplx lhs = 0.0;
    for (const auto& pc : g.pieces())
      lhs -= quad::integrate_singular_1d_complex([&](double t) { return pc.value(t) * fs[k].df(t); },
                                                 {0.0, 0.0, pc.a, pc.b});
    const cplx rhs = rkhs::bv_measure(g).integrate(fs[k].f);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9) << k;
  }
}

TEST(InnerProduct, Examples) {
  const HurstParam h(0.3);
  EXPECT_NEAR(rkhs::inner_product(PiecewiseSmoothFn::indicator(0, 1), PiecewiseSmoothFn::indicator(0, 1), h).real(),
              1.0, 1e-8);
  EXPECT_NEAR(rkhs::inner_product(PiecewiseSmoothFn::indicator(0, 2), PiecewiseSmoothFn::indicator(0, 1), h).real(),
              std::pow(2.0, -0.4), 1e-8);
  EXPECT_NEAR(rkhs::inner_product(PiecewiseSmoothFn::indicator(0, 1), PiecewiseSmoothFn::indicator(1, 2), h).real(),
              std::pow(2.0, 2 * 0.3 - 1) - 1.0, 1e-8);
}

TEST(InnerProduct, CovarianceRecovery) {
  const HurstParam h(0.3);
  std::mt19937_64 eng(20240607);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const double s = u(eng), t = u(eng);
    const cplx v = rkhs::inner_product(PiecewiseSmoothFn::indicator(0, t), PiecewiseSmoothFn::indicator(0, s), h);
    EXPECT_NEAR(v.real(), fbm::fbm_covariance(s, t, h), 1e-6);
  }
}

TEST(InnerProduct, OtherBranches) {
  const auto a = PiecewiseSmoothFn::indicator(0, 2), b = PiecewiseSmoothFn::indicator(0, 1);
  EXPECT_NEAR(rkhs::inner_product(a, b, HurstParam(0.5)).real(), 1.0, 1e-10);
  EXPECT_NEAR(rkhs::inner_product(a, b, HurstParam(0.7)).real(), fbm::fbm_covariance(2, 1, HurstParam(0.7)), 1e-7);
  const auto e = PiecewiseSmoothFn::exponential(-1.0, 0, 1);
  EXPECT_NEAR(rkhs::inner_product(e, e, HurstParam(0.5)).real(), (1.0 - std::exp(-2.0)) / 2.0, 1e-10);
}

TEST(InnerProduct, GridOracleAgreement) {
  const auto pairs = cfou::testing::oracle_pairs();
  for (double hv : {0.3, 0.45}) {
    const HurstParam h(hv);
    for (std::size_t k = 0; k < pairs.size(); k += 3) {
      const cplx v = rkhs::inner_product(pairs[k].f, pairs[k].g, h);
      const cplx o = rkhs::grid_gram_inner(pairs[k].f, pairs[k].g, h, 1024);
      EXPECT_LE(std::abs(v - o), 5e-3 * (1.0 + std::abs(v))) << pairs[k].name << " H=" << hv;
    }
  }
}

TEST(InnerProduct, ConjugateSymmetry) {
  const HurstParam h(0.35);
  for (const auto& p : cfou::testing::oracle_pairs()) {
    const cplx a = rkhs::inner_product(p.f, p.g, h), b = rkhs::inner_product(p.g, p.f, h);
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-9) << p.name;
  }
}

TEST(InnerProduct, GramMatrixPositiveSemidefinite) {
  const HurstParam h(0.3);
  std::vector<PiecewiseSmoothFn> fam;
  for (const auto& p : cfou::testing::oracle_pairs()) fam.push_back(p.f);
  const std::size_t m = fam.size();
  Eigen::MatrixXcd g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      g(i, j) = rkhs::inner_product(fam[i], fam[j], h);
      g(j, i) = std::conj(g(i, j));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8);
}

TEST(GridGram, Examples) {
  const HurstParam h(0.3);
  EXPECT_NEAR(rkhs::grid_gram_inner(PiecewiseSmoothFn::indicator(0, 1), PiecewiseSmoothFn::indicator(0, 1), h, 256)
                  .real(),
              1.0, 1e-12);
  EXPECT_NEAR(rkhs::grid_gram_inner(PiecewiseSmoothFn::indicator(0, 2), PiecewiseSmoothFn::indicator(0, 1), h, 512)
                  .real(),
              0.757858, 1e-3);
}

TEST(GridGram, CauchyUnderRefinement) {
  const HurstParam h(0.35);
  const auto e = PiecewiseSmoothFn::exponential(-1.0, 0, 1);
  const double a = rkhs::grid_gram_inner(e, e, h, 128).real(), b = rkhs::grid_gram_inner(e, e, h, 256).real(),
               c = rkhs::grid_gram_inner(e, e, h, 512).real();
  EXPECT_LT(std::abs(c - b), std::abs(b - a));
}

TEST(InnerProduct, ExponentialNormLimit) {
  const DriftParam g(1.0, 1.0);
  const HurstParam h(0.35);
  const auto e = PiecewiseSmoothFn::exponential(-g.gamma(), 0, 50);
  const double v = rkhs::inner_product(e, e, h).real();
  const double limit = fou::stationary_variance(g, h);
  EXPECT_LT(std::abs(v - limit) / limit, 1e-3);
}

TEST(InnerProduct, KernelMomentAgainstClosedForm) {
  // int_0^1 |x - 0.4|^{-0.3} dx = (0.4^{0.7} + 0.6^{0.7}) / 0.7
  const cplx v = rkhs::kernel_moment([](double) { return cplx(1.0); }, 0.0, 1.0, 0.4, -0.3, false, {});
  EXPECT_NEAR(v.real(), (std::pow(0.4, 0.7) + std::pow(0.6, 0.7)) / 0.7, 1e-10);
  const cplx s = rkhs::kernel_moment([](double) { return cplx(1.0); }, 0.0, 1.0, 0.4, -0.3, true, {});
  EXPECT_NEAR(s.real(), (std::pow(0.6, 0.7) - std::pow(0.4, 0.7)) / 0.7, 1e-10);
}

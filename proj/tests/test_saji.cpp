#include <gtest/gtest.h>

#include "mfib/local/saji.hpp"

using namespace mfib;
using namespace mfib::local;

TEST(Saji, FoldAtPiOverSix) {
  const auto p = saji_point(0.01, pi / 6);
  EXPECT_NEAR(p.h, 0.32, 1e-12);
  EXPECT_TRUE(p.fold);
}

TEST(Saji, CuspAtPiOverThree) {
  const auto p = saji_point(0.01, pi / 3);
  EXPECT_NEAR(p.h, 0.0, 1e-12);
  EXPECT_NEAR(p.dh, -0.96, 1e-12);
}

TEST(Saji, LambdaJacobianHasRankThree) {
  for (double th : {0.0, 0.4, pi / 3, 2.0}) EXPECT_GT(saji_point(0.05, th).rank_margin, 1.0);
}

TEST(Saji, ThreeCuspsPerPeriod) {
  NumericConfig cfg;
  for (double eps : {0.001, 0.01, 0.1}) {
    const auto rep = saji_classify(eps, cfg);
    ASSERT_EQ(rep.cusps.size(), 3u);
    EXPECT_NEAR(rep.cusps[0], 0.0, 1e-12);
    EXPECT_NEAR(rep.cusps[1], pi / 3, 1e-12);
    EXPECT_NEAR(rep.cusps[2], 2 * pi / 3, 1e-12);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(rep.cusp_dh[i], 96 * eps * std::cos(3 * rep.cusps[i]), 1e-12);
    EXPECT_EQ(rep.fold_arcs.size(), 3u);
    EXPECT_LT(rep.max_h_formula_error, 1e-12);
    EXPECT_LT(rep.max_dh_formula_error, 1e-12);
    EXPECT_LT(rep.max_lambda_residual, 1e-12);
  }
}

TEST(Saji, CuspCountIndependentOfGrid) {
  NumericConfig cfg;
  for (int g : {8, 9, 31, 1000}) {
    cfg.grid = g;
    EXPECT_EQ(saji_classify(0.02, cfg).cusps.size(), 3u) << g;
  }
}

TEST(Saji, RejectsDegenerateEps) {
  NumericConfig cfg;
  EXPECT_THROW(saji_classify(0.0, cfg), InvalidArgument);
  EXPECT_THROW(saji_classify(0.5, cfg), InvalidArgument);
}

TEST(Gamma, ValuesAndPeriod) {
  EXPECT_NEAR(std::abs(gamma_curve(0.01, 0.0) - (-0.03)), 0.0, 1e-15);
  for (double th : {0.1, 0.7, 2.5}) EXPECT_LT(std::abs(gamma_curve(0.01, th) - gamma_curve(0.01, th + pi)), 1e-15);
}

TEST(Gamma, Injective) {
  const auto rep = gamma_injectivity(0.01, 2000);
  EXPECT_TRUE(rep.injective);
  EXPECT_GT(rep.min_separation, 0.0);
  EXPECT_GT(rep.min_scaled, 0.5);
  EXPECT_GT(rep.min_factor, 0.0);
  EXPECT_LT(rep.max_factorization_error, 1e-15);
  EXPECT_LT(rep.max_model_error, 1e-15);
}

TEST(AeIdentities, PointExamples) {
  const auto a = ae_projections(2.0, 0.3, 0.7, -1.1);
  EXPECT_NEAR(a[0], 2.0, 1e-12);
  EXPECT_NEAR(a[1], 0.0, 1e-12);
  EXPECT_NEAR(ae_projections(0.5, 0.0, 1.0, 2.0)[2], 4.0, 1e-12);
}

TEST(AeIdentities, RandomPoints) {
  const auto rep = ae_identity_check(NumericConfig{});
  EXPECT_EQ(rep.points, 1000);
  for (double e : rep.max_error) EXPECT_LT(e, 1e-12);
}

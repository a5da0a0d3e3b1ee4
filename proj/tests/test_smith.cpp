#include <gtest/gtest.h>

#include <random>

#include "mfib/smith.hpp"
#include "support/snf_oracle.hpp"

using namespace mfib;

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{2}}), (SmithForm{{2}, 1}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{1, 0}, {0, 2}}), (SmithForm{{1, 2}, 2}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 4}, {-2, 6}}), (SmithForm{{2, 10}, 2}));
  EXPECT_EQ(smith_normal_form(IntMatrix{}), (SmithForm{{}, 0}));
  EXPECT_EQ(smith_normal_form(IntMatrix(3, 2)), (SmithForm{{}, 0}));
}

TEST(Smith, DivisibilityChain) {
  // diag(2,3) is equivalent to diag(1,6)
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}), (SmithForm{{1, 6}, 2}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{4, 0, 0}, {0, 6, 0}, {0, 0, 10}}), (SmithForm{{2, 2, 60}, 3}));
}

TEST(Smith, MatchesDeterminantalOracleOnRandomMatrices) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
  for (int trial = 0; trial < 2000; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = val(rng);
    const auto snf = smith_normal_form(a);
    ASSERT_EQ(snf.factors, oracle::determinantal_factors(a)) << a;
    ASSERT_EQ(snf.rank, snf.factors.size());
  }
}

TEST(Cokernel, Examples) {
  const auto h = cokernel(IntMatrix{{1, 0}, {0, 2}}, 2);
  EXPECT_EQ(h.free_rank, 0u);
  EXPECT_EQ(h.torsion, std::vector<long long>{2});
  EXPECT_EQ(to_string(h), "Z/2");
  EXPECT_EQ(to_string(cokernel(IntMatrix(2, 0), 2)), "Z^2");
  EXPECT_EQ(to_string(cokernel(IntMatrix{{0, 0}, {2, 0}}, 2)), "Z + Z/2");
  EXPECT_EQ(to_string(cokernel(IntMatrix{{1}}, 1)), "0");
  EXPECT_THROW(cokernel(IntMatrix{{1}}, 2), InvalidArgument);
}

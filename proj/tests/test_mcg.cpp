#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mfib/mcg.hpp"

using namespace mfib;

namespace {

Generator random_generator(std::mt19937_64& rng, int g) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (g >= 2 && coin(rng)) {
    std::uniform_int_distribution<int> idx(1, g - 1);
    return Generator::crosscap(g, idx(rng));
  }
  // two-sided classes have an even number of ones
  while (true) {
    std::vector<std::uint8_t> c(g);
    for (auto& b : c) b = static_cast<std::uint8_t>(coin(rng));
    Z2Class x(SurfaceSpec::nonorientable(g), c);
    if (!x.is_zero() && sidedness(x) == Sidedness::TwoSided) return Generator::twist(x, coin(rng) ? 1 : -1);
  }
}

MCGWord random_word(std::mt19937_64& rng, int g, int len) {
  std::vector<WordEntry> e;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < len; ++k) e.push_back({random_generator(rng, g), coin(rng) ? 1 : -1});
  return MCGWord(std::move(e));
}

}  // namespace

TEST(RepGenerator, CrosscapSwap) {
  EXPECT_EQ(rep_generator(Generator::crosscap(2, 1)), (Z2Matrix{{0, 1}, {1, 0}}));
}

TEST(RepGenerator, TwistTransvection) {
  EXPECT_EQ(rep_generator(Generator::twist(parse_z2_coords(2, "11"))), (Z2Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(rep_generator(Generator::twist(parse_z2_coords(3, "110"))), (Z2Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
}

TEST(RepGenerator, RejectsInvalidGenerators) {
  EXPECT_THROW(Generator::twist(Z2Class::core(2, 1)), InvalidArgument);
  EXPECT_THROW(Generator::crosscap(2, 2), InvalidArgument);
  EXPECT_THROW(Generator::crosscap(3, 0), InvalidArgument);
}

TEST(RepWord, Examples) {
  EXPECT_TRUE(rep_word(MCGWord{}, 3).is_identity());
  const auto u = Generator::crosscap(2, 1);
  EXPECT_TRUE(rep_word(MCGWord{u, u}).is_identity());
  const auto t = Generator::twist(parse_z2_coords(2, "11"));
  EXPECT_TRUE(rep_word(MCGWord{t, u}).is_identity());
}

TEST(RepWord, ApplicationOrder) {
  // rep(w1 w2) = rep(w2) rep(w1)
  const auto a = Generator::crosscap(3, 1), b = Generator::crosscap(3, 2);
  EXPECT_EQ(rep_word(MCGWord{a, b}), rep_generator(b) * rep_generator(a));
  EXPECT_FALSE(rep_word(MCGWord{a, b}) == rep_word(MCGWord{b, a}));
}

TEST(RepWord, RejectsMixedSurfaces) {
  EXPECT_THROW(rep_word(MCGWord{Generator::crosscap(2, 1), Generator::crosscap(3, 1)}), InvalidArgument);
}

TEST(SquareRelation, AllIndicesUpToGenusSix) {
  for (int g = 2; g <= 6; ++g)
    for (int i = 1; i < g; ++i) EXPECT_TRUE(check_square_relation(g, i)) << g << " " << i;
}

// rep cannot tell t_delta (delta null-homologous mod 2) from the identity mapping class;
// equal matrices are only a necessary condition for equality in the group.
TEST(SquareRelation, NonFaithfulnessWitness) {
  for (int g = 2; g <= 6; ++g) {
    const auto delta = klein_boundary_class(g, 1);
    ASSERT_TRUE(delta.is_zero());
    const Z2Matrix t_delta = Z2Matrix::identity(g);
    EXPECT_EQ(t_delta, rep_word(MCGWord{}, g));
    EXPECT_EQ(rep_word(MCGWord{Generator::crosscap(g, 1), Generator::crosscap(g, 1)}), rep_word(MCGWord{}, g));
  }
}

TEST(RepWord, RandomWordProperties) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int g = 2 + trial % 5;
    const auto w = random_word(rng, g, 1 + trial % 20);
    const auto m = rep_word(w, g);
    ASSERT_TRUE(m.is_orthogonal());
    ASSERT_TRUE((m * rep_word(w.inverse(), g)).is_identity());
    ASSERT_TRUE(rep_word(w * w.inverse(), g).is_identity());
  }
}

TEST(RepGenerator, InvolutiveAndHandednessBlind) {
  for (int g = 2; g <= 6; ++g) {
    for (int i = 1; i < g; ++i) {
      const auto m = rep_generator(Generator::crosscap(g, i));
      EXPECT_TRUE((m * m).is_identity());
    }
    for (unsigned bits = 1; bits < (1u << g); ++bits) {
      std::vector<std::uint8_t> c(g);
      for (int k = 0; k < g; ++k) c[k] = (bits >> k) & 1u;
      Z2Class x(SurfaceSpec::nonorientable(g), c);
      if (sidedness(x) != Sidedness::TwoSided) continue;
      const auto p = rep_generator(Generator::twist(x, 1)), n = rep_generator(Generator::twist(x, -1));
      EXPECT_EQ(p, n);
      EXPECT_TRUE((p * p).is_identity());
    }
  }
}

TEST(OrientationLift, EqualLiftsCancel) {
  const auto c = parse_z2_coords(2, "11");
  const auto a = IntClass::a(1, 1);
  EXPECT_EQ(orientation_lift_twist(c, a, a).composite, IntMatrix::identity(2));
  EXPECT_EQ(orientation_lift_twist(c, a, -a).composite, IntMatrix::identity(2));
}

TEST(OrientationLift, DualPairComposite) {
  const auto c = parse_z2_coords(2, "11");
  const auto act = orientation_lift_twist(c, IntClass::a(1, 1), IntClass::b(1, 1));
  // brute-force 2x2 product: inverse twist along b after twist along a
  const IntMatrix ta{{1, -1}, {0, 1}}, tb_inv{{1, 0}, {-1, 1}};
  EXPECT_EQ(act.twist_c1, ta);
  EXPECT_EQ(act.inverse_twist_c2, tb_inv);
  EXPECT_EQ(act.composite, (IntMatrix{{1, -1}, {-1, 2}}));
}

TEST(OrientationLift, RejectsWrongSurface) {
  EXPECT_THROW(orientation_lift_twist(parse_z2_coords(2, "11"), IntClass::a(2, 1), IntClass::a(2, 1)),
               InvalidArgument);
}

TEST(WordFile, ParsesAndRejects) {
  std::istringstream ok("fiber N genus=2\nu 1\nu 1 -1 # comment\nt 11 +\n");
  const auto wf = parse_word_file(ok);
  EXPECT_EQ(wf.genus, 2);
  EXPECT_EQ(wf.word.size(), 3u);
  std::istringstream bad("fiber N genus=2\nq 7\n");
  EXPECT_THROW(parse_word_file(bad), ParseError);
  std::istringstream one_sided("fiber N genus=2\nt 10 +\n");
  EXPECT_THROW(parse_word_file(one_sided), ParseError);
}

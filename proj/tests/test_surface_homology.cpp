#include <gtest/gtest.h>

#include <random>

#include "mfib/surface_homology.hpp"

using namespace mfib;

namespace {

Z2Class from_bits(int g, unsigned bits) {
  std::vector<std::uint8_t> c(g);
  for (int i = 0; i < g; ++i) c[i] = (bits >> i) & 1u;
  return {SurfaceSpec::nonorientable(g), c};
}

}  // namespace

TEST(Mod2Pairing, CoreExamples) {
  EXPECT_EQ(mod2_pairing(Z2Class::core(2, 1), Z2Class::core(2, 1)), 1);
  EXPECT_EQ(mod2_pairing(Z2Class::core(2, 1), Z2Class::core(2, 2)), 0);
  const auto s = Z2Class::core(2, 1) + Z2Class::core(2, 2);
  EXPECT_EQ(mod2_pairing(s, s), 0);
}

TEST(Mod2Pairing, RejectsMismatchedSurfaces) {
  EXPECT_THROW(mod2_pairing(Z2Class::core(2, 1), Z2Class::core(3, 1)), InvalidArgument);
}

TEST(Mod2Pairing, SymmetricBilinearExhaustive) {
  for (int g = 1; g <= 6; ++g) {
    const unsigned n = 1u << g;
    for (unsigned x = 0; x < n; ++x)
      for (unsigned y = 0; y < n; ++y) {
        const auto a = from_bits(g, x), b = from_bits(g, y);
        ASSERT_EQ(mod2_pairing(a, b), mod2_pairing(b, a));
        for (unsigned z = 0; z < n; z += 3) {
          const auto c = from_bits(g, z);
          ASSERT_EQ(mod2_pairing(a + c, b), mod2_pairing(a, b) ^ mod2_pairing(c, b));
        }
      }
  }
}

TEST(Sidedness, Examples) {
  EXPECT_EQ(sidedness(Z2Class::core(2, 2)), Sidedness::OneSided);
  EXPECT_EQ(sidedness(Z2Class::core(2, 1) + Z2Class::core(2, 2)), Sidedness::TwoSided);
  EXPECT_EQ(sidedness(parse_z2_coords(3, "111")), Sidedness::OneSided);
  EXPECT_THROW(sidedness(Z2Class::zero(3)), InvalidArgument);
}

TEST(Sidedness, MatchesSelfPairing) {
  for (int g = 1; g <= 6; ++g)
    for (unsigned x = 1; x < (1u << g); ++x) {
      const auto a = from_bits(g, x);
      EXPECT_EQ(sidedness(a) == Sidedness::TwoSided, mod2_pairing(a, a) == 0);
    }
}

TEST(DoubleCover, Examples) {
  EXPECT_EQ(double_cover_spec(SurfaceSpec::nonorientable(2)), SurfaceSpec::orientable_surface(1));
  EXPECT_EQ(double_cover_spec(SurfaceSpec::nonorientable(3)), SurfaceSpec::orientable_surface(2));
  EXPECT_EQ(double_cover_spec(SurfaceSpec::nonorientable(1, 1)), SurfaceSpec::orientable_surface(0, 2));
  EXPECT_THROW(double_cover_spec(SurfaceSpec::orientable_surface(1)), InvalidArgument);
}

TEST(DoubleCover, DoublesEulerCharacteristic) {
  for (int g = 1; g <= 8; ++g)
    for (int b = 0; b <= 4; ++b) {
      const auto s = SurfaceSpec::nonorientable(g, b);
      EXPECT_EQ(double_cover_spec(s).euler_characteristic(), 2 * s.euler_characteristic());
    }
}

TEST(SymplecticPairing, Examples) {
  const auto a = IntClass::a(1, 1), b = IntClass::b(1, 1);
  EXPECT_EQ(symplectic_pairing(a, b), 1);
  EXPECT_EQ(symplectic_pairing(a, a), 0);
  EXPECT_EQ(symplectic_pairing(a + b, a - b), -2);
}

TEST(SymplecticPairing, AntisymmetricOnRandomVectors) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> d(-50, 50);
  for (int trial = 0; trial < 500; ++trial) {
    const int g = 1 + trial % 5;
    std::vector<long long> x(2 * g), y(2 * g);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    const IntClass p(SurfaceSpec::orientable_surface(g), x), q(SurfaceSpec::orientable_surface(g), y);
    ASSERT_EQ(symplectic_pairing(p, q), -symplectic_pairing(q, p));
  }
}

TEST(Serialization, RoundTrips) {
  const auto c = parse_z2_coords(3, "101");
  EXPECT_EQ(to_string(c), "class g=3 coords=101");
  EXPECT_EQ(parse_z2_class("class g=3 coords=101"), c);
  EXPECT_EQ(to_string(SurfaceSpec::nonorientable(3, 1)), "N 3 1");
  EXPECT_EQ(parse_surface_spec("S 2 0"), SurfaceSpec::orientable_surface(2));
  EXPECT_THROW(parse_z2_class("class g=3 coords=10"), ParseError);
}

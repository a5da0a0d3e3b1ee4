#include <gtest/gtest.h>

#include "mfib/local/attaching.hpp"

using namespace mfib;
using namespace mfib::local;

namespace {

TracedCurve plain_circle(double r0, double s0, double rad, int n = 256) {
  TracedCurve c;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * pi * k / n;
    c.samples.push_back({Chart::A, r0 + rad * std::cos(a), s0 + rad * std::sin(a), {}});
  }
  return c;
}

const AttachingResult& result(int i) {
  static const AttachingResult r1 = attaching_class(1, NumericConfig{});
  static const AttachingResult r2 = attaching_class(2, NumericConfig{});
  return i == 1 ? r1 : r2;
}

}  // namespace

TEST(Attaching, ReferencePairingIsUnimodular) {
  const auto p = reference_pairing();
  const long long d = p[0][0] * (p[1][1] * p[2][2] - p[1][2] * p[2][1]) -
                      p[0][1] * (p[1][0] * p[2][2] - p[1][2] * p[2][0]) +
                      p[0][2] * (p[1][0] * p[2][1] - p[1][1] * p[2][0]);
  EXPECT_EQ(std::llabs(d), 1);
}

TEST(Attaching, BasisCurvesReadBack) {
  EXPECT_EQ(fiber_class(core_lift(1)), (FiberClass{{1, 0, 0}}));
  EXPECT_EQ(fiber_class(core_lift(-1)), (FiberClass{{0, 1, 0}}));
  EXPECT_EQ(fiber_class(branch_cut_lift()), (FiberClass{{0, 0, 1}}));
}

TEST(Attaching, NullAndBoundaryCurves) {
  EXPECT_TRUE(fiber_class(circle_lift(0.1, 0.3, 0.05)).is_zero());
  // the outer boundary is Y+ + Y-, which dies in the closed torus fiber
  const auto bd = fiber_class(boundary_lift(0.9));
  EXPECT_EQ(bd, (FiberClass{{1, 1, 0}}));
  EXPECT_EQ(bd.torus(), (std::array<long long, 2>{0, 0}));
  EXPECT_THROW(circle_lift(0.5, 0.0, 0.05), InvalidArgument);
}

TEST(Attaching, IntersectionFormIsAntisymmetric) {
  const auto q = basis_intersection_form();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(q[i][j], -q[j][i]);
  EXPECT_EQ(std::llabs(q[0][2]), 1);
  EXPECT_EQ(q[0][1], 0);
}

TEST(Attaching, FlowedCirclesLieOnFiber) {
  for (int i : {1, 2}) {
    const auto& r = result(i);
    EXPECT_LT(r.flow.max_level_error, 1e-6);
    for (const auto& p : r.curve.samples) EXPECT_LT(std::abs(eval_local_model(Model::Fa, p) - 0.5), 1e-6);
  }
}

TEST(Attaching, ClassesAndTorusDeterminant) {
  const auto& c1 = result(1).cls;
  const auto& c2 = result(2).cls;
  EXPECT_FALSE(c1.is_zero());
  EXPECT_FALSE(c2.is_zero());
  const auto a = c1.torus(), b = c2.torus();
  EXPECT_EQ(std::llabs(a[0] * b[1] - a[1] * b[0]), 2);
}

TEST(Attaching, PairingMatchesPolygonalCount) {
  for (int i : {1, 2})
    for (int sheet : {1, -1}) {
      const auto y = core_lift(sheet, 700);
      EXPECT_EQ(intersection_number(result(i).curve, y), pairing(result(i).cls, fiber_class(y)));
    }
}

TEST(Attaching, SumAgainstBranchCut) {
  FiberClass sum;
  for (std::size_t k = 0; k < 3; ++k) sum.coords[k] = result(1).cls.coords[k] + result(2).cls.coords[k];
  EXPECT_EQ(std::llabs(pairing(sum, FiberClass{{0, 0, 1}})), 2);
}

TEST(Attaching, RejectsBadIndex) { EXPECT_THROW(attaching_class(3, NumericConfig{}), InvalidArgument); }

TEST(Winding, SmallCircleAroundFirstBranchPoint) {
  NumericConfig cfg;
  const auto rep = project_and_wind({plain_circle(0.5, 0.0, 0.05)}, cfg);
  EXPECT_EQ(rep.around_branch[0], (std::array<long long, 2>{1, 0}));
  EXPECT_EQ(rep.around_hole[0], 0);
  const auto rep2 = project_and_wind({plain_circle(-0.5, 0.5, 0.05)}, cfg);
  EXPECT_EQ(rep2.around_branch[0], (std::array<long long, 2>{0, 1}));
}

TEST(Winding, CoreCircleGoesAroundHole) {
  NumericConfig cfg;
  const auto rep = project_and_wind({core_lift(1)}, cfg);
  EXPECT_EQ(rep.around_hole[0], 1);
}

TEST(Winding, IsotopedCircleHitsBranchPoints) {
  NumericConfig cfg;
  EXPECT_THROW(project_and_wind({result(1).curve}, cfg), InvalidArgument);
}

TEST(Winding, ArcConfiguration) {
  const auto a1 = arc_report(result(1).curve);
  const auto a2 = arc_report(result(2).curve);
  for (const auto* a : {&a1, &a2}) {
    EXPECT_EQ(a->endpoint_branch, (std::array<int, 2>{1, 2}));
    EXPECT_LT(a->endpoint_distance, 1e-6);
    EXPECT_LT(a->sheet_symmetry, 1e-6);
  }
  // arc1 followed by arc2 reversed closes up once around the annulus
  EXPECT_NEAR(a1.delta_s - a2.delta_s, 1.0, 1e-6);
}

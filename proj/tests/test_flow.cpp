#include <gtest/gtest.h>

#include "mfib/local/flow.hpp"

using namespace mfib;
using namespace mfib::local;

TEST(Flow, CirclesLieOnLevelSet) {
  auto [c1, c2] = attach_circles(0.5, 64);
  for (const auto* c : {&c1, &c2})
    for (const auto& p : c->samples) EXPECT_LT(std::fabs(omega(to_vec(p)) + 0.5), 1e-14);
  EXPECT_THROW(attach_circles(0.0), InvalidArgument);
  EXPECT_THROW(attach_circles(1.0), InvalidArgument);
}

TEST(Flow, FieldRejectsOffLevelPoints) {
  NumericConfig cfg;
  EXPECT_THROW(flow_field({Chart::A, 0.0, 0.0, {0.3, 0.0}}, cfg), InvalidArgument);
  EXPECT_THROW(flow_field({Chart::M, 0.5, 0.0, {}}, cfg), InvalidArgument);
}

TEST(Flow, IsotopyInvariants) {
  NumericConfig cfg;
  auto [c1, c2] = attach_circles(0.5, 48);
  for (const auto* c : {&c1, &c2}) {
    FlowReport rep;
    isotopy_flow(*c, 1.0, cfg, &rep);
    EXPECT_LT(rep.max_decay_error, 1e-6);
    EXPECT_LT(rep.max_omega_drift, 1e-6);
    EXPECT_LT(rep.max_level_error, 1e-6);
    EXPECT_LT(rep.max_v_omega, 1e-6);
    EXPECT_LT(rep.max_v_eta_error, 1e-6);
    EXPECT_LT(rep.max_real_drift, 1e-6);
  }
}

TEST(Flow, HalfwayCurveHitsSingleLevelPerValue) {
  NumericConfig cfg;
  auto [c1, c2] = attach_circles(0.5, 64);
  auto h = isotopy_flow(c1, 0.5, cfg);
  for (std::size_t i = 0; i < h.samples.size(); ++i)
    EXPECT_NEAR(h.metadata["eta"][i], 0.5 * h.metadata["eta0"][i], 1e-6);
}

TEST(Flow, TangencyAndFraming) {
  NumericConfig cfg;
  auto [c1, c2] = attach_circles(0.5, 1024);
  for (const auto* c : {&c1, &c2}) {
    const auto rep = tangency_framing_check(*c, cfg);
    EXPECT_GT(rep.min_tangent_margin, 1e-3);
    EXPECT_LT(rep.max_identity_error_r, 1e-12);
    EXPECT_LT(rep.max_identity_error_y, 1e-12);
    EXPECT_EQ(rep.relative_winding, 0);
    EXPECT_NEAR(rep.winding_raw, 0.0, 1e-6);
  }
}

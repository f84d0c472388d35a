#include <gtest/gtest.h>

#include <cmath>

#include "lsvc/bd_rate.hpp"
#include "lsvc/error.hpp"

namespace lsvc {
namespace {

RDCurve curve(std::vector<std::pair<double, double>> pts, MetricKind m = MetricKind::kPsnr) {
  RDCurve c{m, {}};
  for (auto [r, q] : pts) c.points.push_back({r, q});
  return c;
}

RDCurve scaled(const RDCurve& c, double factor) {
  RDCurve out = c;
  for (auto& p : out.points) p.rate *= factor;
  return out;
}

const RDCurve kAnchor = curve({{0.1, 30.0}, {0.2, 33.5}, {0.4, 36.0}, {0.8, 40.0}, {1.6, 41.0}});

TEST(BdRate, IdenticalCurvesGiveZero) { EXPECT_EQ(bd_rate(kAnchor, kAnchor).percent, 0.0); }

TEST(BdRate, ConstantRateFactors) {
  EXPECT_NEAR(bd_rate(kAnchor, scaled(kAnchor, 0.5)).percent, -50.0, 1e-9);
  EXPECT_NEAR(bd_rate(kAnchor, scaled(kAnchor, 2.0)).percent, 100.0, 1e-9);
}

TEST(BdRate, SignFlipsWithRoles) {
  const RDCurve shifted = curve({{0.12, 30.5}, {0.22, 33.0}, {0.5, 36.5}, {0.9, 39.5}, {1.7, 41.2}});
  const double ab = bd_rate(kAnchor, shifted).percent;
  const double ba = bd_rate(shifted, kAnchor).percent;
  EXPECT_NE(ab, 0.0);
  EXPECT_EQ(std::signbit(ab), !std::signbit(ba));
}

TEST(BdRate, RejectsNonMonotonicAndDisjoint) {
  const RDCurve bumpy = curve({{0.1, 60}, {0.2, 62}, {0.4, 61}, {0.8, 63}});
  const auto d = validate_curve(bumpy);
  EXPECT_FALSE(d.monotonic);
  EXPECT_THROW(bd_rate(bumpy, kAnchor), DataError);
  const RDCurve a = curve({{0.1, 0.30}, {0.2, 0.33}, {0.3, 0.36}, {0.4, 0.40}}, MetricKind::kMap);
  const RDCurve b = curve({{0.1, 0.50}, {0.2, 0.53}, {0.3, 0.56}, {0.4, 0.60}}, MetricKind::kMap);
  EXPECT_TRUE(overlap(a, b).empty());
  EXPECT_THROW(bd_rate(a, b), DataError);
  EXPECT_THROW(bd_rate(kAnchor, curve({{0.1, 30}, {0.2, 31}, {0.3, 32}, {0.4, 33}}, MetricKind::kMap)), DataError);
}

TEST(ValidateCurve, Flags) {
  const auto good = validate_curve(curve({{0.1, 30}, {0.2, 33}, {0.4, 35}, {0.8, 36}}));
  EXPECT_TRUE(good.monotonic);
  EXPECT_TRUE(good.concave_in_log_rate);
  const auto convex = validate_curve(curve({{0.1, 30}, {0.2, 30.5}, {0.4, 32}, {0.8, 36}}));
  EXPECT_TRUE(convex.monotonic);
  EXPECT_FALSE(convex.concave_in_log_rate);
  // Unsorted input is sorted by rate first.
  EXPECT_TRUE(validate_curve(curve({{0.4, 35}, {0.1, 30}, {0.8, 36}, {0.2, 33}})).monotonic);
  EXPECT_THROW(validate_curve(curve({{0.1, 30}, {0.2, 31}, {0.3, 32}})), DataError);
  EXPECT_THROW(validate_curve(curve({{0.1, 30}, {0.1, 31}, {0.3, 32}, {0.4, 33}})), DataError);
  EXPECT_THROW(validate_curve(curve({{0.0, 30}, {0.1, 31}, {0.3, 32}, {0.4, 33}})), DataError);
}

TEST(ValidateCurve, InfinitePsnrIsDropped) {
  const RDCurve c = curve({{0.1, 30}, {0.2, 33}, {0.4, 35}, {0.8, 36}, {3.0, INFINITY}});
  EXPECT_EQ(normalized(c).points.size(), 4u);
}

// Values from scipy.interpolate.PchipInterpolator on the same knots.
TEST(MonotoneCubic, MatchesReferenceImplementation) {
  const MonotoneCubic p({30.0, 33.5, 36.0, 40.0, 41.0}, {-1.2, -0.7, -0.45, 0.1, 0.42});
  const std::vector<double> slopes{0.16785714285714284, 0.11650485436893203, 0.11439999999999997,
                                   0.20902612826603326, 0.35649999999999993};
  for (std::size_t i = 0; i < slopes.size(); ++i) EXPECT_NEAR(p.slopes()[i], slopes[i], 1e-12);
  EXPECT_NEAR(p(30.0), -1.2, 1e-12);
  EXPECT_NEAR(p(31.7), -0.934711460839537, 1e-12);
  EXPECT_NEAR(p(34.9), -0.5604939482718447, 1e-12);
  EXPECT_NEAR(p(38.2), -0.1967370268408547, 1e-12);
  EXPECT_NEAR(p(40.5), 0.24156576603325414, 1e-12);
  EXPECT_NEAR(p(41.0), 0.42, 1e-12);
  EXPECT_NEAR(p.integrate(31.0, 40.7), -4.278854609631528, 1e-12);
}

TEST(MonotoneCubic, FlatSegmentStaysFlat) {
  const MonotoneCubic p({0, 1, 2, 3}, {0, 1, 1, 2});
  EXPECT_NEAR(p(1.5), 1.0, 1e-12);
  EXPECT_NEAR(p.integrate(0, 3), 3.0, 1e-12);
}

}  // namespace
}  // namespace lsvc

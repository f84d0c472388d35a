#include <gtest/gtest.h>

#include <random>

#include "lsvc/break_even.hpp"
#include "lsvc/dpi.hpp"
#include "lsvc/error.hpp"

namespace lsvc {
namespace {

// Average BD pairs and break-even points reported for the scalable system.
TEST(BreakEven, PublishedTable) {
  EXPECT_NEAR(break_even({-0.1345, 0.0905}), 0.5978, 1e-4);
  EXPECT_NEAR(break_even({-0.1889, 0.4131}), 0.3138, 1e-4);
  EXPECT_DOUBLE_EQ(break_even({-0.1345, -0.1871}), 1.0);
  EXPECT_NEAR(break_even({-0.1889, 0.0195}), 0.9064, 1e-4);
}

TEST(BreakEven, ClippingAndErrors) {
  EXPECT_DOUBLE_EQ(break_even({0.05, 0.2}), 0.0);
  EXPECT_DOUBLE_EQ(break_even({0.0, 0.2}), 0.0);
  EXPECT_DOUBLE_EQ(break_even({-0.3, 0.0}), 1.0);
  EXPECT_THROW(break_even({-1.0, 0.1}), DataError);
  EXPECT_THROW(break_even({-0.1, -1.5}), DataError);
}

TEST(BreakEven, DecreasingInHumanRate) {
  double last = 1.0;
  for (double h = 0.01; h < 2.0; h += 0.01) {
    const double t = break_even({-0.2, h});
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
    EXPECT_LT(t, last);
    last = t;
  }
}

StochasticMatrix identity(int n) {
  StochasticMatrix m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  return m;
}

TEST(Dpi, IdentityLastStageIsEquality) {
  std::mt19937_64 rng(1);
  MarkovChain c = random_chain(rng, 6);
  c.t_given_xhat = identity(static_cast<int>(c.xhat_given_y.front().size()));
  const auto r = dpi_check(c);
  EXPECT_NEAR(r.i_y_xhat, r.i_y_t, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(Dpi, ConstantOutputHasNoInformation) {
  std::mt19937_64 rng(2);
  MarkovChain c = random_chain(rng, 5);
  c.t_given_xhat = StochasticMatrix(c.xhat_given_y.front().size(), std::vector<double>{1.0});
  const auto r = dpi_check(c);
  EXPECT_NEAR(r.i_y_t, 0.0, 1e-15);
  EXPECT_TRUE(r.holds);
}

TEST(Dpi, DeterministicCopyCarriesEntropy) {
  // Y uniform over 4 states copied exactly: I(Y; X^) = 2 bits.
  MarkovChain c{{0.25, 0.25, 0.25, 0.25}, identity(4), identity(4), identity(4)};
  const auto r = dpi_check(c);
  EXPECT_NEAR(r.i_y_xhat, 2.0, 1e-12);
  EXPECT_NEAR(r.i_y_t, 2.0, 1e-12);
}

TEST(Dpi, RandomChainsRespectTheInequality) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) ASSERT_TRUE(dpi_check(random_chain(rng)).holds);
}

TEST(Dpi, RejectsMalformedMatrices) {
  MarkovChain c{{0.5, 0.5}, identity(2), identity(2), identity(2)};
  c.y_given_x[0][0] = 0.9;
  EXPECT_THROW(dpi_check(c), DataError);
  c = {{0.5, 0.5}, identity(2), identity(2), identity(2)};
  c.xhat_given_y.pop_back();
  EXPECT_THROW(dpi_check(c), DataError);
  c = {std::vector<double>(9, 1.0 / 9), identity(9), identity(9), identity(9)};
  EXPECT_THROW(dpi_check(c), DataError);
  c = {{0.5, 0.5}, identity(2), identity(2), identity(2)};
  c.t_given_xhat[1] = {-0.5, 1.5};
  EXPECT_THROW(dpi_check(c), DataError);
}

}  // namespace
}  // namespace lsvc

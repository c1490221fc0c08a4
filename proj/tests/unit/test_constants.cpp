#include <gtest/gtest.h>

#include <cmath>

#include "opineq/constants.hpp"

using namespace opineq;

namespace {

// K(h,p) is the extreme ratio of the chord of t^p over [1,h] to t^p itself:
// a max for p outside [0,1], a min inside. Brute force over a fine grid.
double kantorovich_by_search(double h, double p) {
  const bool inside = p > 0 && p < 1;
  double best = inside ? 1e300 : 0.0;
  const int steps = 200000;
  for (int i = 0; i <= steps; ++i) {
    const double t = std::pow(h, static_cast<double>(i) / steps);  // log-spaced so large h stays resolved
    const double chord = ((h - t) + (t - 1.0) * std::pow(h, p)) / (h - 1.0);
    const double ratio = chord / std::pow(t, p);
    best = inside ? std::min(best, ratio) : std::max(best, ratio);
  }
  return best;
}

// S(h) is the largest arithmetic/geometric ratio of a two-point law on {1, h}.
double specht_by_search(double h) {
  double best = 0.0;
  const int steps = 200000;
  for (int i = 0; i <= steps; ++i) {
    const double w = static_cast<double>(i) / steps;
    best = std::max(best, ((1 - w) + w * h) / std::pow(h, w));
  }
  return best;
}

}  // namespace

TEST(Kantorovich, SpotValue) { EXPECT_NEAR(kantorovich(4.0, 2.0), 1.5625, 1e-12); }

TEST(Kantorovich, ClassicalCase) {
  // p = -1 (and p = 2) gives (1+h)^2 / (4h).
  for (double h : {1.5, 3.0, 10.0}) {
    EXPECT_NEAR(kantorovich(h, -1.0), (1 + h) * (1 + h) / (4 * h), 1e-12);
    EXPECT_NEAR(kantorovich(h, 2.0), (1 + h) * (1 + h) / (4 * h), 1e-12);
  }
}

TEST(Kantorovich, MatchesBruteForceExtremum) {
  for (double h : {1.5, 2.0, 5.0, 20.0})
    for (double p : {-2.0, -0.5, 0.3, 0.7, 1.5, 3.0}) {
      const double want = kantorovich_by_search(h, p);
      EXPECT_NEAR(kantorovich(h, p), want, 1e-8 * want) << "h=" << h << " p=" << p;
    }
}

TEST(Kantorovich, SpecialValuesAndSymmetry) {
  for (double h : {1.5, 7.0}) {
    EXPECT_DOUBLE_EQ(kantorovich(h, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(kantorovich(h, 1.0), 1.0);
    for (double p : {-1.5, 0.4, 2.5}) {
      EXPECT_NEAR(kantorovich(h, p), kantorovich(1 / h, p), 1e-12 * kantorovich(h, p));
      EXPECT_NEAR(kantorovich(h, p), kantorovich(h, 1 - p), 1e-12 * kantorovich(h, p));
    }
  }
  EXPECT_DOUBLE_EQ(kantorovich(1.0, 2.5), 1.0);
}

TEST(Kantorovich, StableForLargeArguments) {
  const double K = kantorovich(1e6, 4.0);
  EXPECT_TRUE(std::isfinite(K));
  EXPECT_GT(K, 1.0);
  EXPECT_NEAR(std::log(K), std::log(kantorovich_by_search(1e6, 4.0)), 1e-5);
}

TEST(Specht, MatchesBruteForce) {
  for (double h : {1.1, 2.0, 4.0, 50.0}) EXPECT_NEAR(specht(h), specht_by_search(h), 1e-9) << h;
  EXPECT_DOUBLE_EQ(specht(1.0), 1.0);
  EXPECT_NEAR(specht(1 + 1e-9), 1.0, 1e-15);
  EXPECT_NEAR(specht(3.0), specht(1.0 / 3.0), 1e-14);
}

TEST(Specht, IsTheLimitOfKantorovich) {
  for (double h : {1.5, 2.0, 5.0})
    for (double p : {0.5, 1.0, 2.0})
      EXPECT_NEAR(kantorovich_specht_limit(h, p, 1e-5), specht(std::pow(h, p)), 1e-4);
  EXPECT_THROW(kantorovich_specht_limit(2.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Kantorovich, RejectsBadInput) {
  EXPECT_THROW(kantorovich(-1.0, 2.0), std::invalid_argument);
  EXPECT_THROW(kantorovich(0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(specht(std::nan("")), std::invalid_argument);
}

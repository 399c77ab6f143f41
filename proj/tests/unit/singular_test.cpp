#include <boost/math/tools/roots.hpp>
#include <gtest/gtest.h>

#include <cmath>

#include "tailpath/errors.hpp"
#include "tailpath/singular.hpp"

namespace tailpath {
namespace {

TEST(Singular, RootMatchesBoostBisection) {
  for (auto [alpha, beta] : {std::pair{0.35, 0.7}, {0.9, 0.2}, {0.5, 0.5}}) {
    for (double u : {0.9, 0.3, 0.01, 1e-4}) {
      auto h = [&](double x) { return singular_equation(alpha, beta, u, x); };
      boost::math::tools::eps_tolerance<double> tol(50);
      const auto [lo, hi] = boost::math::tools::bisect(h, u * u * (1.0 + 1e-14), 1.0 - 1e-14, tol);
      const SingularCurvePoint p = singular_root(alpha, beta, u);
      EXPECT_NEAR(p.x_star, 0.5 * (lo + hi), 1e-13 * p.x_star) << alpha << " " << beta << " " << u;
      EXPECT_DOUBLE_EQ(p.ratio, p.x_star / u);
      EXPECT_LE(std::fabs(p.residual), 1e-12);
    }
  }
}

TEST(Singular, EqualExponentsGiveDiagonal) {
  // alpha = beta forces x = u^2/x
  for (double u : {0.8, 0.05, 1e-3}) EXPECT_NEAR(singular_root(0.4, 0.4, u).x_star, u, 1e-12 * u);
}

TEST(Singular, UnitU) {
  const SingularCurvePoint p = singular_root(0.35, 0.7, 1.0);
  EXPECT_EQ(p.x_star, 1.0);
  EXPECT_EQ(p.v_star(), 1.0);
}

TEST(Singular, RatioApproachesSqrtBetaOverAlpha) {
  const SingularCurvePoint p = singular_root(0.35, 0.7, 1e-6);
  EXPECT_NEAR(p.ratio, std::sqrt(2.0), 1e-5);
}

TEST(Singular, GRatio) {
  EXPECT_NEAR(g_ratio(0.7, 1e-300), 0.7, 1e-15);
  EXPECT_NEAR(g_ratio(0.7, 0.5), (1.0 - std::pow(0.5, 0.7)) / 0.5, 1e-15);
  EXPECT_NEAR(g_ratio(1.0, 0.3), 1.0, 1e-15);
}

TEST(Cardano, RootsAndOrdering) {
  for (double u : {0.99, 0.5, 0.1, 1e-3, 1e-6}) {
    const auto r = cardano_roots(u);
    EXPECT_LT(r[1], 0.0);
    EXPECT_GT(r[2], 0.0);
    EXPECT_LT(r[2], r[0]);
    EXPECT_LE(r[0], 1.0);
    // Vieta: sum of roots 0, product -u^4
    EXPECT_NEAR(r[0] + r[1] + r[2], 0.0, 1e-15 * u);
    EXPECT_NEAR(r[0] * r[1] * r[2] / -std::pow(u, 4), 1.0, 1e-13);
    for (double x : r) EXPECT_LE(std::fabs(cardano_polynomial(u, x)), 1e-13 * u * u * u);
    EXPECT_NEAR(r[0], singular_root(0.35, 0.7, u).x_star, 1e-12);
  }
}

TEST(Cardano, SmallRootRelativeAccuracy) {
  const double u = 1e-6;
  EXPECT_NEAR(cardano_roots(u)[2] / (u * u), 0.5, 1e-6);
}

TEST(Asymptotic, ReportAgainstSyntheticPath) {
  const Schedule s({0.1, 0.01, 0.001});
  PathResult path;
  for (double u : s) {
    PathPoint p;
    p.u = u;
    p.phi_star = singular_root(0.35, 0.7, u).x_star;
    p.ratio_b = p.phi_star / u;
    path.points.push_back(p);
  }
  const AsymptoticReport rep = asymptotic_report(0.35, 0.7, s, path);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_TRUE(rep.converged);
  for (const AsymptoticRow& row : rep.rows) {
    EXPECT_EQ(row.gap, 0.0);
    EXPECT_DOUBLE_EQ(row.target, std::sqrt(2.0));
  }
  path.points.pop_back();
  EXPECT_THROW(asymptotic_report(0.35, 0.7, s, path), DomainError);
}

TEST(Singular, DomainErrors) {
  EXPECT_THROW(singular_root(0.0, 0.7, 0.5), DomainError);
  EXPECT_THROW(singular_root(0.35, 1.5, 0.5), DomainError);
  EXPECT_THROW(singular_root(0.35, 0.7, 0.0), DomainError);
  EXPECT_THROW(cardano_roots(1.5), DomainError);
}

}  // namespace
}  // namespace tailpath

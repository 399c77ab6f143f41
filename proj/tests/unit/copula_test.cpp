#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tailpath/copula.hpp"
#include "tailpath/errors.hpp"

namespace tailpath {
namespace {

// Integral over the first margin s in (0, u) of the conditional CDF of the
// second t variable, with Boost special functions and tanh-sinh quadrature.
double t_copula_oracle(double nu, double rho, double u, double v) {
  boost::math::students_t_distribution<double> tn(nu);
  boost::math::students_t_distribution<double> tn1(nu + 1.0);
  const double qv = boost::math::quantile(tn, v);
  auto integrand = [&](double s) {
    const double z = boost::math::quantile(tn, s);
    const double arg = (qv - rho * z) * std::sqrt((nu + 1.0) / (nu + z * z)) / std::sqrt(1.0 - rho * rho);
    return boost::math::cdf(tn1, arg);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(integrand, 0.0, u, 1e-12);
}

TEST(Cdf, ClosedFormExamples) {
  EXPECT_DOUBLE_EQ(cdf(CopulaModel::independence(), 0.3, 0.5), 0.15);
  const CopulaModel mo = CopulaModel::marshall_olkin(0.35, 0.7);
  EXPECT_NEAR(cdf(mo, 0.5, 0.5), std::min(std::pow(0.5, 0.65) * 0.5, 0.5 * std::pow(0.5, 0.3)), 1e-15);
  EXPECT_NEAR(cdf(CopulaModel::fgm(-1.0), 0.2, 0.2), 0.0144, 1e-15);
  EXPECT_DOUBLE_EQ(cdf(CopulaModel::comonotone(), 0.3, 0.7), 0.3);
}

TEST(Cdf, SurvivalIdentity) {
  const CopulaModel mo = CopulaModel::marshall_olkin(0.35, 0.7);
  const CopulaModel smo = survival(mo);
  EXPECT_NEAR(cdf(smo, 0.9, 0.9), -1.0 + 1.8 + cdf(mo, 0.1, 0.1), 1e-15);
  for (double u : {0.01, 0.2, 0.5, 0.77}) {
    for (double v : {0.03, 0.4, 0.9}) {
      EXPECT_NEAR(cdf(survival(CopulaModel::independence()), u, v), u * v, 1e-15);
      EXPECT_NEAR(cdf(smo, u, v), u + v - 1.0 + cdf(mo, 1.0 - u, 1.0 - v), 1e-15);
    }
  }
}

TEST(Cdf, SurvivalIsAnInvolution) {
  const CopulaModel ag = CopulaModel::asym_gumbel(0.35, 0.7, 2.0);
  const CopulaModel twice = survival(survival(ag));
  EXPECT_TRUE(twice.is<family::AsymGumbel>());
  for (double u : {0.1, 0.5, 0.9}) {
    for (double v : {0.2, 0.6}) EXPECT_EQ(cdf(twice, u, v), cdf(ag, u, v));
  }
  // the explicit double wrapper evaluates through two identity steps
  const CopulaModel nested = CopulaModel::survival_of(CopulaModel::survival_of(ag));
  for (double u : {0.1, 0.5, 0.9}) {
    for (double v : {0.2, 0.6}) EXPECT_NEAR(cdf(nested, u, v), cdf(ag, u, v), 1e-15);
  }
}

TEST(Cdf, SmallArgumentSurvivalIsAccurate) {
  // survival MO near the origin behaves like min(alpha u, beta v) for u = v
  const CopulaModel smo = survival(CopulaModel::marshall_olkin(0.35, 0.7));
  const double t = 1e-9;
  EXPECT_NEAR(cdf(smo, t, t) / t, 0.35, 1e-6);
  const CopulaModel sag = survival(CopulaModel::asym_gumbel(0.35, 0.7, 2.0));
  EXPECT_GT(cdf(sag, t, t), 0.0);
}

TEST(Cdf, AsymGumbelTendsToMarshallOlkin) {
  // the asymmetric logistic model with theta -> infinity is MO(alpha, beta)
  const CopulaModel ag = CopulaModel::asym_gumbel(0.35, 0.7, 400.0);
  const CopulaModel mo = CopulaModel::marshall_olkin(0.35, 0.7);
  for (double u = 0.05; u < 1.0; u += 0.1) {
    for (double v = 0.05; v < 1.0; v += 0.1) EXPECT_NEAR(cdf(ag, u, v), cdf(mo, u, v), 5e-3);
  }
}

TEST(Cdf, BoundaryValues) {
  const CopulaModel models[] = {CopulaModel::fgm(0.4), CopulaModel::marshall_olkin(0.2, 0.9),
                                CopulaModel::asym_gumbel(0.35, 0.7, 2.0), CopulaModel::student_t(3.0, 0.4),
                                survival(CopulaModel::asym_gumbel(0.5, 0.6, 3.0))};
  for (const CopulaModel& m : models) {
    for (double u : {0.0, 0.25, 0.8, 1.0}) {
      EXPECT_EQ(cdf(m, u, 0.0), 0.0) << m.describe();
      EXPECT_EQ(cdf(m, 0.0, u), 0.0) << m.describe();
      EXPECT_DOUBLE_EQ(cdf(m, u, 1.0), u) << m.describe();
      EXPECT_DOUBLE_EQ(cdf(m, 1.0, u), u) << m.describe();
    }
  }
}

TEST(TCopula, MatchesIndependentQuadrature) {
  for (auto [nu, rho] : {std::pair{4.0, 0.5}, {2.0, -0.3}, {10.0, 0.8}, {1.0, 0.0}}) {
    for (double u : {0.001, 0.05, 0.3, 0.5, 0.9}) {
      for (double v : {0.002, 0.2, 0.5, 0.95}) {
        EXPECT_NEAR(t_copula_cdf(nu, rho, u, v), t_copula_oracle(nu, rho, u, v), 1e-9)
            << nu << " " << rho << " " << u << " " << v;
      }
    }
  }
}

TEST(TCopula, OrthantProbability) {
  for (double rho : {-0.7, -0.3, 0.0, 0.5, 0.9}) {
    for (double nu : {1.0, 4.0, 25.0}) {
      EXPECT_NEAR(t_copula_cdf(nu, rho, 0.5, 0.5), 0.25 + std::asin(rho) / (2.0 * std::numbers::pi), 1e-10);
    }
  }
}

TEST(TCopula, ZeroCorrelationAtMedian) {
  // With rho = 0 the t copula is not the independence copula, but the
  // median of one margin splits the other exactly.
  for (double u : {0.01, 0.2, 0.7}) {
    EXPECT_NEAR(t_copula_cdf(4.0, 0.0, u, 0.5), 0.5 * u, 1e-10);
    EXPECT_NEAR(t_copula_cdf(4.0, 0.0, 0.5, u), 0.5 * u, 1e-10);
  }
  EXPECT_GT(std::fabs(t_copula_cdf(4.0, 0.0, 0.1, 0.1) - 0.01), 1e-3);
}

TEST(TCopula, MonteCarlo) {
  const double nu = 4.0;
  const double rho = 0.5;
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  std::chi_squared_distribution<double> chi(nu);
  boost::math::students_t_distribution<double> tn(nu);
  const double q = boost::math::quantile(tn, 0.3);
  const int n = 1000000;
  int hits_half = 0;
  int hits_mixed = 0;
  for (int i = 0; i < n; ++i) {
    const double z1 = normal(rng);
    const double z2 = rho * z1 + std::sqrt(1.0 - rho * rho) * normal(rng);
    const double s = std::sqrt(chi(rng) / nu);
    const double x1 = z1 / s;
    const double x2 = z2 / s;
    hits_half += (x1 <= 0.0 && x2 <= 0.0);
    hits_mixed += (x1 <= q && x2 <= 0.0);
  }
  auto check = [&](int hits, double model) {
    const double p = double(hits) / n;
    EXPECT_NEAR(p, model, 3.0 * std::sqrt(model * (1.0 - model) / n));
  };
  check(hits_half, t_copula_cdf(nu, rho, 0.5, 0.5));
  check(hits_mixed, t_copula_cdf(nu, rho, 0.3, 0.5));
}

TEST(TCopula, ExchangeableAndRadiallySymmetric) {
  const CopulaModel t = CopulaModel::student_t(4.0, 0.5);
  const CopulaModel st = survival(t);
  for (double u = 0.05; u < 1.0; u += 0.15) {
    for (double v = 0.05; v < 1.0; v += 0.15) {
      EXPECT_NEAR(t_copula_cdf(4.0, 0.5, u, v), t_copula_cdf(4.0, 0.5, v, u), 1e-12);
      EXPECT_NEAR(cdf(st, u, v), cdf(t, u, v), 1e-10);
    }
  }
}

TEST(TCopula, BoundaryAndDomain) {
  EXPECT_EQ(t_copula_cdf(4.0, 0.5, 0.0, 0.5), 0.0);
  EXPECT_EQ(t_copula_cdf(4.0, 0.5, 1.0, 0.3), 0.3);
  EXPECT_EQ(t_copula_cdf(4.0, 0.5, 0.7, 1.0), 0.7);
  EXPECT_THROW(t_copula_cdf(4.0, 0.5, -0.1, 0.5), DomainError);
  EXPECT_THROW(t_copula_cdf(4.0, 0.5, 0.2, 1.5), DomainError);
  EXPECT_THROW(t_copula_cdf(4.0, 1.0, 0.2, 0.5), DomainError);
}

TEST(Model, ParameterDomains) {
  EXPECT_THROW(CopulaModel::fgm(1.5), DomainError);
  EXPECT_NO_THROW(CopulaModel::fgm(-1.0));
  EXPECT_THROW(CopulaModel::marshall_olkin(0.0, 0.5), DomainError);
  EXPECT_THROW(CopulaModel::marshall_olkin(0.5, 1.2), DomainError);
  EXPECT_THROW(CopulaModel::asym_gumbel(0.5, 0.5, 1.0), DomainError);
  EXPECT_THROW(CopulaModel::student_t(0.0, 0.5), DomainError);
  EXPECT_THROW(CopulaModel::student_t(3.0, -1.0), DomainError);
  EXPECT_THROW(cdf(CopulaModel::independence(), -0.1, 0.5), DomainError);
  EXPECT_THROW(cdf(CopulaModel::independence(), 0.5, 1.1), DomainError);
}

TEST(Model, DescribeAndExchangeable) {
  EXPECT_EQ(survival(CopulaModel::marshall_olkin(0.35, 0.7)).describe(), "surv-mo(alpha=0.35,beta=0.7)");
  EXPECT_EQ(CopulaModel::student_t(4, 0.5).describe(), "t(nu=4,rho=0.5)");
  EXPECT_FALSE(CopulaModel::marshall_olkin(0.35, 0.7).exchangeable());
  EXPECT_TRUE(CopulaModel::marshall_olkin(0.5, 0.5).exchangeable());
  EXPECT_TRUE(survival(CopulaModel::student_t(4, 0.5)).exchangeable());
}

TEST(Pickands, AsymmetricLogistic) {
  const PickandsFn a = PickandsFn::asymmetric_logistic(0.35, 0.7, 2.0);
  EXPECT_DOUBLE_EQ(a(0.0), 1.0);
  EXPECT_DOUBLE_EQ(a(1.0), 1.0);
  const double half = 0.5 * 0.65 + 0.5 * 0.3 + std::hypot(0.175, 0.35);
  EXPECT_NEAR(a(0.5), half, 1e-15);
  for (double x : {0.1, 1.0, 3.0}) {
    for (double y : {0.2, 1.0, 5.0}) {
      EXPECT_NEAR(a.tail_copula(x, y), x + y - a.stable_tail(x, y), 1e-14);
      EXPECT_NEAR(a.stable_tail(x, y), (x + y) * a(x / (x + y)), 1e-14);
    }
  }
  EXPECT_DOUBLE_EQ(PickandsFn::independence()(0.3), 1.0);
  EXPECT_DOUBLE_EQ(PickandsFn::comonotone()(0.3), 0.7);
  EXPECT_THROW(PickandsFn::asymmetric_logistic(0.35, 0.7, 0.5), DomainError);
}

TEST(Pickands, Convex) {
  const PickandsFn a = PickandsFn::asymmetric_logistic(0.2, 0.9, 1.5);
  for (int k = 1; k < 1000; ++k) {
    const double w = k / 1000.0;
    EXPECT_LE(a(w), 0.5 * (a(w - 1e-3) + a(w + 1e-3)) + 1e-15);
  }
}

TEST(ConditionalCdf, MatchesAnalyticDerivative) {
  // d/du uv = v; d/du FGM = v (1 + theta (1-v)(1-2u))
  for (double u : {0.0, 0.3, 0.8, 1.0}) {
    for (double v : {0.1, 0.6}) {
      EXPECT_NEAR(conditional_cdf(CopulaModel::independence(), u, v), v, 1e-9);
      EXPECT_NEAR(conditional_cdf(CopulaModel::fgm(0.7), u, v), v * (1.0 + 0.7 * (1.0 - v) * (1.0 - 2.0 * u)),
                  1e-6);
    }
  }
}

}  // namespace
}  // namespace tailpath

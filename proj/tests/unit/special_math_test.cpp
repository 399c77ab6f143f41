#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tailpath/errors.hpp"
#include "tailpath/special_math.hpp"

namespace tailpath {
namespace {

const double kNus[] = {0.5, 1.0, 2.0, 3.5, 4.0, 5.0, 10.0, 30.0, 200.0};

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

TEST(StudentT, CdfMatchesBoost) {
  for (double nu : kNus) {
    boost::math::students_t_distribution<double> ref(nu);
    for (double x = -60.0; x <= 60.0; x += 0.37) {
      const double want = boost::math::cdf(ref, x);
      EXPECT_LT(rel_err(student_t_cdf(x, nu), want), 1e-12) << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(StudentT, DeepTailRelativeAccuracy) {
  for (double nu : kNus) {
    boost::math::students_t_distribution<double> ref(nu);
    for (double x : {-1e3, -1e5, -1e8}) {
      EXPECT_LT(rel_err(student_t_cdf(x, nu), boost::math::cdf(ref, x)), 1e-11) << nu << " " << x;
    }
  }
}

TEST(StudentT, PdfMatchesBoost) {
  for (double nu : kNus) {
    boost::math::students_t_distribution<double> ref(nu);
    for (double x = -20.0; x <= 20.0; x += 0.41) {
      EXPECT_LT(rel_err(student_t_pdf(x, nu), boost::math::pdf(ref, x)), 1e-13);
      EXPECT_NEAR(log_student_t_pdf(x, nu), std::log(boost::math::pdf(ref, x)), 1e-12);
    }
  }
}

TEST(StudentT, SymmetryAndMonotonicity) {
  for (double nu : kNus) {
    double prev = 0.0;
    for (double x = -30.0; x <= 30.0; x += 0.05) {
      const double c = student_t_cdf(x, nu);
      EXPECT_NEAR(c + student_t_cdf(-x, nu), 1.0, 1e-12);
      EXPECT_GE(c, prev);
      // the upper tail rounds to 1 in double precision, the lower tail does not
      EXPECT_GT(c, 0.0);
      EXPECT_LE(c, 1.0);
      prev = c;
    }
    EXPECT_EQ(student_t_cdf(0.0, nu), 0.5);
  }
}

TEST(StudentT, QuantileRoundTripAndBoost) {
  for (double nu : kNus) {
    boost::math::students_t_distribution<double> ref(nu);
    for (double p : {1e-12, 1e-6, 0.001, 0.1, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-9}) {
      const double q = student_t_quantile(p, nu);
      EXPECT_LT(rel_err(student_t_cdf(q, nu), p), 1e-11) << nu << " " << p;
      EXPECT_LT(std::fabs(q - boost::math::quantile(ref, p)), 1e-9 * std::max(1.0, std::fabs(q)));
    }
  }
}

TEST(StudentT, CachedClassAgreesWithFreeFunctions) {
  const StudentT t(4.5);
  for (double x : {-3.0, 0.0, 0.4, 12.0}) {
    EXPECT_DOUBLE_EQ(t.cdf(x), student_t_cdf(x, 4.5));
    EXPECT_DOUBLE_EQ(t.pdf(x), student_t_pdf(x, 4.5));
  }
  EXPECT_DOUBLE_EQ(t.quantile(0.9), student_t_quantile(0.9, 4.5));
}

TEST(StudentT, DomainErrors) {
  EXPECT_THROW(student_t_cdf(0.0, 0.0), DomainError);
  EXPECT_THROW(student_t_cdf(0.0, -1.0), DomainError);
  EXPECT_THROW(student_t_cdf(std::nan(""), 2.0), DomainError);
  EXPECT_THROW(student_t_quantile(0.0, 2.0), DomainError);
  EXPECT_THROW(student_t_quantile(1.0, 2.0), DomainError);
}

TEST(IncompleteBeta, MatchesBoost) {
  for (double a : {0.3, 1.0, 2.5, 17.0}) {
    for (double b : {0.5, 1.0, 4.0, 40.0}) {
      for (double x : {0.0, 1e-8, 0.01, 0.3, 0.5, 0.9, 0.999999, 1.0}) {
        const double want = boost::math::ibeta(a, b, x);
        EXPECT_NEAR(incomplete_beta(a, b, x), want, 1e-14 + 1e-12 * want) << a << " " << b << " " << x;
      }
    }
  }
}

TEST(Quadrature, KnownIntegrals) {
  EXPECT_NEAR(integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY), 1.0, 1e-12);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY),
              std::sqrt(std::numbers::pi), 1e-12);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::exp(x); }, -INFINITY, 0.0), 1.0, 1e-12);
  // integrable endpoint singularity
  EXPECT_NEAR(integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0), 2.0, 1e-8);
  // reversed limits
  EXPECT_NEAR(integrate_adaptive([](double x) { return x; }, 1.0, 0.0), -0.5, 1e-14);
  EXPECT_EQ(integrate_adaptive([](double x) { return x; }, 2.0, 2.0), 0.0);
}

TEST(Quadrature, Linearity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const double a = coef(rng), b = coef(rng), w = coef(rng), s = coef(rng);
    auto f = [w](double x) { return std::sin(w * x) + x * x; };
    auto g = [s](double x) { return std::exp(-s * s * x) * std::cos(x); };
    const double lhs = integrate_adaptive([&](double x) { return a * f(x) + b * g(x); }, -1.0, 2.0);
    const double rhs = a * integrate_adaptive(f, -1.0, 2.0) + b * integrate_adaptive(g, -1.0, 2.0);
    EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + std::fabs(lhs)));
  }
}

TEST(Quadrature, Failures) {
  EXPECT_THROW(integrate_adaptive([](double) { return std::nan(""); }, 0.0, 1.0), DomainError);
  QuadratureSpec tight;
  tight.max_subdivisions = 2;
  tight.abs_tol = 1e-15;
  tight.rel_tol = 0.0;
  EXPECT_THROW(integrate_adaptive([](double x) { return std::sin(200.0 * x * x); }, 0.0, 10.0, tight),
               ConvergenceError);
  QuadratureSpec bad;
  bad.abs_tol = 0.0;
  EXPECT_THROW(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, bad), DomainError);
}

TEST(BrentRoot, FindsRootInsideBracket) {
  EXPECT_NEAR(brent_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-15), std::sqrt(2.0), 1e-15);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    double lo = unit(rng), hi = unit(rng);
    if (lo > hi) std::swap(lo, hi);
    const double r = unit(rng);
    auto f = [r](double x) { return std::tanh(x - r) + 0.1 * (x - r); };
    if (f(lo) * f(hi) > 0) continue;
    const double x = brent_root(f, lo, hi, 1e-13);
    EXPECT_GE(x, lo);
    EXPECT_LE(x, hi);
    EXPECT_NEAR(x, r, 1e-12);
  }
}

TEST(BrentRoot, NoSignChange) {
  EXPECT_THROW(brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), BracketError);
}

TEST(Maximize, KnownMaximum) {
  const OptimResult1D r = maximize_1d([](double x) { return -(x - 0.3) * (x - 0.3); }, -2.0, 2.0);
  EXPECT_NEAR(r.argmax, 0.3, 1e-8);
  EXPECT_NEAR(r.max_value, 0.0, 1e-15);
  // kink maximum
  const OptimResult1D k = maximize_1d([](double x) { return std::min(0.35 * x, 0.7 / x); }, 0.1, 10.0);
  EXPECT_NEAR(k.argmax, std::sqrt(2.0), 1e-9);
}

TEST(Maximize, NeverBelowBestGridSample) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-4.0, 4.0);
  for (int k = 0; k < 100; ++k) {
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    auto f = [=](double x) { return std::sin(a * x) + std::cos(b * x * x) + c * x; };
    const GridScan scan = scan_grid(f, -3.0, 3.0, 64);
    const OptimResult1D r = refine_grid_max(f, scan, 1e-10);
    EXPECT_GE(r.max_value, scan.fx[scan.best]);
    EXPECT_GE(r.argmax, -3.0);
    EXPECT_LE(r.argmax, 3.0);
  }
}

TEST(Maximize, GridTiesGoToSmallerAbscissa) {
  const GridScan scan = scan_grid([](double) { return 1.0; }, 0.0, 1.0, 11);
  EXPECT_EQ(scan.best, 0u);
  EXPECT_EQ(scan.x.front(), 0.0);
  EXPECT_EQ(scan.x.back(), 1.0);
  EXPECT_THROW(scan_grid([](double) { return 1.0; }, 0.0, 1.0, 2), DomainError);
}

TEST(Extrapolation, GeometricSequenceIsExact) {
  std::vector<double> s;
  for (int k = 0; k < 6; ++k) s.push_back(0.25 + 0.1 * std::pow(0.6, k));
  const LimitEstimate e = extrapolate_limit(s);
  EXPECT_TRUE(e.accelerated);
  EXPECT_NEAR(e.value, 0.25, 1e-14);
  EXPECT_GE(e.error, std::fabs(s.back() - s[s.size() - 2]));
}

TEST(Extrapolation, ConstantAndDivergentFallBackToLastTerm) {
  const std::vector<double> flat{1.0, 1.0, 1.0, 1.0};
  EXPECT_FALSE(extrapolate_limit(flat).accelerated);
  EXPECT_EQ(extrapolate_limit(flat).value, 1.0);
  const std::vector<double> growing{1.0, 2.0, 4.0, 8.0};
  EXPECT_FALSE(extrapolate_limit(growing).accelerated);
  EXPECT_EQ(extrapolate_limit(growing).value, 8.0);
  EXPECT_TRUE(std::isinf(extrapolate_limit(std::vector<double>{3.0}).error));
}

}  // namespace
}  // namespace tailpath

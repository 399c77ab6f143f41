#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tailpath/copula.hpp"
#include "tailpath/errors.hpp"

namespace tailpath {
namespace {

// Kendall's tau by sorting on u and counting inversions in v (no ties).
double kendall_tau(std::vector<UniformPair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<double> v(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) v[i] = pairs[i].second;
  std::vector<double> buf(v.size());
  long long inversions = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
          buf[k++] = v[i++];
        } else {
          inversions += static_cast<long long>(mid - i);
          buf[k++] = v[j++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    std::swap(v, buf);
  }
  const double n = static_cast<double>(pairs.size());
  return 1.0 - 4.0 * static_cast<double>(inversions) / (n * (n - 1.0));
}

double empirical_cdf(const std::vector<UniformPair>& pairs, double u, double v) {
  std::size_t hits = 0;
  for (const auto& [a, b] : pairs) hits += (a <= u && b <= v);
  return double(hits) / pairs.size();
}

TEST(Sample, IndependenceKendallTau) {
  const auto pairs = sample(CopulaModel::independence(), 100000, 1);
  EXPECT_NEAR(kendall_tau(pairs), 0.0, 0.01);
}

TEST(Sample, StudentTKendallTau) {
  // tau = 2 arcsin(rho) / pi for elliptical copulas
  const auto pairs = sample(CopulaModel::student_t(4.0, 0.5), 100000, 2);
  EXPECT_NEAR(kendall_tau(pairs), 2.0 * std::asin(0.5) / std::numbers::pi, 0.01);
}

TEST(Sample, MarshallOlkinEmpiricalCdf) {
  const CopulaModel mo = CopulaModel::marshall_olkin(0.35, 0.7);
  const std::size_t n = 100000;
  const auto pairs = sample(mo, n, 3);
  const double p = cdf(mo, 0.5, 0.5);
  EXPECT_NEAR(empirical_cdf(pairs, 0.5, 0.5), p, 3.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST(Sample, MarshallOlkinHasSingularMass) {
  // P(U^alpha = V^beta) = lambda12 / (lambda1 + lambda2 + lambda12) under the shock model
  const double alpha = 0.35, beta = 0.7;
  const auto pairs = sample(CopulaModel::marshall_olkin(alpha, beta), 20000, 4);
  std::size_t on_curve = 0;
  for (const auto& [u, v] : pairs) {
    on_curve += std::fabs(alpha * std::log(u) - beta * std::log(v)) < 1e-9 * std::fabs(alpha * std::log(u));
  }
  const double want = 1.0 / (1.0 / alpha + 1.0 / beta - 1.0);
  const double p = double(on_curve) / pairs.size();
  EXPECT_NEAR(p, want, 4.0 * std::sqrt(want * (1.0 - want) / pairs.size()));
}

TEST(Sample, AsymGumbelByInversion) {
  const CopulaModel ag = CopulaModel::asym_gumbel(0.35, 0.7, 2.0);
  const std::size_t n = 20000;
  const auto pairs = sample(ag, n, 5);
  for (double u : {0.2, 0.5, 0.8}) {
    for (double v : {0.3, 0.7}) {
      const double p = cdf(ag, u, v);
      EXPECT_NEAR(empirical_cdf(pairs, u, v), p, 4.0 * std::sqrt(p * (1.0 - p) / n));
    }
  }
}

TEST(Sample, ComonotoneOnDiagonal) {
  for (const auto& [u, v] : sample(CopulaModel::comonotone(), 1000, 6)) EXPECT_EQ(u, v);
}

TEST(Sample, SurvivalFlipsInner) {
  const CopulaModel mo = CopulaModel::marshall_olkin(0.35, 0.7);
  const auto inner = sample(mo, 100, 7);
  const auto flipped = sample(survival(mo), 100, 7);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    EXPECT_EQ(flipped[i].first, 1.0 - inner[i].first);
    EXPECT_EQ(flipped[i].second, 1.0 - inner[i].second);
  }
}

TEST(Sample, DeterministicAndInUnitSquare) {
  const CopulaModel fgm = CopulaModel::fgm(-0.8);
  const auto a = sample(fgm, 500, 8);
  EXPECT_EQ(a, sample(fgm, 500, 8));
  EXPECT_NE(a, sample(fgm, 500, 9));
  for (const auto& [u, v] : a) {
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_THROW(sample(fgm, 0, 1), DomainError);
}

}  // namespace
}  // namespace tailpath

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tailpath/copula.hpp"
#include "tailpath/errors.hpp"
#include "tailpath/special_math.hpp"

namespace tailpath {
namespace {

using Engine = std::mt19937_64;

double open_uniform(Engine& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double x = unif(rng);
  while (x <= 0.0) x = unif(rng);
  return x;
}

// Marshall-Olkin shock model with unit common shock rate: X = min(E1, E12),
// Y = min(E2, E12), rates 1/alpha - 1, 1/beta - 1, 1. Then
// (exp(-X/alpha), exp(-Y/beta)) has CDF min(u^(1-alpha) v, u v^(1-beta)).
UniformPair sample_mo(const family::MarshallOlkin& mo, Engine& rng) {
  std::exponential_distribution<double> common(1.0);
  const double e12 = common(rng);
  const double rate1 = 1.0 / mo.alpha - 1.0;
  const double rate2 = 1.0 / mo.beta - 1.0;
  const double inf = std::numeric_limits<double>::infinity();
  const double e1 = rate1 > 0.0 ? std::exponential_distribution<double>(rate1)(rng) : inf;
  const double e2 = rate2 > 0.0 ? std::exponential_distribution<double>(rate2)(rng) : inf;
  const double x = std::min(e1, e12);
  const double y = std::min(e2, e12);
  return {std::exp(-x / mo.alpha), std::exp(-y / mo.beta)};
}

// Gaussian scale mixture: Z / sqrt(W / nu) with W ~ chi^2_nu.
UniformPair sample_t(const family::StudentT& st, const StudentT& dist, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::gamma_distribution<double> chi2(0.5 * st.nu, 2.0);
  const double z1 = normal(rng);
  const double z2 = st.rho * z1 + std::sqrt(1.0 - st.rho * st.rho) * normal(rng);
  const double w = std::sqrt(chi2(rng) / st.nu);
  return {dist.cdf(z1 / w), dist.cdf(z2 / w)};
}

// Draw u, p uniform and solve dC/du(u, v) = p for v.
UniformPair sample_by_inversion(const CopulaModel& model, Engine& rng) {
  const double u = open_uniform(rng);
  const double p = open_uniform(rng);
  try {
    const double v = brent_root([&](double y) { return conditional_cdf(model, u, y) - p; }, 0.0,
                                1.0, 1e-13);
    return {u, v};
  } catch (const std::runtime_error& e) {
    std::ostringstream os;
    os << "sample: conditional inversion failed for (u, p) = (" << u << ", " << p
       << "): " << e.what();
    throw InversionError(os.str(), u, p);
  }
}

void fill(const CopulaModel& model, std::vector<UniformPair>& out, Engine& rng);

struct FillVisitor {
  const CopulaModel& model;
  std::vector<UniformPair>& out;
  Engine& rng;
  void operator()(const family::Independence&) const {
    for (auto& pair : out) pair = {open_uniform(rng), open_uniform(rng)};
  }
  void operator()(const family::Comonotone&) const {
    for (auto& pair : out) {
      const double u = open_uniform(rng);
      pair = {u, u};
    }
  }
  void operator()(const family::MarshallOlkin& mo) const {
    for (auto& pair : out) pair = sample_mo(mo, rng);
  }
  void operator()(const family::StudentT& st) const {
    const StudentT dist(st.nu);
    for (auto& pair : out) pair = sample_t(st, dist, rng);
  }
  void operator()(const family::SurvivalOf& sv) const {
    fill(*sv.inner, out, rng);
    for (auto& [u, v] : out) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
  }
  void operator()(const auto&) const {
    for (auto& pair : out) pair = sample_by_inversion(model, rng);
  }
};

void fill(const CopulaModel& model, std::vector<UniformPair>& out, Engine& rng) {
  std::visit(FillVisitor{model, out, rng}, model.params());
}

}  // namespace

std::vector<UniformPair> sample(const CopulaModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample: n must be at least 1");
  std::vector<UniformPair> out(n);
  Engine rng(seed);
  fill(model, out, rng);
  return out;
}

}  // namespace tailpath

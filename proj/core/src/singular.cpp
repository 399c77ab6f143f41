#include "tailpath/singular.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tailpath/errors.hpp"

namespace tailpath {
namespace {

void check_params(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("singular curve: alpha and beta must lie in (0, 1]");
  }
}

void check_u(double u) {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("singular curve: u must lie in (0, 1]");
}

}  // namespace

double singular_equation(double alpha, double beta, double u, double x) {
  return alpha * std::log1p(-x) - beta * std::log1p(-u * u / x);
}

double g_ratio(double p, double z) {
  if (z == 0.0) return p;
  return -std::expm1(p * std::log1p(-z)) / z;
}

SingularCurvePoint singular_root(double alpha, double beta, double u) {
  check_params(alpha, beta);
  check_u(u);
  SingularCurvePoint pt;
  pt.u = u;
  if (u == 1.0) {
    pt.x_star = 1.0;
    pt.ratio = 1.0;
    return pt;
  }
  const double lo = u * u * (1.0 + 1e-14);
  const double hi = 1.0 - 1e-14;
  double x = 0.0;
  try {
    x = brent_root([&](double t) { return singular_equation(alpha, beta, u, t); }, lo, hi,
                   std::numeric_limits<double>::min());
  } catch (const BracketError& e) {
    std::ostringstream os;
    os << "singular_root: internal error at u = " << u << ": " << e.what();
    throw ConvergenceError(os.str());
  }
  pt.x_star = x;
  pt.residual = std::pow(1.0 - x, alpha) - std::pow(1.0 - u * u / x, beta);
  pt.ratio = x / u;
  return pt;
}

std::vector<SingularCurvePoint> singular_curve(double alpha, double beta,
                                               const Schedule& schedule) {
  std::vector<SingularCurvePoint> out;
  out.reserve(schedule.size());
  for (double u : schedule) out.push_back(singular_root(alpha, beta, u));
  return out;
}

std::array<double, 3> cardano_roots(double u) {
  check_u(u);
  const double scale = 2.0 * u * std::sqrt(2.0 / 3.0);
  const double theta = std::acos(-3.0 * std::sqrt(6.0) * u / 8.0) / 3.0;
  const double x0 = scale * std::cos(theta);
  const double x1 = scale * std::cos(theta + 2.0 * std::numbers::pi / 3.0);
  // x0 x1 x2 = -u^4
  const double x2 = -(u * u) * (u * u) / (x0 * x1);
  return {x0, x1, x2};
}

double cardano_polynomial(double u, double x) {
  const double u2 = u * u;
  return x * x * x - 2.0 * u2 * x + u2 * u2;
}

AsymptoticReport asymptotic_report(double alpha, double beta, const Schedule& schedule,
                                   const PathResult& path, double tolerance) {
  check_params(alpha, beta);
  if (path.points.size() != schedule.size()) {
    throw DomainError("asymptotic_report: path and schedule have different lengths");
  }
  AsymptoticReport report;
  report.tolerance = tolerance;
  const double target = std::sqrt(beta / alpha);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double u = schedule[i];
    const PathPoint& p = path.points[i];
    if (p.u != u) {
      std::ostringstream os;
      os << "asymptotic_report: path point " << i << " has u = " << p.u << ", schedule has " << u;
      throw DomainError(os.str());
    }
    const SingularCurvePoint s = singular_root(alpha, beta, u);
    report.rows.push_back({u, p.ratio_b, s.ratio, target, std::fabs(p.phi_star - s.x_star) / u});
  }
  if (!report.rows.empty()) {
    const AsymptoticRow& last = report.rows.back();
    report.converged = std::fabs(last.phi_ratio - target) <= tolerance &&
                       std::fabs(last.x_ratio - target) <= tolerance;
  }
  return report;
}

}  // namespace tailpath

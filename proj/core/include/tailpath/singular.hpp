#pragma once

// Singular curve of the survival Marshall-Olkin copula: the root x*_u of
// (1 - x)^alpha = (1 - u^2/x)^beta in [u^2, 1], its closed form for
// beta = 2 alpha, and a comparison against a traced path of maximal
// dependence.

#include <array>
#include <vector>

#include "tailpath/path.hpp"
#include "tailpath/schedule.hpp"

namespace tailpath {

struct SingularCurvePoint {
  double u = 0.0;
  double x_star = 0.0;
  double residual = 0.0;  // (1 - x)^alpha - (1 - u^2/x)^beta
  double ratio = 0.0;     // x_star / u
  double v_star() const { return u * u / x_star; }
};

// alpha ln(1 - x) - beta ln(1 - u^2/x); strictly decreasing on (u^2, 1).
double singular_equation(double alpha, double beta, double u, double x);

// (1 - (1 - z)^p) / z, tending to p as z -> 0.
double g_ratio(double p, double z);

SingularCurvePoint singular_root(double alpha, double beta, double u);

std::vector<SingularCurvePoint> singular_curve(double alpha, double beta, const Schedule& schedule);

// Roots of P_u(x) = x^3 - 2u^2 x + u^4 by the trigonometric Cardano formula,
// x^(k) = 2u sqrt(2/3) cos(arccos(-3 sqrt(6) u / 8) / 3 + 2 pi k / 3), ordered so that
// x^(1) < 0 < x^(2) < x^(0) <= 1. The small root x^(2) is taken from the
// product of the roots to avoid cancellation.
std::array<double, 3> cardano_roots(double u);

double cardano_polynomial(double u, double x);

struct AsymptoticRow {
  double u = 0.0;
  double phi_ratio = 0.0;  // phi*(u) / u
  double x_ratio = 0.0;    // x*_u / u
  double target = 0.0;     // sqrt(beta / alpha)
  double gap = 0.0;        // |phi*(u) - x*_u| / u
};

struct AsymptoticReport {
  std::vector<AsymptoticRow> rows;
  // Both ratios within `tolerance` of the target at the smallest u.
  bool converged = false;
  double tolerance = 0.0;
};

// Throws DomainError when the path points do not align with the schedule.
AsymptoticReport asymptotic_report(double alpha, double beta, const Schedule& schedule,
                                   const PathResult& path, double tolerance = 0.02);

}  // namespace tailpath

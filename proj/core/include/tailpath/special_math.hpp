#pragma once

// Numerical kernel shared by every other module: Student-t distribution,
// regularized incomplete beta, adaptive Gauss-Kronrod quadrature, Brent root
// finding and grid-plus-Brent bounded maximization.
//
// All functions are pure and reentrant.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tailpath {

using RealFunction = std::function<double(double)>;

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;

  // Throws DomainError unless abs_tol > 0, rel_tol >= 0, max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
};

struct OptimResult1D {
  double argmax = 0.0;
  double max_value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Equally spaced samples of f on [lo, hi], endpoints included. `best` is the
// index of the largest sample; ties go to the smaller abscissa.
struct GridScan {
  std::vector<double> x;
  std::vector<double> fx;
  std::size_t best = 0;
};

inline constexpr int kDefaultGridSize = 512;

double log_beta(double a, double b);

// Student-t distribution with its normalizing constants cached, for hot
// loops that evaluate the same degrees of freedom many times.
class StudentT {
 public:
  explicit StudentT(double nu);

  double nu() const noexcept { return nu_; }
  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;

 private:
  double nu_;
  double log_beta_;
  double log_norm_;
};

// Regularized incomplete beta I_x(a, b) via a modified-Lentz continued
// fraction. a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

double student_t_pdf(double x, double nu);
double log_student_t_pdf(double x, double nu);

// T_nu(x). Throws DomainError when nu <= 0 or x is not finite.
double student_t_cdf(double x, double nu);

// T_nu^{-1}(p) for p in (0, 1): bracket expansion then Newton with a
// bisection safeguard.
double student_t_quantile(double p, double nu);

// Adaptive Gauss-Kronrod (10/21) integration. Either bound may be infinite;
// semi-infinite ranges are mapped by x = a + t/(1-t) (or its mirror) and the
// open rule never evaluates an endpoint.
QuadratureResult integrate_adaptive_detailed(const RealFunction& f, double a, double b,
                                             const QuadratureSpec& spec = {});
double integrate_adaptive(const RealFunction& f, double a, double b,
                          const QuadratureSpec& spec = {});

// Brent's zeroin. Requires f(lo) * f(hi) <= 0; the result lies in [lo, hi].
double brent_root(const RealFunction& f, double lo, double hi, double tol);

GridScan scan_grid(const RealFunction& f, double lo, double hi, int n_grid);

// Brent's golden-section/parabolic maximization on [lo, hi] started at
// `start`.
OptimResult1D brent_maximize(const RealFunction& f, double lo, double hi, double start,
                             double tol);

// Refines the best cell of `scan` with brent_maximize. The result never falls
// below the best grid sample.
OptimResult1D refine_grid_max(const RealFunction& f, const GridScan& scan, double tol);

// Limit of a convergent sequence from its last three terms by Aitken's
// delta-squared process (Richardson extrapolation with an estimated rate).
// Falls back to the last term when the differences do not contract or are
// already at rounding level. `error` is the larger of the last-two-term
// spread and the change between the last two extrapolants.
struct LimitEstimate {
  double value = 0.0;
  double error = 0.0;
  bool accelerated = false;
};
LimitEstimate extrapolate_limit(std::span<const double> sequence);

OptimResult1D maximize_1d(const RealFunction& f, double lo, double hi,
                          int n_grid = kDefaultGridSize, double tol = 1e-10);

}  // namespace tailpath

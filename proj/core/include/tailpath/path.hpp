#pragma once

// Paths of maximal dependence: for each u, the maximizer phi*(u) of
// x -> C(x, u^2 / x) over [u^2, 1], and the limits of Pi(u)/u and phi*(u)/u.

#include <optional>
#include <string>
#include <vector>

#include "tailpath/copula.hpp"
#include "tailpath/schedule.hpp"
#include "tailpath/special_math.hpp"
#include "tailpath/tail.hpp"

namespace tailpath {

struct PathPoint {
  double u = 0.0;
  double phi_star = 0.0;   // in [u^2, 1]
  double pi_value = 0.0;   // C(phi*, u^2 / phi*)
  double ratio_b = 0.0;    // phi* / u
  double pi_over_u = 0.0;
  bool argmax_at_boundary = false;
  int evaluations = 0;

  double v_star() const { return u * u / phi_star; }
};

struct SliceFailure {
  double u;
  std::string message;
};

struct PathResult {
  std::vector<PathPoint> points;  // decreasing u
  LimitEstimate lambda_phi_star;
  LimitEstimate b_limit;
  std::vector<SliceFailure> failures;
};

struct SliceOptions {
  int n_grid = kDefaultGridSize;
  double tol = 1e-11;  // on ln x
  // Grid values within this relative distance of the maximum are ties,
  // broken toward the smallest x.
  double tie_tolerance = 1e-12;
};

struct TraceOptions {
  SliceOptions slice;
  unsigned threads = 1;
  double u_floor = 1e-5;
};

// Global maximizer of x -> C(x, u^2/x) over [u^2, 1] on a grid in ln x
// (endpoints included) refined by Brent. `hint` is an extra candidate x that
// replaces the grid result only if it does strictly better.
PathPoint maximize_slice(const CopulaModel& model, double u, const SliceOptions& options = {},
                         std::optional<double> hint = std::nullopt);

// Slices along the schedule, then extrapolates Pi(u)/u and phi*(u)/u.
// Slices are computed independently (in parallel when threads > 1); a
// sequential pass then tries each previous ratio as a warm-start candidate,
// so the output does not depend on the thread count.
PathResult trace_path(const CopulaModel& model, const Schedule& schedule,
                      const TraceOptions& options = {});

struct PathLimitOptions {
  TraceOptions trace;
  MtcmOptions mtcm;
  double lambda_budget = 0.01;
  double b_budget = 0.02;
};

struct PathLimitReport {
  double lambda_star = 0.0;
  double lambda_phi_star = 0.0;
  double lambda_phi_error = 0.0;
  double lambda_difference = 0.0;
  double lambda_budget = 0.0;
  double b_star = 0.0;
  double b_limit = 0.0;
  double b_limit_error = 0.0;
  double b_difference = 0.0;
  double b_budget = 0.0;
  bool b_star_unique = true;
  bool violation = false;
  PathResult path;
  MtcmResult mtcm;
};

// Compares the path-based maximal TDC and the limit of phi*(u)/u with the
// MTCM and b*. Throws DegenerateTailError when the tail copula is degenerate.
PathLimitReport path_limit_report(const CopulaModel& model, const TailCopulaFn& tail,
                                 const Schedule& schedule, const PathLimitOptions& options = {});

}  // namespace tailpath

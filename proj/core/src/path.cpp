#include "tailpath/path.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "tailpath/errors.hpp"

namespace tailpath {
namespace {

// C(x, u^2/x) with x = e^y clamped to the admissible interval.
struct Slice {
  const CopulaModel& model;
  double u;
  double u2;

  double x_of(double y) const { return std::clamp(std::exp(y), u2, 1.0); }
  double at_x(double x) const { return cdf(model, x, std::min(1.0, u2 / x)); }
  double operator()(double y) const { return at_x(x_of(y)); }
};

}  // namespace

PathPoint maximize_slice(const CopulaModel& model, double u, const SliceOptions& options,
                         std::optional<double> hint) {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("maximize_slice: u must lie in (0, 1]");
  PathPoint point;
  point.u = u;
  if (u == 1.0) {
    point.phi_star = 1.0;
    point.pi_value = 1.0;
    point.ratio_b = 1.0;
    point.pi_over_u = 1.0;
    point.argmax_at_boundary = true;
    return point;
  }

  const Slice slice{model, u, u * u};
  const double y_lo = 2.0 * std::log(u);
  const double y_hi = 0.0;
  GridScan scan = scan_grid(slice, y_lo, y_hi, options.n_grid);
  // Pin the endpoints exactly: x = u^2 and x = 1.
  scan.fx.front() = slice.at_x(slice.u2);
  scan.fx.back() = slice.at_x(1.0);
  const double top = *std::max_element(scan.fx.begin(), scan.fx.end());
  const double tie = options.tie_tolerance * std::fabs(top);
  scan.best = static_cast<std::size_t>(
      std::find_if(scan.fx.begin(), scan.fx.end(), [&](double f) { return f >= top - tie; }) -
      scan.fx.begin());

  OptimResult1D best = refine_grid_max(slice, scan, options.tol);
  const double cell = (y_hi - y_lo) / (options.n_grid - 1);

  if (hint && *hint >= slice.u2 && *hint <= 1.0) {
    const double y_hint = std::log(*hint);
    const double f_hint = slice.at_x(*hint);
    ++best.evaluations;
    if (f_hint > best.max_value + tie) {
      OptimResult1D local = brent_maximize(slice, std::max(y_lo, y_hint - cell),
                                           std::min(y_hi, y_hint + cell), y_hint, options.tol);
      best.evaluations += local.evaluations;
      if (!(local.max_value > f_hint)) {
        local.argmax = y_hint;
        local.max_value = f_hint;
      }
      local.evaluations = best.evaluations;
      best = local;
    }
  }

  point.phi_star = slice.x_of(best.argmax);
  if (best.argmax <= y_lo) point.phi_star = slice.u2;
  point.pi_value = slice.at_x(point.phi_star);
  point.ratio_b = point.phi_star / u;
  point.pi_over_u = point.pi_value / u;
  point.argmax_at_boundary = (best.argmax - y_lo <= cell) || (y_hi - best.argmax <= cell);
  point.evaluations = best.evaluations + 1;
  return point;
}

PathResult trace_path(const CopulaModel& model, const Schedule& schedule,
                      const TraceOptions& options) {
  if (schedule.smallest() < options.u_floor) {
    std::ostringstream os;
    os << "trace_path: schedule reaches u = " << schedule.smallest() << " below the floor "
       << options.u_floor;
    throw DomainError(os.str());
  }
  const std::size_t n = schedule.size();
  std::vector<std::optional<PathPoint>> slots(n);
  std::vector<std::string> errors(n);

  auto solve = [&](std::size_t i, std::optional<double> hint) {
    try {
      slots[i] = maximize_slice(model, schedule[i], options.slice, hint);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) solve(i, std::nullopt);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) solve(i, std::nullopt);
      });
    }
  }

  // Warm start: previous maximizer ratio as an extra candidate.
  for (std::size_t i = 1; i < n; ++i) {
    if (!slots[i] || !slots[i - 1]) continue;
    const double hint = slots[i - 1]->ratio_b * schedule[i];
    const double u2 = schedule[i] * schedule[i];
    if (hint < u2 || hint > 1.0) continue;
    const double f_hint = cdf(model, hint, std::min(1.0, u2 / hint));
    if (f_hint > slots[i]->pi_value) solve(i, hint);
  }

  PathResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) {
      result.points.push_back(*slots[i]);
    } else {
      result.failures.push_back({schedule[i], errors[i]});
    }
  }
  if (result.points.empty()) {
    throw ConvergenceError("trace_path: every slice failed; first error: " + errors.front());
  }
  if (result.points.size() >= 3) {
    std::vector<double> pi_over_u;
    std::vector<double> ratio;
    for (const auto& p : result.points) {
      pi_over_u.push_back(p.pi_over_u);
      ratio.push_back(p.ratio_b);
    }
    result.lambda_phi_star = extrapolate_limit(pi_over_u);
    result.b_limit = extrapolate_limit(ratio);
  } else {
    const PathPoint& last = result.points.back();
    const double inf = std::numeric_limits<double>::infinity();
    result.lambda_phi_star = {last.pi_over_u, inf, false};
    result.b_limit = {last.ratio_b, inf, false};
  }
  return result;
}

PathLimitReport path_limit_report(const CopulaModel& model, const TailCopulaFn& tail,
                                 const Schedule& schedule, const PathLimitOptions& options) {
  PathLimitReport report;
  report.mtcm = mtcm(tail, options.mtcm);
  report.path = trace_path(model, schedule, options.trace);

  report.lambda_star = report.mtcm.lambda_star;
  report.b_star = report.mtcm.b_star;
  report.b_star_unique = report.mtcm.unique;
  report.lambda_phi_star = report.path.lambda_phi_star.value;
  report.lambda_phi_error = report.path.lambda_phi_star.error;
  report.b_limit = report.path.b_limit.value;
  report.b_limit_error = report.path.b_limit.error;

  report.lambda_difference = std::fabs(report.lambda_phi_star - report.lambda_star);
  report.b_difference = std::fabs(report.b_limit - report.b_star);
  report.lambda_budget = options.lambda_budget + report.lambda_phi_error;
  report.b_budget = options.b_budget + report.b_limit_error;
  report.violation = report.lambda_difference > report.lambda_budget ||
                     report.b_difference > report.b_budget;
  return report;
}

}  // namespace tailpath

#include "tailpath/special_math.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <sstream>
#include <string>

#include "tailpath/errors.hpp"

namespace tailpath {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

void require_nu(double nu, const char* where) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw DomainError(std::string(where) + ": degrees of freedom must be positive and finite");
  }
}

// Continued fraction for I_x(a,b), modified Lentz. Converges quickly for
// x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  throw ConvergenceError("incomplete_beta: continued fraction did not converge");
}

// I_x(a,b) with y = 1 - x supplied separately so callers can avoid the
// cancellation in 1 - x.
double incomplete_beta_xy(double a, double b, double x, double y, double lbeta) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log(y) - lbeta;
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

// Lower-tail probability P(T <= -|x|) = I_z(nu/2, 1/2) / 2 with
// z = nu / (nu + x^2).
double student_t_lower_tail(double x, double nu, double lbeta) {
  const double x2 = x * x;
  const double z = 1.0 / (1.0 + x2 / nu);
  const double one_minus_z = (x2 == 0.0) ? 0.0 : 1.0 / (1.0 + nu / x2);
  return 0.5 * incomplete_beta_xy(0.5 * nu, 0.5, z, one_minus_z, lbeta);
}

double student_t_cdf_impl(double x, double nu, double lbeta) {
  const double tail = student_t_lower_tail(x, nu, lbeta);
  return x < 0.0 ? tail : 1.0 - tail;
}

double log_t_norm(double nu) {
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
         0.5 * std::log(nu * std::numbers::pi);
}

// Lower-half quantile, p in (0, 0.5).
double student_t_quantile_lower(double p, double nu) {
  const double lbeta = log_beta(0.5 * nu, 0.5);
  const double lnorm = log_t_norm(nu);
  const double log_p = std::log(p);

  double hi = 0.0;
  double lo = -1.0;
  while (student_t_cdf_impl(lo, nu, lbeta) > p) {
    hi = lo;
    lo *= 2.0;
    if (!std::isfinite(lo)) throw ConvergenceError("student_t_quantile: bracket overflow");
  }

  // Newton on ln T(x) - ln p, which is close to linear in ln|x| in the tail.
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double cdf = student_t_cdf_impl(x, nu, lbeta);
    const double g = std::log(cdf) - log_p;
    if (g > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double dens = std::exp(lnorm - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
    double next = x - g * cdf / dens;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - x);
    x = next;
    if (step <= 4.0 * kEps * std::fabs(x) || hi - lo <= 4.0 * kEps * std::fabs(x)) return x;
  }
  return x;
}

// Kronrod 21-point nodes and weights; odd indices carry the embedded 10-point
// Gauss rule.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208323457218, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment gauss_kronrod_21(const F& f, double a, double b, int& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  evals += 21;
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be positive");
  if (!(rel_tol >= 0.0)) throw DomainError("QuadratureSpec: rel_tol must be non-negative");
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete_beta: x must lie in [0, 1]");
  return incomplete_beta_xy(a, b, x, 1.0 - x, log_beta(a, b));
}

StudentT::StudentT(double nu)
    : nu_(nu), log_beta_(0.0), log_norm_(0.0) {
  require_nu(nu, "StudentT");
  log_beta_ = log_beta(0.5 * nu, 0.5);
  log_norm_ = log_t_norm(nu);
}

double StudentT::log_pdf(double x) const {
  return log_norm_ - 0.5 * (nu_ + 1.0) * std::log1p(x * x / nu_);
}

double StudentT::pdf(double x) const { return std::exp(log_pdf(x)); }

double StudentT::cdf(double x) const {
  if (!std::isfinite(x)) throw DomainError("student_t_cdf: x must be finite");
  return student_t_cdf_impl(x, nu_, log_beta_);
}

double StudentT::quantile(double p) const { return student_t_quantile(p, nu_); }

double log_student_t_pdf(double x, double nu) {
  require_nu(nu, "student_t_pdf");
  return log_t_norm(nu) - 0.5 * (nu + 1.0) * std::log1p(x * x / nu);
}

double student_t_pdf(double x, double nu) {
  return std::exp(log_student_t_pdf(x, nu));
}

double student_t_cdf(double x, double nu) {
  require_nu(nu, "student_t_cdf");
  if (!std::isfinite(x)) throw DomainError("student_t_cdf: x must be finite");
  return student_t_cdf_impl(x, nu, log_beta(0.5 * nu, 0.5));
}

double student_t_quantile(double p, double nu) {
  require_nu(nu, "student_t_quantile");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("student_t_quantile: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return student_t_quantile_lower(p, nu);
  return -student_t_quantile_lower(1.0 - p, nu);
}

QuadratureResult integrate_adaptive_detailed(const RealFunction& f, double a, double b,
                                             const QuadratureSpec& spec) {
  spec.validate();
  if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate_adaptive: NaN bound");
  if (a == b) return {};
  if (a > b) {
    QuadratureResult flipped = integrate_adaptive_detailed(f, b, a, spec);
    flipped.value = -flipped.value;
    return flipped;
  }

  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  double ta = a;
  double tb = b;
  std::function<double(double)> g;
  if (lo_inf && hi_inf) {
    // x = t / (1 - t^2), t in (-1, 1)
    g = [&f](double t) {
      const double d = 1.0 - t * t;
      return f(t / d) * (1.0 + t * t) / (d * d);
    };
    ta = -1.0;
    tb = 1.0;
  } else if (hi_inf) {
    g = [&f, a](double t) {
      const double d = 1.0 - t;
      return f(a + t / d) / (d * d);
    };
    ta = 0.0;
    tb = 1.0;
  } else if (lo_inf) {
    g = [&f, b](double t) { return f(b - (1.0 - t) / t) / (t * t); };
    ta = 0.0;
    tb = 1.0;
  } else {
    g = f;
  }

  auto checked = [&g](double t) {
    const double v = g(t);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrate_adaptive: integrand not finite at transformed abscissa " << t;
      throw DomainError(os.str());
    }
    return v;
  };

  QuadratureResult out;
  std::priority_queue<Segment> heap;
  const Segment first = gauss_kronrod_21(checked, ta, tb, out.evaluations);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  double frozen_err = 0.0;
  double frozen_value = 0.0;

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };

  while (total_err > tolerance()) {
    if (heap.empty()) break;
    if (out.subdivisions >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "integrate_adaptive: " << spec.max_subdivisions
         << " subdivisions exhausted, error estimate " << total_err << " above tolerance "
         << tolerance();
      throw ConvergenceError(os.str());
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval at machine resolution; keep its contribution as is.
      frozen_err += worst.error;
      frozen_value += worst.value;
      continue;
    }
    const Segment left = gauss_kronrod_21(checked, worst.a, mid, out.evaluations);
    const Segment right = gauss_kronrod_21(checked, mid, worst.b, out.evaluations);
    ++out.subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the pieces to shed accumulated update roundoff.
  double value = frozen_value;
  double error = frozen_err;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  if (error > std::max(spec.abs_tol, spec.rel_tol * std::fabs(value)) * 1.0000001 &&
      frozen_err > 0.0) {
    std::ostringstream os;
    os << "integrate_adaptive: tolerance not reached at machine resolution (error " << error
       << ")";
    throw ConvergenceError(os.str());
  }
  return out;
}

double integrate_adaptive(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_adaptive_detailed(f, a, b, spec).value;
}

double brent_root(const RealFunction& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("brent_root: tol must be positive");
  if (!(lo <= hi)) throw DomainError("brent_root: lo must not exceed hi");
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "brent_root: no sign change on [" << lo << ", " << hi << "] (f = " << fa << ", " << fb
       << ")";
    throw BracketError(os.str());
  }
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 500; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return std::clamp(b, lo, hi);
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw ConvergenceError("brent_root: iteration limit reached");
}

GridScan scan_grid(const RealFunction& f, double lo, double hi, int n_grid) {
  if (n_grid < 3) throw DomainError("scan_grid: n_grid must be at least 3");
  if (!(lo < hi)) throw DomainError("scan_grid: lo must be below hi");
  GridScan scan;
  scan.x.resize(static_cast<std::size_t>(n_grid));
  scan.fx.resize(static_cast<std::size_t>(n_grid));
  const double span = hi - lo;
  for (int i = 0; i < n_grid; ++i) {
    const auto k = static_cast<std::size_t>(i);
    scan.x[k] = (i == n_grid - 1) ? hi : lo + span * (static_cast<double>(i) / (n_grid - 1));
    scan.fx[k] = f(scan.x[k]);
    if (scan.fx[k] > scan.fx[scan.best]) scan.best = k;
  }
  return scan;
}

OptimResult1D brent_maximize(const RealFunction& f, double lo, double hi, double start,
                             double tol) {
  constexpr double kGolden = 0.3819660112501051;
  constexpr double kRel = 1e-12;
  constexpr int kMaxIter = 300;
  if (!(lo <= hi)) throw DomainError("brent_maximize: lo must not exceed hi");
  double a = lo;
  double b = hi;
  double x = std::clamp(start, lo, hi);
  double w = x;
  double v = x;
  double fx = -f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  OptimResult1D out;
  out.evaluations = 1;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = kRel * std::fabs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) {
      out.converged = true;
      break;
    }
    bool golden = true;
    if (std::fabs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) {
        p = -p;
      } else {
        q = -q;
      }
      r = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m) ? b - x : a - x;
      d = kGolden * e;
    }
    const double u = x + ((std::fabs(d) >= tol1) ? d : std::copysign(tol1, d));
    const double fu = -f(u);
    ++out.evaluations;
    if (fu <= fx) {
      if (u < x) {
        b = x;
      } else {
        a = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  out.argmax = x;
  out.max_value = -fx;
  return out;
}

OptimResult1D refine_grid_max(const RealFunction& f, const GridScan& scan, double tol) {
  if (scan.x.size() < 3) throw DomainError("refine_grid_max: grid too small");
  const std::size_t i = scan.best;
  const double lo = scan.x[i == 0 ? 0 : i - 1];
  const double hi = scan.x[std::min(i + 1, scan.x.size() - 1)];
  OptimResult1D refined = brent_maximize(f, lo, hi, scan.x[i], tol);
  refined.evaluations += static_cast<int>(scan.x.size());
  if (!(refined.max_value > scan.fx[i])) {
    refined.argmax = scan.x[i];
    refined.max_value = scan.fx[i];
  }
  return refined;
}

OptimResult1D maximize_1d(const RealFunction& f, double lo, double hi, int n_grid, double tol) {
  if (!(tol > 0.0)) throw DomainError("maximize_1d: tol must be positive");
  const GridScan scan = scan_grid(f, lo, hi, n_grid);
  return refine_grid_max(f, scan, tol);
}

namespace {

// Aitken extrapolant of x[i-2], x[i-1], x[i]; nullopt when the differences
// do not contract geometrically or are at rounding level.
std::optional<double> aitken(std::span<const double> x, std::size_t i) {
  const double d1 = x[i - 1] - x[i - 2];
  const double d2 = x[i] - x[i - 1];
  const double scale = std::max({std::fabs(x[i - 2]), std::fabs(x[i - 1]), std::fabs(x[i])});
  if (std::fabs(d1) <= 1e-14 * scale || std::fabs(d2) <= 1e-14 * scale) return std::nullopt;
  const double ratio = d2 / d1;
  if (!(std::fabs(ratio) < 1.0)) return std::nullopt;
  return x[i] + d2 * ratio / (1.0 - ratio);
}

}  // namespace

LimitEstimate extrapolate_limit(std::span<const double> sequence) {
  if (sequence.empty()) throw DomainError("extrapolate_limit: empty sequence");
  for (double v : sequence) {
    if (!std::isfinite(v)) throw DomainError("extrapolate_limit: non-finite term");
  }
  const std::size_t n = sequence.size();
  LimitEstimate out;
  out.value = sequence[n - 1];
  if (n == 1) {
    out.error = std::numeric_limits<double>::infinity();
    return out;
  }
  out.error = std::fabs(sequence[n - 1] - sequence[n - 2]);
  if (n < 3) return out;
  const auto last = aitken(sequence, n - 1);
  if (!last) return out;
  out.value = *last;
  out.accelerated = true;
  if (n >= 4) {
    const auto prev = aitken(sequence, n - 2);
    const double previous = prev ? *prev : sequence[n - 2];
    out.error = std::max(out.error, std::fabs(*last - previous));
  }
  return out;
}

}  // namespace tailpath

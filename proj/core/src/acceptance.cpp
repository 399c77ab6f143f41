#include "tailpath/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "tailpath/copula.hpp"
#include "tailpath/errors.hpp"
#include "tailpath/path.hpp"
#include "tailpath/singular.hpp"
#include "tailpath/special_math.hpp"
#include "tailpath/spectral.hpp"
#include "tailpath/tail.hpp"

namespace tailpath {
namespace {

constexpr std::size_t kMaxNotes = 8;

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) {
      ++failures_;
      if (failure_notes_.size() < kMaxNotes) failure_notes_.push_back(what);
    }
  }

  // |got - want| <= tol
  void near(double got, double want, double tol, const std::string& what) {
    const double diff = std::fabs(got - want);
    std::ostringstream os;
    os << std::setprecision(10) << what << ": got " << got << ", want " << want << " (|diff| "
       << std::setprecision(3) << diff << " > " << tol << ")";
    expect(diff <= tol, os.str());
  }

  void info(const std::string& note) { info_.push_back(note); }

  int count() const { return count_; }
  int failures() const { return failures_; }

  std::vector<std::string> notes() const {
    if (failures_ == 0) return info_;
    std::vector<std::string> out = failure_notes_;
    if (failures_ > static_cast<int>(failure_notes_.size())) {
      out.push_back("... " + std::to_string(failures_ - failure_notes_.size()) + " more failures");
    }
    return out;
  }

 private:
  int count_ = 0;
  int failures_ = 0;
  std::vector<std::string> failure_notes_;
  std::vector<std::string> info_;
};

std::string fmt(double v, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

struct TPair {
  double nu;
  double rho;
};

constexpr TPair kTPairs[] = {{4.0, 0.5}, {2.0, -0.3}, {10.0, 0.8}};

std::string t_name(const TPair& p) { return "t(" + fmt(p.nu) + "," + fmt(p.rho) + ")"; }

// ---------------------------------------------------------------------------

void smo_closed_form(Checks& c) {
  const double alpha = 0.35;
  const double beta = 0.7;
  const MtcmResult r = mtcm(tail_copula_for(CopulaModel::survival_of(
      CopulaModel::marshall_olkin(alpha, beta))));
  c.near(r.b_star, std::sqrt(2.0), 1e-6, "smo(0.35,0.7) b*");
  c.near(r.lambda_star, std::sqrt(0.245), 1e-8, "smo(0.35,0.7) lambda*");
  c.expect(r.unique, "smo(0.35,0.7) maximizer flagged non-unique");
  c.info("b* = " + fmt(r.b_star, 12) + ", lambda* = " + fmt(r.lambda_star, 12));

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    // min(a s, b / s) peaks where the two lines cross.
    const double b_alg = std::sqrt(b / a);
    const double l_alg = a * b_alg;
    const MtcmResult ri = mtcm(TailCopulaFn::smo(a, b));
    const std::string tag = "smo(" + fmt(a, 6) + "," + fmt(b, 6) + ")";
    c.near(ri.b_star, b_alg, 1e-6, tag + " b*");
    c.near(ri.lambda_star, l_alg, 1e-8, tag + " lambda*");
  }
}

void ag_mtcm(Checks& c) {
  const double alpha = 0.35;
  const double beta = 0.7;
  const double theta = 2.0;
  const MtcmResult r = mtcm(tail_copula_for(
      CopulaModel::survival_of(CopulaModel::asym_gumbel(alpha, beta, theta))));
  c.near(r.b_star, std::sqrt(2.0), 1e-4, "sag(0.35,0.7,2) b*");
  // At b = sqrt(beta/alpha) both weighted arguments equal sqrt(alpha beta).
  const double p = std::sqrt(alpha * beta);
  const double lambda = 2.0 * p - std::pow(2.0, 1.0 / theta) * p;
  c.near(r.lambda_star, lambda, 1e-8, "sag(0.35,0.7,2) lambda*");
  c.info("b* = " + fmt(r.b_star, 12) + ", lambda* = " + fmt(r.lambda_star, 12));
}

void t_unit_attainer(Checks& c) {
  for (const TPair& tp : kTPairs) {
    const MtcmResult r = mtcm(TailCopulaFn::tev(tp.nu, tp.rho));
    c.near(r.b_star, 1.0, 1e-4, t_name(tp) + " b*");
    const SpectralModel sm(tp.nu, tp.rho);
    const OptimResult1D ls = maximize_1d([&](double s) { return L_of_s(sm, s); }, -5.0, 5.0);
    c.near(ls.argmax, 0.0, 1e-3, t_name(tp) + " argmax of L(s)");
    c.near(L_of_s(sm, 0.0), r.lambda_star, 1e-5, t_name(tp) + " L(0) vs lambda*");
    c.info(t_name(tp) + ": b* = " + fmt(r.b_star, 12) + ", argmax L = " + fmt(ls.argmax, 3));
  }
}

void path_limits(Checks& c) {
  const CopulaModel models[] = {
      CopulaModel::survival_of(CopulaModel::marshall_olkin(0.35, 0.7)),
      CopulaModel::survival_of(CopulaModel::asym_gumbel(0.35, 0.7, 2.0)),
  };
  const Schedule schedule = Schedule::default_path();
  for (const CopulaModel& m : models) {
    const PathLimitReport rep = path_limit_report(m, tail_copula_for(m), schedule);
    const std::string tag = m.describe();
    c.expect(rep.path.failures.empty(), tag + ": slice failures");
    c.expect(rep.path.points.size() == schedule.size(), tag + ": missing path points");
    c.near(rep.lambda_phi_star, rep.lambda_star, 0.01, tag + " lambda_phi* vs lambda*");
    c.near(rep.b_limit, rep.b_star, 0.02, tag + " b limit vs b*");
    c.info(tag + ": lambda_phi* = " + fmt(rep.lambda_phi_star, 8) + " (lambda* " +
           fmt(rep.lambda_star, 8) + "), b limit = " + fmt(rep.b_limit, 8) + " (b* " +
           fmt(rep.b_star, 8) + ")");
  }
}

void singular(Checks& c) {
  const double alpha = 0.35;
  const double beta = 0.7;
  const Schedule grid = Schedule::log_spaced(0.99, 1e-4, 50);
  double worst = 0.0;
  for (double u : grid) {
    const SingularCurvePoint p = singular_root(alpha, beta, u);
    const double h = singular_equation(alpha, beta, u, p.x_star);
    worst = std::max(worst, std::fabs(h));
    c.expect(std::fabs(h) <= 1e-10, "h_u(x*) = " + fmt(h, 3) + " at u = " + fmt(u));
    c.expect(p.x_star >= u * u && p.x_star <= 1.0, "x* outside [u^2, 1] at u = " + fmt(u));
    // (x/u)^2 = g_beta(u^2/x) / g_alpha(x)
    const double lhs = p.ratio * p.ratio;
    const double rhs = g_ratio(beta, u * u / p.x_star) / g_ratio(alpha, p.x_star);
    c.expect(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, lhs),
             "ratio identity off at u = " + fmt(u));

    const SingularCurvePoint q = singular_root(alpha, 2.0 * alpha, u);
    const auto roots = cardano_roots(u);
    c.near(roots[0], q.x_star, 1e-10, "Cardano root vs Brent root at u = " + fmt(u));
    c.expect(roots[1] < 0.0 && 0.0 < roots[2] && roots[2] < roots[0] && roots[0] <= 1.0,
             "Cardano root ordering at u = " + fmt(u));
    for (double r : roots) {
      c.expect(std::fabs(cardano_polynomial(u, r)) <= 1e-12 * u * u * u,
               "P_u residual at u = " + fmt(u));
    }
    c.expect(cardano_polynomial(u, u * u) <= 0.0 && cardano_polynomial(u, 1.0) >= 0.0,
             "P_u sign change on [u^2, 1] at u = " + fmt(u));
    c.expect(std::pow(u, 6) * (u * u / 4.0 - 8.0 / 27.0) < 0.0, "discriminant sign");

    // h_u strictly decreasing on (u^2, 1)
    bool decreasing = true;
    const double lo = std::log(u * u);
    for (int k = 1; k <= 100; ++k) {
      const double x = std::exp(lo * (1.0 - k / 101.0));
      const double dx = 1e-7 * x * std::min(1.0, (1.0 - x) / x);
      decreasing = decreasing && singular_equation(alpha, beta, u, x + dx) <
                                     singular_equation(alpha, beta, u, x - dx);
    }
    c.expect(decreasing, "h_u not decreasing at u = " + fmt(u));
  }
  const SingularCurvePoint one = singular_root(alpha, beta, 1.0);
  c.expect(one.x_star == 1.0, "u = 1 root is not exactly 1");

  const double u = 1e-4;
  const auto roots = cardano_roots(u);
  c.near(roots[0] / u, std::sqrt(2.0), 1e-3, "x(0)/u at u = 1e-4");
  c.near(roots[1] / u, -std::sqrt(2.0), 1e-3, "x(1)/u at u = 1e-4");
  c.near(roots[2] / (u * u), 0.5, 1e-3, "x(2)/u^2 at u = 1e-4");
  c.info("max |h_u(x*)| = " + fmt(worst, 3) + ", x(0)/u at 1e-4 = " + fmt(roots[0] / u, 10));
}

void spectral(Checks& c) {
  for (const TPair& tp : kTPairs) {
    const SpectralModel sm(tp.nu, tp.rho);
    const std::string tag = t_name(tp);
    const double interior = interior_mass(sm);
    c.near(interior, 2.0 * sm.t_nu1().cdf(sm.eta() * tp.rho), 1e-6, tag + " interior mass");
    c.near(2.0 * endpoint_mass(sm) + interior, 2.0, 1e-6, tag + " total mass");
    c.near(interior_first_moment(sm) + endpoint_mass(sm), 1.0, 1e-6, tag + " first moment");

    for (int k = 1; k < 1000; ++k) {
      const double w = k / 1000.0;
      const double a = h_density(sm, w);
      const double b = h_density(sm, 1.0 - w);
      c.expect(std::fabs(a - b) <= 1e-12 * std::max(1.0, a),
               tag + " h asymmetric at w = " + fmt(w));
      c.expect(a > 0.0, tag + " h not positive at w = " + fmt(w));
    }

    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double x = std::pow(10.0, -1.0 + 2.0 * i / 9.0);
        const double y = std::pow(10.0, -1.0 + 2.0 * j / 9.0);
        const double diff = std::fabs(spectral_tail_copula(sm, x, y) - tail_copula_tev(tp.nu, tp.rho, x, y));
        worst = std::max(worst, diff);
        c.expect(diff <= 1e-6, tag + " spectral vs closed-form tail copula at (" + fmt(x, 4) +
                                   "," + fmt(y, 4) + "): " + fmt(diff, 3));
      }
    }

    const StudentT& t1 = sm.t_nu1();
    for (int k = 0; k <= 120; ++k) {
      const double u = std::pow(10.0, -3.0 + 6.0 * k / 120.0);
      const double lhs = t1.pdf(sm.eta() * (tp.rho - 1.0 / u));
      const double rhs = std::pow(u, tp.nu + 2.0) * t1.pdf(sm.eta() * (tp.rho - u));
      c.expect(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(rhs),
               tag + " t-density identity at u = " + fmt(u));
    }
    c.info(tag + ": interior mass " + fmt(interior, 12) + ", max tail copula gap " + fmt(worst, 3));
  }
}

void m_properties(Checks& c) {
  for (const TPair& tp : kTPairs) {
    const SpectralModel sm(tp.nu, tp.rho);
    const std::string tag = t_name(tp);
    double prev = m_transform(sm, 0.0);
    for (int k = 1; k <= 200; ++k) {
      const double a = 0.05 * k;
      const double m = m_transform(sm, a);
      const double closed = m_transform_closed_form(sm, a);
      c.expect(std::fabs(m - m_transform(sm, -a)) <= 1e-12 * std::max(1.0, m),
               tag + " m not even at a = " + fmt(a));
      c.expect(m < prev, tag + " m not strictly decreasing at a = " + fmt(a));
      c.expect(std::fabs(m - closed) <= 1e-12 * std::max(1.0, closed),
               tag + " closed form mismatch at a = " + fmt(a));
      c.expect(m <= m_envelope_constant(sm) * std::exp(-(1.0 + 2.0 / tp.nu) * a),
               tag + " envelope bound at a = " + fmt(a));
      const double step = 1e-5;
      const double fd =
          (std::log(m_transform(sm, a + step)) - std::log(m_transform(sm, a - step))) / (2.0 * step);
      c.near(fd, m_log_derivative(sm, a), 1e-6, tag + " log-derivative at a = " + fmt(a));
      prev = m;
    }
  }
  c.info("evenness, monotonicity, closed form and log-derivative hold on 200 points x 3 models");
}

void fgm_diagnostic(Checks& c) {
  const CopulaModel fgm = CopulaModel::fgm(-1.0);
  for (int k = 1; k <= 9; ++k) {
    const double u = 0.1 * k;
    const PathPoint p = maximize_slice(fgm, u);
    c.expect(p.argmax_at_boundary,
             "slice maximizer inside [u^2, 1] at u = " + fmt(u) + ": " + fmt(p.phi_star));
  }
  bool fired = false;
  double max_profile = 0.0;
  try {
    mtcm(tail_copula_for(fgm));
  } catch (const DegenerateTailError& e) {
    fired = true;
    max_profile = e.max_profile();
  }
  c.expect(fired, "degenerate-tail error did not fire for fgm(-1)");
  c.info("all 9 slice maximizers at the boundary; degenerate tail (max profile " +
         fmt(max_profile, 3) + ")");
}

void numeric_oracle(Checks& c) {
  struct Case {
    CopulaModel model;
    TailCopulaFn analytic;
  };
  const Case cases[] = {
      {CopulaModel::survival_of(CopulaModel::marshall_olkin(0.35, 0.7)), TailCopulaFn::smo(0.35, 0.7)},
      {CopulaModel::student_t(4.0, 0.5), TailCopulaFn::tev(4.0, 0.5)},
  };
  const double grid[] = {0.2, 0.5, 1.0, 2.0, 5.0};
  for (const Case& cs : cases) {
    const TailCopulaFn numeric = TailCopulaFn::numeric(cs.model);
    double worst = 0.0;
    for (double x : grid) {
      for (double y : grid) {
        const double m = std::max(x, y);
        const TailEstimate est = tail_copula_numeric(cs.model, x / m, y / m);
        const double value = m * est.value;
        const double error = m * est.error;
        const double exact = cs.analytic(x, y);
        const double diff = std::fabs(value - exact);
        worst = std::max(worst, diff);
        const std::string where = cs.model.describe() + " at (" + fmt(x) + "," + fmt(y) + ")";
        c.expect(diff <= error, where + ": gap " + fmt(diff, 3) + " exceeds reported error " +
                                    fmt(error, 3));
        c.expect(diff <= 1e-3, where + ": gap " + fmt(diff, 3) + " > 1e-3");
        c.near(numeric(x, y), value, 1e-15 * std::max(1.0, value), where + " TailCopulaFn route");
      }
    }
    c.info(cs.model.describe() + ": max gap " + fmt(worst, 3));
  }
}

// --- property suites -------------------------------------------------------

std::vector<CopulaModel> property_models() {
  const CopulaModel mo = CopulaModel::marshall_olkin(0.35, 0.7);
  const CopulaModel ag = CopulaModel::asym_gumbel(0.35, 0.7, 2.0);
  return {CopulaModel::independence(),
          CopulaModel::comonotone(),
          CopulaModel::fgm(-1.0),
          CopulaModel::fgm(0.6),
          mo,
          CopulaModel::survival_of(mo),
          ag,
          CopulaModel::survival_of(ag),
          CopulaModel::student_t(4.0, 0.5),
          CopulaModel::survival_of(CopulaModel::student_t(2.0, -0.3))};
}

void frechet_and_increasing(Checks& c, const CopulaModel& m) {
  const std::string tag = m.describe();
  constexpr int n = 50;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = i / double(n - 1);
      const double v = j / double(n - 1);
      const double value = cdf(m, u, v);
      // u + v - 1 itself carries one rounding error
      c.expect(value >= std::max(u + v - 1.0, 0.0) - 0x1p-53 && value <= std::min(u, v),
               tag + " Frechet bounds at (" + fmt(u) + "," + fmt(v) + ")");
    }
  }
  for (double u : {0.0, 0.3, 0.7, 1.0}) {
    c.expect(cdf(m, u, 0.0) == 0.0 && cdf(m, 0.0, u) == 0.0, tag + " grounded");
    c.expect(std::fabs(cdf(m, u, 1.0) - u) <= 1e-15 && std::fabs(cdf(m, 1.0, u) - u) <= 1e-15,
             tag + " uniform margins");
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    double u1 = unit(rng), u2 = unit(rng), v1 = unit(rng), v2 = unit(rng);
    if (u1 > u2) std::swap(u1, u2);
    if (v1 > v2) std::swap(v1, v2);
    const double vol = cdf(m, u2, v2) - cdf(m, u1, v2) - cdf(m, u2, v1) + cdf(m, u1, v1);
    c.expect(vol >= -1e-12, tag + " negative rectangle volume " + fmt(vol, 3));
  }
  if (m.is_survival()) {
    const CopulaModel& inner = m.inner();
    for (double u : {0.05, 0.3, 0.9}) {
      for (double v : {0.1, 0.5, 0.95}) {
        const double identity = -1.0 + u + v + cdf(inner, 1.0 - u, 1.0 - v);
        c.expect(std::fabs(cdf(m, u, v) - identity) <= 1e-12, tag + " survival identity");
        c.expect(cdf(survival(m), u, v) == cdf(inner, u, v), tag + " survival involution");
      }
    }
  }
}

void sampler_check(Checks& c, const CopulaModel& m) {
  const std::string tag = m.describe();
  constexpr std::size_t n = 20000;
  const auto pairs = sample(m, n, 42);
  c.expect(pairs == sample(m, n, 42), tag + " sampler not deterministic");
  // One-dimensional Kolmogorov statistics of the margins against U(0,1),
  // compared with the 0.1% critical value.
  const double crit = 1.949 / std::sqrt(double(n));
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = axis == 0 ? pairs[i].first : pairs[i].second;
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d = std::max({d, (i + 1.0) / n - x[i], x[i] - double(i) / n});
    }
    c.expect(d <= crit, tag + " margin " + std::to_string(axis) + " Kolmogorov D = " + fmt(d, 4));
  }
  // Empirical joint CDF against the model at a 4 x 4 grid, 4.5 binomial
  // standard errors per point.
  const double grid[] = {0.1, 0.3, 0.6, 0.85};
  for (double u : grid) {
    for (double v : grid) {
      std::size_t hits = 0;
      for (const auto& [a, b] : pairs) hits += (a <= u && b <= v) ? 1 : 0;
      const double emp = double(hits) / n;
      const double p = cdf(m, u, v);
      const double se = std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
      c.expect(std::fabs(emp - p) <= 4.5 * se, tag + " empirical CDF at (" + fmt(u) + "," +
                                                   fmt(v) + "): " + fmt(emp, 5) + " vs " +
                                                   fmt(p, 5));
    }
  }
}

void pickands_check(Checks& c, const PickandsFn& a, const std::string& tag) {
  c.expect(std::fabs(a(0.0) - 1.0) <= 1e-15 && std::fabs(a(1.0) - 1.0) <= 1e-15,
           tag + " endpoint values");
  for (int k = 0; k <= 1000; ++k) {
    const double w = k / 1000.0;
    const double value = a(w);
    c.expect(value >= std::max(w, 1.0 - w) - 1e-15 && value <= 1.0 + 1e-15,
             tag + " bounds at w = " + fmt(w));
    if (k > 0 && k < 1000) {
      const double h = 1e-3;
      c.expect(a(w) <= 0.5 * (a(w - h) + a(w + h)) + 1e-15, tag + " convexity at w = " + fmt(w));
    }
  }
}

void tail_properties(Checks& c, const TailCopulaFn& tail) {
  const std::string tag = tail.describe();
  const double grid[] = {0.05, 0.2, 0.5, 1.0, 2.0, 7.0};
  for (double x : grid) {
    for (double y : grid) {
      const double value = tail(x, y);
      c.expect(value <= std::min(x, y) + 1e-15, tag + " exceeds min(x, y)");
      c.expect(value >= 0.0, tag + " negative");
      for (double s : {0.01, 0.5, 3.0, 100.0}) {
        c.expect(std::fabs(tail(s * x, s * y) - s * value) <= 1e-12 * std::max(1.0, s * value),
                 tag + " not 1-homogeneous at (" + fmt(x) + "," + fmt(y) + ")");
      }
      c.expect(tail(1.1 * x, y) >= value - 1e-15 && tail(x, 1.1 * y) >= value - 1e-15,
               tag + " not nondecreasing at (" + fmt(x) + "," + fmt(y) + ")");
    }
  }
  for (double b : {1e-3, 0.1, 0.7, 1.0, 1.9, 40.0}) {
    c.expect(tail.profile(b) <= std::min(b, 1.0 / b) + 1e-15, tag + " profile above min(b, 1/b)");
  }
}

void properties(Checks& c) {
  for (const CopulaModel& m : property_models()) {
    frechet_and_increasing(c, m);
    sampler_check(c, m);
  }
  pickands_check(c, PickandsFn::asymmetric_logistic(0.35, 0.7, 2.0), "A(0.35,0.7,2)");
  pickands_check(c, PickandsFn::asymmetric_logistic(1.0, 1.0, 5.0), "A(1,1,5)");
  pickands_check(c, PickandsFn::asymmetric_logistic(0.2, 0.9, 1.3), "A(0.2,0.9,1.3)");
  pickands_check(c, PickandsFn::independence(), "A(indep)");
  pickands_check(c, PickandsFn::comonotone(), "A(comono)");

  tail_properties(c, TailCopulaFn::smo(0.35, 0.7));
  tail_properties(c, TailCopulaFn::ev(PickandsFn::asymmetric_logistic(0.35, 0.7, 2.0)));
  for (const TPair& tp : kTPairs) {
    const TailCopulaFn t = TailCopulaFn::tev(tp.nu, tp.rho);
    tail_properties(c, t);
    for (double b : {0.01, 0.3, 0.9, 2.5}) {
      c.expect(std::fabs(t.profile(b) - t.profile(1.0 / b)) <= 1e-10,
               t.describe() + " profile not symmetric under b -> 1/b");
    }
  }
  c.info("copula, Pickands, tail-copula and sampler properties hold on " +
         std::to_string(property_models().size()) + " models");
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* suite;
  const char* title;
  double time_limit;
  void (*body)(Checks&);
};

const Criterion kCriteria[] = {
    {"smo", "survival MO: b* and lambda* in closed form", 1.0, smo_closed_form},
    {"ag", "survival AG: b* = sqrt(beta/alpha)", 0.0, ag_mtcm},
    {"t", "t-copula: b* = 1 by profile and by L(s)", 0.0, t_unit_attainer},
    {"limits", "path limits match lambda* and b*", 60.0, path_limits},
    {"singular", "survival MO singular curve and Cardano roots", 0.0, singular},
    {"spectral", "t-EV spectral measure consistency", 30.0, spectral},
    {"m", "m(a): even, decreasing, closed form, log-derivative", 0.0, m_properties},
    {"fgm", "FGM(-1): boundary maximizers and degenerate tail", 0.0, fgm_diagnostic},
    {"numeric", "numeric tail copula vs analytic", 0.0, numeric_oracle},
    {"properties", "copula, Pickands, tail and sampler properties", 0.0, properties},
};

}  // namespace

const std::vector<std::string>& acceptance_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Criterion& c : kCriteria) out.emplace_back(c.suite);
    return out;
  }();
  return names;
}

std::optional<int> criterion_for_suite(std::string_view suite) {
  for (std::size_t i = 0; i < std::size(kCriteria); ++i) {
    if (suite == kCriteria[i].suite) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

CriterionResult run_criterion(int id) {
  if (id < 1 || id > static_cast<int>(std::size(kCriteria))) {
    throw DomainError("run_criterion: no criterion " + std::to_string(id));
  }
  const Criterion& spec = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.suite = spec.suite;
  result.title = spec.title;
  result.time_limit = spec.time_limit;

  Checks checks;
  const auto start = std::chrono::steady_clock::now();
  std::string crash;
  try {
    spec.body(checks);
  } catch (const std::exception& e) {
    crash = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  result.checks = checks.count();
  result.notes = checks.notes();
  result.passed = crash.empty() && checks.failures() == 0;
  if (!crash.empty()) result.notes.insert(result.notes.begin(), crash);
  if (spec.time_limit > 0.0 && result.seconds > spec.time_limit) {
    result.passed = false;
    result.notes.push_back("runtime " + fmt(result.seconds, 3) + " s exceeds " +
                           fmt(spec.time_limit) + " s");
  }
  return result;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << std::setw(2) << r.id << ' ' << std::left
     << std::setw(11) << r.suite << r.title << "  [" << r.checks << " checks, " << std::fixed
     << std::setprecision(2) << r.seconds << " s]";
  for (const std::string& note : r.notes) os << "\n       " << note;
  return os.str();
}

}  // namespace tailpath

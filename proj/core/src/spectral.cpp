#include "tailpath/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailpath/errors.hpp"

namespace tailpath {
namespace {

double validated_eta(double nu, double rho) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("SpectralModel: nu must be positive");
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("SpectralModel: rho must lie in (-1, 1)");
  return std::sqrt((nu + 1.0) / (1.0 - rho * rho));
}

QuadratureSpec tight(const QuadratureSpec& spec) {
  QuadratureSpec s = spec;
  s.abs_tol = std::min(s.abs_tol, 1e-13);
  s.rel_tol = std::min(s.rel_tol, 1e-11);
  return s;
}

// Density times |dw/du| for w = 1/(1 + u^nu): eta (1 + u^nu) t_{nu+1}(eta (u - rho)).
double h_jacobian(const SpectralModel& sm, double u) {
  return sm.eta() * (1.0 + std::pow(u, sm.nu())) * sm.t_nu1().pdf(sm.eta() * (u - sm.rho()));
}

// ln(1 + e^x)
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// ln h from ln w and ln(1 - w), usable where w or 1 - w rounds to 1.
double log_h(const SpectralModel& sm, double log_w, double log_1mw) {
  const double nu = sm.nu();
  const double r_root = std::exp((log_1mw - log_w) / nu);
  return std::log(sm.eta() / nu) + sm.t_nu1().log_pdf(sm.eta() * (r_root - sm.rho())) -
         (2.0 * nu + 1.0) / nu * log_w - (nu - 1.0) / nu * log_1mw;
}

}  // namespace

SpectralModel::SpectralModel(double nu, double rho)
    : nu_(nu), rho_(rho), eta_(validated_eta(nu, rho)), t_nu1_(nu + 1.0) {}

double h_density(const SpectralModel& sm, double w, double one_minus_w) {
  // w itself may round to 1 when one_minus_w carries the information
  if (!(w > 0.0 && w <= 1.0) || !(one_minus_w > 0.0 && one_minus_w <= 1.0)) {
    throw DomainError("h_density: w must lie in (0, 1)");
  }
  return std::exp(log_h(sm, std::log(w), std::log(one_minus_w)));
}

double h_density(const SpectralModel& sm, double w) { return h_density(sm, w, 1.0 - w); }

double endpoint_mass(const SpectralModel& sm) { return sm.t_nu1().cdf(-sm.eta() * sm.rho()); }

double interior_mass(const SpectralModel& sm, const QuadratureSpec& spec) {
  return integrate_adaptive([&](double u) { return h_jacobian(sm, u); }, 0.0,
                            std::numeric_limits<double>::infinity(), tight(spec));
}

double interior_first_moment(const SpectralModel& sm, const QuadratureSpec& spec) {
  const double nu = sm.nu();
  return integrate_adaptive(
      [&](double u) { return h_jacobian(sm, u) / (1.0 + std::pow(u, nu)); }, 0.0,
      std::numeric_limits<double>::infinity(), tight(spec));
}

double spectral_tail_copula(const SpectralModel& sm, double x, double y,
                            const QuadratureSpec& spec) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("spectral_tail_copula: x, y must be positive");
  const double nu = sm.nu();
  // In u with w = 1/(1 + u^nu): min(w x, (1-w) y) = min(x, u^nu y) / (1 + u^nu),
  // and the kink w = y/(x+y) sits at u = (x/y)^(1/nu).
  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double log_u = std::log(u);
    const double log1p_un = softplus(nu * log_u);
    const double log_w = -log1p_un;
    const double log_1mw = nu * log_u - log1p_un;
    const double kernel = std::min(x * std::exp(log_w), y * std::exp(log_1mw));
    // |dw/du| = nu u^(nu-1) w^2
    const double log_jac = std::log(nu) + (nu - 1.0) * log_u + 2.0 * log_w;
    return kernel * std::exp(log_h(sm, log_w, log_1mw) + log_jac);
  };
  const double kink = std::pow(x / y, 1.0 / nu);
  const QuadratureSpec s = tight(spec);
  return integrate_adaptive(integrand, 0.0, kink, s) +
         integrate_adaptive(integrand, kink, std::numeric_limits<double>::infinity(), s);
}

double m_transform(const SpectralModel& sm, double a) {
  if (!std::isfinite(a)) throw DomainError("m_transform: a must be finite");
  // ln w = -ln(1 + e^(-2a)), ln(1 - w) = -ln(1 + e^(2a))
  const double log_w = -softplus(-2.0 * a);
  const double log_1mw = -softplus(2.0 * a);
  return 2.0 * std::exp(1.5 * (log_w + log_1mw) + log_h(sm, log_w, log_1mw));
}

double m_transform_closed_form(const SpectralModel& sm, double a) {
  if (!(a > 0.0)) throw DomainError("m_transform_closed_form: a must be positive");
  const double nu = sm.nu();
  return 2.0 * sm.eta() / nu * std::exp(-(1.0 + 2.0 / nu) * a) *
         sm.t_nu1().pdf(sm.eta() * (std::exp(-2.0 * a / nu) - sm.rho()));
}

double m_log_derivative(const SpectralModel& sm, double a) {
  if (!(a > 0.0)) throw DomainError("m_log_derivative: a must be positive");
  const double nu = sm.nu();
  const double u = std::exp(-2.0 * a / nu);
  return (nu + 2.0) / nu * (u * u - 1.0) / (1.0 + u * u - 2.0 * sm.rho() * u);
}

double m_envelope_constant(const SpectralModel& sm) {
  return 2.0 * sm.eta() / sm.nu() * sm.t_nu1().pdf(0.0);
}

double L_of_s(const SpectralModel& sm, double s, const QuadratureSpec& spec) {
  if (!std::isfinite(s)) throw DomainError("L_of_s: s must be finite");
  // Beyond |a| = A the integrand is at most K e^(-c|a|), so the truncated
  // tails carry at most 2 K e^(-c A) / c.
  const double c = 1.0 + 2.0 / sm.nu();
  const double k = m_envelope_constant(sm);
  const double cutoff = std::log(2.0 * k / (c * 1e-16)) / c;
  auto integrand = [&](double a) { return std::exp(-std::fabs(s + a)) * m_transform(sm, a); };

  std::vector<double> breaks{-cutoff, -s, 0.0, cutoff};
  std::sort(breaks.begin(), breaks.end());
  const QuadratureSpec q = tight(spec);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(breaks[i], -cutoff);
    const double hi = std::min(breaks[i + 1], cutoff);
    if (hi > lo) total += integrate_adaptive(integrand, lo, hi, q);
  }
  return total;
}

}  // namespace tailpath

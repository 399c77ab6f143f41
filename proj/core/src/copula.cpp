#include "tailpath/copula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailpath/errors.hpp"
#include "tailpath/special_math.hpp"

namespace tailpath {
namespace {

void require_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "cdf: " << name << " = " << x << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

void require_shape(double p, const char* what) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1]");
}

// s + t - l(s, t) for the EV families, the exponent that drives both the
// lower tail of their survival copula and the tail copula itself.
double ev_tail_exponent(const CopulaModel& m, double s, double t) {
  if (const auto* mo = std::get_if<family::MarshallOlkin>(&m.params())) {
    return std::min(mo->alpha * s, mo->beta * t);
  }
  const auto& ag = m.as<family::AsymGumbel>();
  return PickandsFn::asymmetric_logistic(ag.alpha, ag.beta, ag.theta).tail_copula(s, t);
}

bool is_extreme_value(const CopulaModel& m) {
  return m.is<family::MarshallOlkin>() || m.is<family::AsymGumbel>();
}

double cdf_interior(const CopulaModel& model, double u, double v);

// C-hat(u, v) = u + v - 1 + C(1-u, 1-v).
double survival_cdf(const CopulaModel& inner, double u, double v) {
  if (is_extreme_value(inner)) {
    // With s = -ln(1-u), t = -ln(1-v), C(1-u, 1-v) = exp(-l(s, t)) and
    //   C-hat(u, v) = uv + (1-u)(1-v) expm1(s + t - l(s, t)),
    // which keeps full relative precision in the lower tail.
    const double s = -std::log1p(-u);
    const double t = -std::log1p(-v);
    return u * v + (1.0 - u) * (1.0 - v) * std::expm1(ev_tail_exponent(inner, s, t));
  }
  return u + v - 1.0 + cdf(inner, 1.0 - u, 1.0 - v);
}

double cdf_interior(const CopulaModel& model, double u, double v) {
  struct Visitor {
    double u;
    double v;
    double operator()(const family::Independence&) const { return u * v; }
    double operator()(const family::Comonotone&) const { return std::min(u, v); }
    double operator()(const family::Fgm& f) const {
      return u * v * (1.0 + f.theta * (1.0 - u) * (1.0 - v));
    }
    double operator()(const family::MarshallOlkin& mo) const {
      return std::min(std::pow(u, 1.0 - mo.alpha) * v, u * std::pow(v, 1.0 - mo.beta));
    }
    double operator()(const family::AsymGumbel& ag) const {
      const double s = -std::log(u);
      const double t = -std::log(v);
      return std::exp(-PickandsFn::asymmetric_logistic(ag.alpha, ag.beta, ag.theta)
                           .stable_tail(s, t));
    }
    double operator()(const family::StudentT& st) const {
      return t_copula_cdf(st.nu, st.rho, u, v);
    }
    double operator()(const family::SurvivalOf& sv) const { return survival_cdf(*sv.inner, u, v); }
  };
  return std::visit(Visitor{u, v}, model.params());
}

}  // namespace

PickandsFn PickandsFn::asymmetric_logistic(double alpha, double beta, double theta) {
  require_shape(alpha, "PickandsFn: alpha");
  require_shape(beta, "PickandsFn: beta");
  if (!(theta > 1.0) || !std::isfinite(theta)) {
    throw DomainError("PickandsFn: theta must exceed 1");
  }
  return {Kind::AsymmetricLogistic, alpha, beta, theta};
}

PickandsFn PickandsFn::independence() { return {Kind::Independence, 0.0, 0.0, 1.0}; }

PickandsFn PickandsFn::comonotone() { return {Kind::Comonotone, 1.0, 1.0, 0.0}; }

double PickandsFn::operator()(double w) const {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("PickandsFn: w outside [0, 1]");
  return stable_tail(w, 1.0 - w);
}

double PickandsFn::stable_tail(double x, double y) const {
  switch (kind_) {
    case Kind::Independence:
      return x + y;
    case Kind::Comonotone:
      return std::max(x, y);
    case Kind::AsymmetricLogistic:
      break;
  }
  return x + y - tail_copula(x, y);
}

double PickandsFn::tail_copula(double x, double y) const {
  switch (kind_) {
    case Kind::Independence:
      return 0.0;
    case Kind::Comonotone:
      return std::min(x, y);
    case Kind::AsymmetricLogistic:
      break;
  }
  const double p = alpha_ * x;
  const double q = beta_ * y;
  const double hi = std::max(p, q);
  if (hi == 0.0) return 0.0;
  const double lo = std::min(p, q);
  // ((p^theta + q^theta)^(1/theta)) = hi * (1 + (lo/hi)^theta)^(1/theta)
  const double r = std::pow(lo / hi, theta_);
  const double norm_excess = hi * std::expm1(std::log1p(r) / theta_);
  return std::max(0.0, lo - norm_excess);
}

CopulaModel CopulaModel::independence() { return CopulaModel(family::Independence{}); }

CopulaModel CopulaModel::comonotone() { return CopulaModel(family::Comonotone{}); }

CopulaModel CopulaModel::fgm(double theta) {
  if (!(theta >= -1.0 && theta <= 1.0)) throw DomainError("fgm: theta must lie in [-1, 1]");
  return CopulaModel(family::Fgm{theta});
}

CopulaModel CopulaModel::marshall_olkin(double alpha, double beta) {
  require_shape(alpha, "marshall_olkin: alpha");
  require_shape(beta, "marshall_olkin: beta");
  return CopulaModel(family::MarshallOlkin{alpha, beta});
}

CopulaModel CopulaModel::asym_gumbel(double alpha, double beta, double theta) {
  PickandsFn::asymmetric_logistic(alpha, beta, theta);  // validates
  return CopulaModel(family::AsymGumbel{alpha, beta, theta});
}

CopulaModel CopulaModel::student_t(double nu, double rho) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("student_t: nu must be positive");
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("student_t: rho must lie in (-1, 1)");
  return CopulaModel(family::StudentT{nu, rho});
}

CopulaModel CopulaModel::survival_of(const CopulaModel& inner) {
  return CopulaModel(family::SurvivalOf{std::make_shared<const CopulaModel>(inner)});
}

namespace {
struct ExchangeableVisitor {
  bool operator()(const family::MarshallOlkin& mo) const { return mo.alpha == mo.beta; }
  bool operator()(const family::AsymGumbel& ag) const { return ag.alpha == ag.beta; }
  bool operator()(const family::SurvivalOf& sv) const { return sv.inner->exchangeable(); }
  bool operator()(const auto&) const { return true; }
};
}  // namespace

bool CopulaModel::exchangeable() const { return std::visit(ExchangeableVisitor{}, params_); }

std::string CopulaModel::describe() const {
  struct Visitor {
    std::string operator()(const family::Independence&) const { return "indep"; }
    std::string operator()(const family::Comonotone&) const { return "comono"; }
    std::string operator()(const family::Fgm& f) const {
      std::ostringstream os;
      os << "fgm(theta=" << f.theta << ")";
      return os.str();
    }
    std::string operator()(const family::MarshallOlkin& mo) const {
      std::ostringstream os;
      os << "mo(alpha=" << mo.alpha << ",beta=" << mo.beta << ")";
      return os.str();
    }
    std::string operator()(const family::AsymGumbel& ag) const {
      std::ostringstream os;
      os << "ag(alpha=" << ag.alpha << ",beta=" << ag.beta << ",theta=" << ag.theta << ")";
      return os.str();
    }
    std::string operator()(const family::StudentT& st) const {
      std::ostringstream os;
      os << "t(nu=" << st.nu << ",rho=" << st.rho << ")";
      return os.str();
    }
    std::string operator()(const family::SurvivalOf& sv) const {
      return "surv-" + sv.inner->describe();
    }
  };
  return std::visit(Visitor{}, params_);
}

double cdf(const CopulaModel& model, double u, double v) {
  require_unit(u, "u");
  require_unit(v, "v");
  if (u == 0.0 || v == 0.0) return 0.0;
  if (u == 1.0) return v;
  if (v == 1.0) return u;
  const double c = cdf_interior(model, u, v);
  return std::clamp(c, std::max(u + v - 1.0, 0.0), std::min(u, v));
}

CopulaModel survival(const CopulaModel& model) {
  if (model.is_survival()) return model.inner();
  return CopulaModel::survival_of(model);
}

double t_copula_cdf(double nu, double rho, double u, double v) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("t_copula_cdf: nu must be positive");
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("t_copula_cdf: rho must lie in (-1, 1)");
  require_unit(u, "u");
  require_unit(v, "v");
  if (u == 0.0 || v == 0.0) return 0.0;
  if (u == 1.0) return v;
  if (v == 1.0) return u;

  // Exchangeable: condition on the smaller margin. With s = T_nu(z),
  //   C(a, b) = int_{-inf}^{q_a} t_nu(z) T_{nu+1}((q_b - rho z) sqrt((nu+1)/(nu+z^2)) / sqrt(1-rho^2)) dz.
  const double a = std::min(u, v);
  const double b = std::max(u, v);
  const StudentT t_nu(nu);
  const StudentT t_nu1(nu + 1.0);
  const double q_a = t_nu.quantile(a);
  const double q_b = t_nu.quantile(b);
  const double inv_sd = 1.0 / std::sqrt(1.0 - rho * rho);
  auto integrand = [&](double z) {
    const double scale = std::sqrt((nu + 1.0) / (nu + z * z));
    return t_nu.pdf(z) * t_nu1.cdf((q_b - rho * z) * scale * inv_sd);
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-14 * a;
  spec.rel_tol = 1e-11;
  const double value = integrate_adaptive(integrand, -std::numeric_limits<double>::infinity(),
                                          q_a, spec);
  return std::clamp(value, std::max(u + v - 1.0, 0.0), a);
}

double conditional_cdf(const CopulaModel& model, double u, double v) {
  constexpr double kStep = 1e-6;
  const double lo = std::max(0.0, u - kStep);
  const double hi = std::min(1.0, u + kStep);
  return (cdf(model, hi, v) - cdf(model, lo, v)) / (hi - lo);
}

}  // namespace tailpath

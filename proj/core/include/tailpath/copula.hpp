#pragma once

// Parametrized bivariate copula families, the survival transform, and
// samplers.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tailpath {

// Pickands dependence function A on [0, 1]. The asymmetric logistic member is
//   A(w) = (1-alpha) w + (1-beta)(1-w) + ((alpha w)^theta + (beta (1-w))^theta)^(1/theta),
// with w attached to the first coordinate: the stable tail dependence
// function is l(x, y) = (x + y) A(x / (x + y)).
class PickandsFn {
 public:
  enum class Kind { AsymmetricLogistic, Independence, Comonotone };

  static PickandsFn asymmetric_logistic(double alpha, double beta, double theta);
  static PickandsFn independence();
  static PickandsFn comonotone();

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double theta() const noexcept { return theta_; }

  double operator()(double w) const;

  // l(x, y) for x, y >= 0.
  double stable_tail(double x, double y) const;

  // x + y - l(x, y), evaluated without the cancellation of the naive form.
  double tail_copula(double x, double y) const;

 private:
  PickandsFn(Kind kind, double alpha, double beta, double theta)
      : kind_(kind), alpha_(alpha), beta_(beta), theta_(theta) {}

  Kind kind_;
  double alpha_;
  double beta_;
  double theta_;
};

class CopulaModel;

namespace family {
struct Independence {};
struct Comonotone {};
struct Fgm {
  double theta;
};
struct MarshallOlkin {
  double alpha;
  double beta;
};
struct AsymGumbel {
  double alpha;
  double beta;
  double theta;
};
struct StudentT {
  double nu;
  double rho;
};
struct SurvivalOf {
  std::shared_ptr<const CopulaModel> inner;
};
}  // namespace family

// Immutable bivariate copula value. Construct through the named factories,
// which validate the parameter domains.
class CopulaModel {
 public:
  using Params = std::variant<family::Independence, family::Comonotone, family::Fgm,
                              family::MarshallOlkin, family::AsymGumbel, family::StudentT,
                              family::SurvivalOf>;

  static CopulaModel independence();
  static CopulaModel comonotone();
  static CopulaModel fgm(double theta);
  static CopulaModel marshall_olkin(double alpha, double beta);
  static CopulaModel asym_gumbel(double alpha, double beta, double theta);
  static CopulaModel student_t(double nu, double rho);
  static CopulaModel survival_of(const CopulaModel& inner);

  const Params& params() const noexcept { return params_; }

  template <typename F>
  bool is() const noexcept {
    return std::holds_alternative<F>(params_);
  }
  template <typename F>
  const F& as() const {
    return std::get<F>(params_);
  }

  bool is_survival() const noexcept { return is<family::SurvivalOf>(); }
  // Inner model of a SurvivalOf; throws std::bad_variant_access otherwise.
  const CopulaModel& inner() const { return *as<family::SurvivalOf>().inner; }

  // Exchangeable: C(u, v) = C(v, u).
  bool exchangeable() const;

  // Human-readable description such as "surv-mo(alpha=0.35,beta=0.7)".
  std::string describe() const;

 private:
  explicit CopulaModel(Params p) : params_(std::move(p)) {}
  Params params_;
};

// C(u, v) for u, v in [0, 1]. Boundary values are returned exactly.
double cdf(const CopulaModel& model, double u, double v);

// Model of (1-U, 1-V). survival(survival(m)) returns m itself.
CopulaModel survival(const CopulaModel& model);

// Bivariate t-copula CDF by adaptive quadrature of the conditional
// distribution, absolute error well below 1e-8.
double t_copula_cdf(double nu, double rho, double u, double v);

using UniformPair = std::pair<double, double>;

// n iid pairs from the model, deterministic in `seed`.
std::vector<UniformPair> sample(const CopulaModel& model, std::size_t n, std::uint64_t seed);

// Numeric dC/du(u, v) by central differences (step 1e-6, one-sided at the
// boundary); the conditional CDF of V given U = u.
double conditional_cdf(const CopulaModel& model, double u, double v);

}  // namespace tailpath

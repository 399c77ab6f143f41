#include "tailpath/tail.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailpath/errors.hpp"
#include "tailpath/special_math.hpp"

namespace tailpath {
namespace {

void require_positive(double x, double y, const char* where) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError(std::string(where) + ": x and y must be positive and finite");
  }
}

}  // namespace

double tail_copula_smo(double alpha, double beta, double x, double y) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("tail_copula_smo: alpha and beta must lie in (0, 1]");
  }
  require_positive(x, y, "tail_copula_smo");
  return std::min(alpha * x, beta * y);
}

double tail_copula_from_pickands(const PickandsFn& pickands, double x, double y) {
  require_positive(x, y, "tail_copula_from_pickands");
  return pickands.tail_copula(x, y);
}

double tail_copula_tev(double nu, double rho, double x, double y) {
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("tail_copula_tev: rho must lie in (-1, 1)");
  require_positive(x, y, "tail_copula_tev");
  const StudentT dist(nu + 1.0);
  const double eta = std::sqrt((nu + 1.0) / (1.0 - rho * rho));
  const double ratio = std::pow(y / x, -1.0 / nu);
  return x * dist.cdf(eta * (rho - ratio)) + y * dist.cdf(eta * (rho - 1.0 / ratio));
}

std::vector<double> default_t_sequence() {
  std::vector<double> seq;
  for (double t = 1e-1; t >= 1e-5; t *= 0.5) seq.push_back(t);
  return seq;
}

TailEstimate tail_copula_numeric(const CopulaModel& model, double x, double y,
                                 std::span<const double> t_sequence) {
  require_positive(x, y, "tail_copula_numeric");
  if (t_sequence.size() < 3) {
    throw DomainError("tail_copula_numeric: need at least three t values");
  }
  const double top = std::max(x, y);
  for (std::size_t k = 0; k < t_sequence.size(); ++k) {
    const double t = t_sequence[k];
    if (!(t > 0.0) || (k > 0 && !(t < t_sequence[k - 1]))) {
      throw DomainError("tail_copula_numeric: t sequence must be positive and strictly decreasing");
    }
    if (t * top > 1.0) {
      throw DomainError("tail_copula_numeric: t * max(x, y) must not exceed 1");
    }
  }

  TailEstimate est;
  est.ratios.reserve(t_sequence.size());
  for (const double t : t_sequence) est.ratios.push_back(cdf(model, t * x, t * y) / t);

  const LimitEstimate limit = extrapolate_limit(est.ratios);
  est.value = limit.value;
  est.error = limit.error;
  return est;
}

TailEstimate tail_copula_numeric(const CopulaModel& model, double x, double y) {
  const std::vector<double> seq = default_t_sequence();
  return tail_copula_numeric(model, x, y, seq);
}

TailCopulaFn TailCopulaFn::smo(double alpha, double beta) {
  tail_copula_smo(alpha, beta, 1.0, 1.0);  // validates
  return TailCopulaFn(Smo{alpha, beta});
}

TailCopulaFn TailCopulaFn::ev(const PickandsFn& pickands) { return TailCopulaFn(Ev{pickands}); }

TailCopulaFn TailCopulaFn::tev(double nu, double rho) {
  tail_copula_tev(nu, rho, 1.0, 1.0);  // validates
  return TailCopulaFn(Tev{nu, rho});
}

TailCopulaFn TailCopulaFn::numeric(const CopulaModel& model, std::vector<double> t_sequence) {
  if (t_sequence.size() < 3) throw DomainError("TailCopulaFn::numeric: need three t values");
  return TailCopulaFn(NumericLimit{model, std::move(t_sequence)});
}

double TailCopulaFn::operator()(double x, double y) const {
  struct Visitor {
    double x;
    double y;
    double operator()(const Smo& s) const { return tail_copula_smo(s.alpha, s.beta, x, y); }
    double operator()(const Ev& e) const { return tail_copula_from_pickands(e.pickands, x, y); }
    double operator()(const Tev& t) const { return tail_copula_tev(t.nu, t.rho, x, y); }
    double operator()(const NumericLimit& n) const {
      require_positive(x, y, "TailCopulaFn");
      const double m = std::max(x, y);
      return m * tail_copula_numeric(n.model, x / m, y / m, n.t_sequence).value;
    }
  };
  return std::visit(Visitor{x, y}, source_);
}

std::string TailCopulaFn::describe() const {
  struct Visitor {
    std::string operator()(const Smo& s) const {
      std::ostringstream os;
      os << "smo(alpha=" << s.alpha << ",beta=" << s.beta << ")";
      return os.str();
    }
    std::string operator()(const Ev& e) const {
      std::ostringstream os;
      switch (e.pickands.kind()) {
        case PickandsFn::Kind::Independence:
          return "pickands(independence)";
        case PickandsFn::Kind::Comonotone:
          return "pickands(comonotone)";
        case PickandsFn::Kind::AsymmetricLogistic:
          break;
      }
      os << "pickands(alpha=" << e.pickands.alpha() << ",beta=" << e.pickands.beta()
         << ",theta=" << e.pickands.theta() << ")";
      return os.str();
    }
    std::string operator()(const Tev& t) const {
      std::ostringstream os;
      os << "tev(nu=" << t.nu << ",rho=" << t.rho << ")";
      return os.str();
    }
    std::string operator()(const NumericLimit& n) const {
      return "numeric(" + n.model.describe() + ")";
    }
  };
  return std::visit(Visitor{}, source_);
}

TailCopulaFn tail_copula_for(const CopulaModel& model) {
  if (const auto* st = std::get_if<family::StudentT>(&model.params())) {
    return TailCopulaFn::tev(st->nu, st->rho);
  }
  if (model.is<family::Comonotone>()) return TailCopulaFn::ev(PickandsFn::comonotone());
  if (model.is<family::Independence>()) return TailCopulaFn::ev(PickandsFn::independence());
  if (model.is_survival()) {
    const CopulaModel& inner = model.inner();
    if (const auto* mo = std::get_if<family::MarshallOlkin>(&inner.params())) {
      return TailCopulaFn::smo(mo->alpha, mo->beta);
    }
    if (const auto* ag = std::get_if<family::AsymGumbel>(&inner.params())) {
      return TailCopulaFn::ev(PickandsFn::asymmetric_logistic(ag->alpha, ag->beta, ag->theta));
    }
    // Radially symmetric families.
    if (inner.is<family::StudentT>() || inner.is<family::Comonotone>() ||
        inner.is<family::Independence>()) {
      return tail_copula_for(inner);
    }
  }
  return TailCopulaFn::numeric(model);
}

MtcmResult mtcm(const TailCopulaFn& tail, const MtcmOptions& options) {
  if (!(options.initial_bracket > 1.0)) throw DomainError("mtcm: bracket must exceed 1");
  auto profile = [&tail](double s) { return tail(std::exp(s), std::exp(-s)); };

  MtcmResult result;
  double bracket = options.initial_bracket;
  GridScan scan;
  for (int expansion = 0;; ++expansion) {
    const double half_width = std::log(bracket);
    scan = scan_grid(profile, -half_width, half_width, options.n_grid);
    result.n_evals += options.n_grid;
    const double best = scan.fx[scan.best];
    if (!(best >= options.degeneracy_threshold)) {
      std::ostringstream os;
      os << "mtcm: degenerate tail copula (profile maximum " << best << " below "
         << options.degeneracy_threshold << ")";
      throw DegenerateTailError(os.str(), best);
    }
    // Outside [1/L, L] the profile is at most 1/L, so the search region is
    // provably sufficient once the interior maximum exceeds 1/L and does not
    // hug the edge.
    const bool near_edge = std::fabs(scan.x[scan.best]) > 0.95 * half_width;
    const bool bound_ok = best > 1.0 / bracket;
    if ((!near_edge && bound_ok) || expansion >= options.max_expansions) break;
    bracket *= options.bracket_growth;
  }

  const OptimResult1D refined = refine_grid_max(profile, scan, options.tol);
  result.n_evals += refined.evaluations - options.n_grid;
  result.b_star = std::exp(refined.argmax);
  result.lambda_star = refined.max_value;
  result.bracket = bracket;
  result.boundary_anomaly = std::fabs(refined.argmax) > 0.95 * std::log(bracket);

  const double tie = options.tie_tolerance * std::max(std::fabs(refined.max_value), 1e-300);
  for (std::size_t i = 0; i < scan.x.size(); ++i) {
    const bool in_cell = i + 1 >= scan.best && i <= scan.best + 1;
    if (!in_cell && scan.fx[i] >= refined.max_value - tie) {
      result.unique = false;
      break;
    }
  }

  result.profile_samples.reserve(scan.x.size());
  for (std::size_t i = 0; i < scan.x.size(); ++i) {
    result.profile_samples.push_back({std::exp(scan.x[i]), scan.fx[i]});
  }
  return result;
}

}  // namespace tailpath

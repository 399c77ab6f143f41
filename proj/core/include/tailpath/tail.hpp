#pragma once

// Tail copulas Lambda(x, y) = lim_{t->0} C(tx, ty) / t, the profile tail
// copula b -> Lambda(b, 1/b), and its maximization (the maximal tail
// concordance measure lambda* with attainer b*).

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tailpath/copula.hpp"

namespace tailpath {

// min(alpha x, beta y): tail copula of the survival Marshall-Olkin copula.
double tail_copula_smo(double alpha, double beta, double x, double y);

// x + y - l(x, y) for the stable tail dependence function of A.
double tail_copula_from_pickands(const PickandsFn& pickands, double x, double y);

// Tail copula of the survival t-EV copula (equivalently of the t-copula):
//   x T_{nu+1}(eta [rho - (y/x)^(-1/nu)]) + y T_{nu+1}(eta [rho - (x/y)^(-1/nu)]),
// eta = sqrt((nu + 1) / (1 - rho^2)).
double tail_copula_tev(double nu, double rho, double x, double y);

// Geometric sequence 1e-1 * 2^-k, k = 0, 1, ..., down to 1e-5.
std::vector<double> default_t_sequence();

struct TailEstimate {
  double value = 0.0;
  double error = 0.0;
  // C(t x, t y) / t along the sequence.
  std::vector<double> ratios;
};

// Numeric limit of C(tx, ty)/t along a strictly decreasing t sequence (at
// least three points, t * max(x, y) <= 1). The value is the Aitken
// (rate-estimating Richardson) extrapolation of the last three ratios; the
// error is the larger of the last-two-ratio spread and the change between the
// last two extrapolants.
TailEstimate tail_copula_numeric(const CopulaModel& model, double x, double y,
                                 std::span<const double> t_sequence);
TailEstimate tail_copula_numeric(const CopulaModel& model, double x, double y);

class TailCopulaFn {
 public:
  struct Smo {
    double alpha;
    double beta;
  };
  struct Ev {
    PickandsFn pickands;
  };
  struct Tev {
    double nu;
    double rho;
  };
  struct NumericLimit {
    CopulaModel model;
    std::vector<double> t_sequence;
  };
  using Source = std::variant<Smo, Ev, Tev, NumericLimit>;

  static TailCopulaFn smo(double alpha, double beta);
  static TailCopulaFn ev(const PickandsFn& pickands);
  static TailCopulaFn tev(double nu, double rho);
  static TailCopulaFn numeric(const CopulaModel& model,
                              std::vector<double> t_sequence = default_t_sequence());

  const Source& source() const noexcept { return source_; }
  bool analytic() const noexcept { return !std::holds_alternative<NumericLimit>(source_); }

  // Lambda(x, y) for x, y > 0. The numeric source evaluates at
  // (x, y) / max(x, y) and rescales, so any (x, y) is admissible.
  double operator()(double x, double y) const;

  // Lambda(b, 1/b).
  double profile(double b) const { return (*this)(b, 1.0 / b); }

  std::string describe() const;

 private:
  explicit TailCopulaFn(Source s) : source_(std::move(s)) {}
  Source source_;
};

// Analytic tail copula of the model's lower tail when one is known, the
// numeric limit otherwise.
TailCopulaFn tail_copula_for(const CopulaModel& model);

struct MtcmOptions {
  double initial_bracket = 1e3;  // search b in [1/L, L]
  double bracket_growth = 10.0;
  int max_expansions = 6;
  int n_grid = 512;
  double tol = 1e-10;  // on s = ln b
  double degeneracy_threshold = 1e-10;
  // Grid values within this (relative) distance of the maximum count as
  // near-ties for the uniqueness flag.
  double tie_tolerance = 1e-9;
};

struct ProfileSample {
  double b;
  double value;
};

struct MtcmResult {
  double b_star = 1.0;
  double lambda_star = 0.0;
  bool unique = true;
  int n_evals = 0;
  double bracket = 0.0;
  // Maximizer within 5% (in ln b) of the final bracket edge.
  bool boundary_anomaly = false;
  std::vector<ProfileSample> profile_samples;
};

// Maximizes s -> Lambda(e^s, e^-s) by grid scan plus Brent refinement.
// Throws DegenerateTailError when the profile maximum is below the
// degeneracy threshold.
MtcmResult mtcm(const TailCopulaFn& tail, const MtcmOptions& options = {});

}  // namespace tailpath

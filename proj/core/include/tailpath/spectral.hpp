#pragma once

// Spectral (angular) measure of the bivariate t-EV copula: interior density
// h, endpoint atoms, the transform m(a) and the profile integral L(s).

#include "tailpath/special_math.hpp"

namespace tailpath {

class SpectralModel {
 public:
  SpectralModel(double nu, double rho);

  double nu() const noexcept { return nu_; }
  double rho() const noexcept { return rho_; }
  // sqrt((nu + 1) / (1 - rho^2))
  double eta() const noexcept { return eta_; }
  const StudentT& t_nu1() const noexcept { return t_nu1_; }

 private:
  double nu_;
  double rho_;
  double eta_;
  StudentT t_nu1_;
};

// h(w) = (eta/nu) t_{nu+1}(eta (r(w)^(1/nu) - rho)) / (w^((2nu+1)/nu) (1-w)^((nu-1)/nu)),
// r(w) = (1 - w)/w, for w in (0, 1).
double h_density(const SpectralModel& sm, double w);

// Same density with 1 - w supplied exactly (w + one_minus_w == 1 in exact
// arithmetic), for arguments near w = 1.
double h_density(const SpectralModel& sm, double w, double one_minus_w);

// Mass of each atom at w = 0 and w = 1: T_{nu+1}(-eta rho).
double endpoint_mass(const SpectralModel& sm);

// int_0^1 h(w) dw and int_0^1 w h(w) dw by quadrature in u = r(w)^(1/nu),
// which removes the endpoint power singularities.
double interior_mass(const SpectralModel& sm, const QuadratureSpec& spec = {});
double interior_first_moment(const SpectralModel& sm, const QuadratureSpec& spec = {});

// int_0^1 min(w x, (1-w) y) h(w) dw, split at the kink w = y/(x+y).
double spectral_tail_copula(const SpectralModel& sm, double x, double y,
                            const QuadratureSpec& spec = {});

// m(a) = 2 (w(1-w))^(3/2) h(w), w = e^(2a)/(1 + e^(2a)).
double m_transform(const SpectralModel& sm, double a);

// (2 eta/nu) e^(-(1+2/nu) a) t_{nu+1}(eta (e^(-2a/nu) - rho)), valid for a > 0.
double m_transform_closed_form(const SpectralModel& sm, double a);

// d/da ln m(a) = ((nu+2)/nu) (u^2 - 1)/(1 + u^2 - 2 rho u), u = e^(-2a/nu), a > 0.
double m_log_derivative(const SpectralModel& sm, double a);

// K = (2 eta / nu) sup t_{nu+1}: m(a) <= K e^(-(1+2/nu) a) for a > 0.
double m_envelope_constant(const SpectralModel& sm);

// L(s) = int e^(-|s + a|) m(a) da over the real line, split at a = -s and
// a = 0, truncated where the exponential envelope of m falls below 1e-16.
double L_of_s(const SpectralModel& sm, double s, const QuadratureSpec& spec = {});

}  // namespace tailpath

#pragma once

#include <stdexcept>
#include <string>

namespace tailpath {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed user input such as a model string or schedule list.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative kernel (quadrature, root finding, inversion) failed to reach
// its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root bracket without a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The tail copula is identically zero (up to the degeneracy threshold), so
// the maximal tail concordance measure and its attainer are undefined.
class DegenerateTailError : public std::runtime_error {
 public:
  explicit DegenerateTailError(const std::string& what, double max_profile = 0.0)
      : std::runtime_error(what), max_profile_(max_profile) {}
  double max_profile() const noexcept { return max_profile_; }

 private:
  double max_profile_;
};

// Conditional-distribution inversion failed for a particular uniform pair.
class InversionError : public ConvergenceError {
 public:
  InversionError(const std::string& what, double u, double p)
      : ConvergenceError(what), u_(u), p_(p) {}
  double u() const noexcept { return u_; }
  double p() const noexcept { return p_; }

 private:
  double u_;
  double p_;
};

}  // namespace tailpath

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace tailpath {

// Strictly decreasing sequence of u values in (0, 1]. Shared by the path
// search and the singular-curve report so their rows align exactly.
class Schedule {
 public:
  explicit Schedule(std::vector<double> u);

  // 10^-1, 10^-1.5, ..., 10^-4.
  static Schedule default_path();
  // n log-spaced values from u_max down to u_min, both included.
  static Schedule log_spaced(double u_max, double u_min, int n);
  // "default" or a comma-separated list of decreasing values. Throws
  // ParseError on malformed or non-decreasing input.
  static Schedule parse(std::string_view text);

  const std::vector<double>& values() const noexcept { return u_; }
  std::size_t size() const noexcept { return u_.size(); }
  double operator[](std::size_t i) const { return u_[i]; }
  double smallest() const { return u_.back(); }
  auto begin() const noexcept { return u_.begin(); }
  auto end() const noexcept { return u_.end(); }

  bool operator==(const Schedule&) const = default;

 private:
  std::vector<double> u_;
};

}  // namespace tailpath

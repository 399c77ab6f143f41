#include "tailpath/schedule.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "tailpath/errors.hpp"

namespace tailpath {

Schedule::Schedule(std::vector<double> u) : u_(std::move(u)) {
  if (u_.empty()) throw DomainError("Schedule: empty");
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (!(u_[i] > 0.0 && u_[i] <= 1.0)) throw DomainError("Schedule: values must lie in (0, 1]");
    if (i > 0 && !(u_[i] < u_[i - 1])) throw DomainError("Schedule: values must strictly decrease");
  }
}

Schedule Schedule::default_path() {
  std::vector<double> u;
  for (int k = 0; k <= 6; ++k) u.push_back(std::pow(10.0, -1.0 - 0.5 * k));
  return Schedule(std::move(u));
}

Schedule Schedule::log_spaced(double u_max, double u_min, int n) {
  if (n < 2) throw DomainError("Schedule::log_spaced: need at least two points");
  if (!(u_min > 0.0 && u_min < u_max && u_max <= 1.0)) {
    throw DomainError("Schedule::log_spaced: need 0 < u_min < u_max <= 1");
  }
  const double lo = std::log(u_min);
  const double hi = std::log(u_max);
  std::vector<double> u;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      u.push_back(u_max);
    } else if (k == n - 1) {
      u.push_back(u_min);
    } else {
      u.push_back(std::exp(hi + (lo - hi) * k / (n - 1)));
    }
  }
  return Schedule(std::move(u));
}

Schedule Schedule::parse(std::string_view text) {
  if (text == "default") return default_path();
  std::vector<double> u;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw ParseError("Schedule: cannot parse '" + std::string(item) + "'");
    }
    u.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  try {
    return Schedule(std::move(u));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace tailpath

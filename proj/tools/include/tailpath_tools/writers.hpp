#pragma once

// CSV, JSON-table and SVG artifact writers. Every file is written to a
// temporary sibling and renamed into place.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tailpath::tools {

// 17 significant digits; non-finite values print as nan, inf, -inf.
std::string format_double(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<double> values);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  std::vector<double> column(std::string_view name) const;

  std::string to_csv() const;
  // Array of {column: value} objects.
  std::string to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

void write_atomic(const std::filesystem::path& path, std::string_view content);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool points = false;  // scatter instead of a polyline
  std::string color = "#1f77b4";
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  // Fixed axis ranges; left empty, ranges come from the data.
  std::vector<double> x_range;
  std::vector<double> y_range;
};

std::string svg_chart(const ChartSpec& spec, const std::vector<Series>& series);

}  // namespace tailpath::tools

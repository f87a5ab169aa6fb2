#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rejuv::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line chart; axes auto-scale to the data.
void write_line_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series);

}  // namespace rejuv::cli

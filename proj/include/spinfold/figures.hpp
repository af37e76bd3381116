#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spinfold {

struct FigureOptions {
  int grid = 200;
  bool oracle = false;  // adds an oracle column evaluated on the same grid
};

struct FigureInfo {
  std::string id;
  std::string formula_id;
  std::string x_quantity;
  std::string y_quantity;
  std::vector<std::string> series;
};

std::vector<std::string> figure_ids();
FigureInfo figure_info(std::string_view figure_id);

// CSV with header series,x,y (plus oracle when requested), one row per series and grid point.
std::string run_figure(std::string_view figure_id, const FigureOptions& options = {});

}  // namespace spinfold

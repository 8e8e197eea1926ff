#pragma once

#include <string>
#include <vector>

#include "rankreg/sample.hpp"

namespace rankreg::cli {

// Column-name mapping from CSV headers to sample fields; empty names mean
// the column is not mapped.
struct ColumnMap {
  std::string y;
  std::string w;
  std::vector<std::string> x;
  std::string z;
  std::string run;
  std::string y_pre;
};

// Strict numeric CSV with a header row: UTF-8, comma separators, '.' decimal
// point, no quoting, missing values rejected with their row number.
Sample load_csv_sample(const std::string& path, const ColumnMap& map);

// Panel view: y is the post-period outcome, y_pre the pre-period one.
PanelSample load_csv_panel(const std::string& path, const ColumnMap& map);

}  // namespace rankreg::cli

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fte {

// Line styles mirror the figure legend conventions: "solid", "dashed",
// "dash-dot".
struct Series {
  std::string label;
  std::string style = "solid";
  std::vector<double> t;
  std::vector<double> y;
};

struct PanelSpec {
  std::string title;
  std::string x_label = "time [s]";
  std::string y_label;
  bool log_y = false;  // plots log10(max(|y|, 1e-16)) with decade ticks
  std::vector<Series> series;
};

// Static, self-contained line plot; panels stack vertically. Axes are linear
// unless a panel asks for a log ordinate. The y-range auto-fits the data with
// 5% padding. Output bytes are deterministic for identical input.
void emit_svg(const std::vector<PanelSpec>& panels,
              const std::filesystem::path& path);

}  // namespace fte

#pragma once

#include <string>
#include <vector>

#include "berezin/ranges.hpp"

namespace berezin {

struct FigureData {
  int number = 1;
  double shift = 0.0;  ///< real multiple of I added to D_phi
  DphiBounds bounds;
  /// Sampled Berezin values and the numerical-range boundary of the truncation.
  std::vector<Complex> berezin;
  std::vector<Complex> nrange;
  Classification classes;
  std::string command;
  std::string version;
};

/// Self-contained SVG: blue disk r1, green circle r2, red circle r3, axes, legend,
/// and sector rays at the Berezin index when the shift is nonzero.
std::string render_figure_svg(const FigureData& fig);

}  // namespace berezin

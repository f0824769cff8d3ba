#pragma once

#include <cstddef>
#include <vector>

#include "berezin/numerics.hpp"

namespace berezin {

/// Points with modulus at or below this are treated as the sector vertex.
inline constexpr double kVertexTolerance = 1e-10;

/**
 * Sectorial classification of a point cloud against S_theta = {|arg z| <= theta}.
 * On success `index` is the smallest semi-angle containing every sample; on
 * failure `violations` lists the offending samples.
 */
struct SectorReport {
  bool success = false;
  double index = 0.0;
  Complex witness{0.0, 0.0};
  std::size_t witness_index = 0;
  std::vector<Complex> violations;
};

SectorReport sector_index(const std::vector<Complex>& points, double tol = kVertexTolerance);

}  // namespace berezin

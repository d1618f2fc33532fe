#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ectmol/ect.hpp"

namespace ectmol {

// Step curve of chi over the threshold grid.  Text output is deterministic:
// identical inputs render byte-identical SVG.
std::string ecc_svg(const ThresholdGrid& grid, std::span<const std::int32_t> ecc);

// Directions as columns, thresholds as rows, linear grayscale from the
// minimum to the maximum Euler characteristic.
std::string ect_heatmap_svg(const ECTDescriptor& descriptor);

}  // namespace ectmol

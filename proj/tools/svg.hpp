#pragma once

#include <optional>
#include <string>
#include <vector>

#include "doa/grid.hpp"

namespace doa::cli {

/// Renders a 2-D grid mask: generation-0 cells dark grey, cells first claimed
/// by later charts light grey, and the zero level of `exact_level` (when
/// given) as a thick black line.
std::string render_svg(const Atlas& atlas, const GridSpec& grid,
                       const std::vector<RealClassification>& cells,
                       std::optional<int> exact_example);

}  // namespace doa::cli

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "doa/atlas.hpp"
#include "doa/types.hpp"

namespace doa {

/// Fixes one state coordinate when sampling a 2-D slice of a 3-D system.
struct SliceSpec {
  int axis = 0;  // 0-based
  double value = 0.0;
};

/// Regular grid over a box; `resolution[i]` nodes per axis including both
/// ends. Sliced axes are held at the slice value. Nodes are enumerated
/// row-major with the first free axis slowest.
class GridSpec {
 public:
  GridSpec(RealVector lo, RealVector hi, std::vector<int> resolution,
           std::optional<SliceSpec> slice = std::nullopt);

  int dim() const { return static_cast<int>(lo_.size()); }
  std::size_t size() const { return size_; }
  const std::vector<int>& free_axes() const { return free_; }
  const std::optional<SliceSpec>& slice() const { return slice_; }
  const RealVector& lo() const { return lo_; }
  const RealVector& hi() const { return hi_; }
  const std::vector<int>& resolution() const { return resolution_; }

  RealVector point(std::size_t index) const;

 private:
  RealVector lo_;
  RealVector hi_;
  std::vector<int> resolution_;
  std::optional<SliceSpec> slice_;
  std::vector<int> free_;
  std::size_t size_ = 1;
};

/// classify_real at every grid node, in grid order.
std::vector<RealClassification> classify_grid(const Atlas& atlas,
                                              const GridSpec& grid,
                                              int workers = 1,
                                              int max_generation = -1);

std::size_t count_members(const std::vector<RealClassification>& cells);

}  // namespace doa

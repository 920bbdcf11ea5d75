#include "doa/grid.hpp"

#include <stdexcept>

#include "doa/errors.hpp"
#include "doa/parallel.hpp"

namespace doa {

GridSpec::GridSpec(RealVector lo, RealVector hi, std::vector<int> resolution,
                   std::optional<SliceSpec> slice)
    : lo_(std::move(lo)),
      hi_(std::move(hi)),
      resolution_(std::move(resolution)),
      slice_(slice) {
  const int n = dim();
  if (hi_.size() != n || static_cast<int>(resolution_.size()) != n) {
    throw Error("grid bounds and resolution must match the dimension");
  }
  if (slice_ && (slice_->axis < 0 || slice_->axis >= n)) {
    throw Error("slice axis outside the system dimension");
  }
  if (slice_ && n != 3) throw Error("slices are only supported for n = 3");
  for (int a = 0; a < n; ++a) {
    if (slice_ && slice_->axis == a) continue;
    if (resolution_[static_cast<std::size_t>(a)] < 2) {
      throw Error("grid resolution must be at least 2 per axis");
    }
    if (!(hi_(a) > lo_(a))) throw Error("grid bounds must satisfy lo < hi");
    free_.push_back(a);
    size_ *= static_cast<std::size_t>(resolution_[static_cast<std::size_t>(a)]);
  }
}

RealVector GridSpec::point(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("grid index");
  RealVector x(dim());
  if (slice_) x(slice_->axis) = slice_->value;
  for (auto it = free_.rbegin(); it != free_.rend(); ++it) {
    const int a = *it;
    const auto res = static_cast<std::size_t>(resolution_[static_cast<std::size_t>(a)]);
    const std::size_t i = index % res;
    index /= res;
    x(a) = lo_(a) + (hi_(a) - lo_(a)) * static_cast<double>(i) /
                        static_cast<double>(res - 1);
  }
  return x;
}

std::vector<RealClassification> classify_grid(const Atlas& atlas,
                                              const GridSpec& grid,
                                              int workers, int max_generation) {
  if (grid.dim() != atlas.spectrum().dim()) {
    throw Error("grid dimension does not match the atlas");
  }
  std::vector<RealClassification> out(grid.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    out[i] = classify_real(atlas, grid.point(i), max_generation);
  });
  return out;
}

std::size_t count_members(const std::vector<RealClassification>& cells) {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.member ? 1 : 0;
  return n;
}

}  // namespace doa

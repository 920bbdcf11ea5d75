#include "doa/graded_layout.hpp"

#include <stdexcept>
#include <string>

#include "doa/errors.hpp"

namespace doa {

GradedLayout::GradedLayout(int dim, int max_degree)
    : dim_(dim), max_degree_(max_degree) {
  validate_capacity(dim, max_degree);
}

std::size_t GradedLayout::block_offset(int m) const {
  if (m <= 0) return 0;
  return static_cast<std::size_t>(binomial(dim_ + m - 1, dim_));
}

std::size_t GradedLayout::block_size(int m) const {
  if (m < 0) return 0;
  return static_cast<std::size_t>(binomial(dim_ + m - 1, dim_ - 1));
}

std::size_t GradedLayout::rank(const MultiIndex& j) const {
  int remaining = j.degree();
  std::size_t r = block_offset(remaining);
  // Indices before j in its block share a prefix and then carry a larger
  // exponent; summing over the larger values collapses (hockey stick) to a
  // single binomial per position.
  for (int i = 0; i + 1 < dim_; ++i) {
    const int ji = j[i];
    const int k = dim_ - i - 1;
    if (remaining > ji) r += binomial(remaining - ji - 1 + k, k);
    remaining -= ji;
    if (remaining == 0) break;
  }
  return r;
}

MultiIndex GradedLayout::unrank(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("graded layout index");
  int m = 0;
  while (block_offset(m + 1) <= index) ++m;
  std::size_t within = index - block_offset(m);
  MultiIndex j(dim_);
  int remaining = m;
  for (int i = 0; i + 1 < dim_; ++i) {
    const int k = dim_ - i - 1;
    // Choose the largest exponent t whose preceding count does not exceed
    // `within`.
    int t = remaining;
    while (true) {
      const std::size_t before =
          remaining > t ? binomial(remaining - t - 1 + k, k) : 0;
      const std::size_t through = binomial(remaining - t + k, k);
      if (within < through) {
        within -= before;
        break;
      }
      --t;
    }
    j.set(i, t);
    remaining -= t;
  }
  j.set(dim_ - 1, remaining);
  return j;
}

void validate_capacity(int dim, int degree) {
  if (dim < 1 || dim > kMaxDim) {
    throw CapacityError("dimension " + std::to_string(dim) +
                        " outside supported range 1.." +
                        std::to_string(kMaxDim));
  }
  if (degree < 0 || degree > kMaxDegree) {
    throw CapacityError("degree " + std::to_string(degree) +
                        " outside supported range 0.." +
                        std::to_string(kMaxDegree));
  }
  const auto count = binomial(dim + degree, dim);
  if (count > kMaxCoefficients) {
    throw CapacityError("coefficient table of " + std::to_string(count) +
                        " entries exceeds budget of " +
                        std::to_string(kMaxCoefficients));
  }
}

}  // namespace doa

#pragma once

#include <cstddef>

#include "doa/multi_index.hpp"

namespace doa {

/// Dense storage layout for all monomials of degree <= max_degree in `dim`
/// variables: degree blocks in ascending order, graded-lex inside a block.
/// Block m holds C(dim + m - 1, dim - 1) entries.
class GradedLayout {
 public:
  GradedLayout() = default;
  GradedLayout(int dim, int max_degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }

  /// Total number of monomials, C(dim + max_degree, dim).
  std::size_t size() const { return block_offset(max_degree_ + 1); }

  /// Number of monomials of degree < m.
  std::size_t block_offset(int m) const;
  std::size_t block_size(int m) const;

  /// Position of `j` in the dense array. Requires j.degree() <= max_degree.
  std::size_t rank(const MultiIndex& j) const;
  MultiIndex unrank(std::size_t index) const;

  friend bool operator==(const GradedLayout&, const GradedLayout&) = default;

 private:
  int dim_ = 0;
  int max_degree_ = 0;
};

/// Throws CapacityError unless 1 <= dim <= kMaxDim, 0 <= degree <= kMaxDegree
/// and the dense table stays within the coefficient budget.
void validate_capacity(int dim, int degree);

/// Upper bound on C(dim + degree, dim) accepted by validate_capacity.
inline constexpr std::size_t kMaxCoefficients = std::size_t{1} << 25;

}  // namespace doa

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "doa/graded_layout.hpp"
#include "doa/multi_index.hpp"
#include "doa/types.hpp"

namespace doa {

/// Truncated power series sum_j B_j (z - center)^j with complex coefficients,
/// stored densely up to `max_degree` in graded-lex order.
class ComplexSeries {
 public:
  ComplexSeries() = default;
  ComplexSeries(int dim, int max_degree);
  ComplexSeries(int dim, int max_degree, ComplexVector center);

  int dim() const { return layout_.dim(); }
  int max_degree() const { return layout_.max_degree(); }
  const GradedLayout& layout() const { return layout_; }
  const ComplexVector& center() const { return center_; }

  /// Zero for indices above max_degree.
  Complex coeff(const MultiIndex& j) const;
  Complex& at(const MultiIndex& j) { return coeffs_[layout_.rank(j)]; }

  std::span<const Complex> coefficients() const { return coeffs_; }
  std::span<Complex> coefficients() { return coeffs_; }
  std::span<const Complex> block(int m) const;
  std::span<Complex> block(int m);

  /// sum_j B_j (z - center)^j, summed block by block in graded-lex order.
  Complex evaluate(const ComplexVector& z) const;

  /// Homogeneous part of degree m evaluated at the offset w = z - center.
  Complex evaluate_block(int m, const ComplexVector& w) const;

  double max_abs() const;

 private:
  GradedLayout layout_;
  ComplexVector center_;
  std::vector<Complex> coeffs_;
};

/// Truncated product a*b keeping degrees <= max_degree. Both factors must
/// share dimension and center.
ComplexSeries multiply(const ComplexSeries& a, const ComplexSeries& b,
                       int max_degree);

}  // namespace doa

#pragma once

#include <map>
#include <string>
#include <vector>

#include "doa/multi_index.hpp"
#include "doa/types.hpp"

namespace doa {

using SparsePolynomial = std::map<MultiIndex, double, GradedLexLess>;

/// Polynomial vector field f: R^n -> R^n with f(0) = 0.
class PolyField {
 public:
  PolyField() = default;
  /// Throws doa::Error if a component has a constant term or the wrong
  /// dimension. Zero coefficients are dropped.
  explicit PolyField(std::vector<SparsePolynomial> components);

  int dim() const { return static_cast<int>(components_.size()); }
  const SparsePolynomial& component(int i) const {
    return components_[static_cast<std::size_t>(i)];
  }
  int total_degree() const { return total_degree_; }

  RealVector evaluate(const RealVector& x) const;
  /// Writes f(x) into `out`, which must already have size dim().
  void evaluate_into(const double* x, double* out) const;

  friend bool operator==(const PolyField& a, const PolyField& b) {
    return a.components_ == b.components_;
  }

 private:
  struct Term {
    int component;
    double coeff;
    MultiIndex exps;
  };

  std::vector<SparsePolynomial> components_;
  std::vector<Term> terms_;
  int total_degree_ = 0;
};

/// Matrix of degree-1 coefficients, J(i, k) = d f_i / d x_k at the origin.
RealMatrix jacobian_at_origin(const PolyField& field);

}  // namespace doa

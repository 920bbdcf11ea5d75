#pragma once

#include <vector>

#include "doa/complex_series.hpp"
#include "doa/poly_field.hpp"
#include "doa/types.hpp"

namespace doa {

/// Eigen-decomposition A = S diag(eigenvalues) S^-1 of the linearization.
///
/// Canonical form: eigenvalues sorted by real part, then by |Im|, with each
/// conjugate pair adjacent and the positive-imaginary member first; columns
/// of S have unit Euclidean norm and a real positive leading entry; the two
/// columns of a conjugate pair are exact conjugates. A scalar matrix yields
/// S = I, and repeated eigenvalues get an orthonormal eigenspace basis.
struct Spectrum {
  ComplexVector eigenvalues;
  ComplexMatrix S;
  ComplexMatrix S_inv;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

inline constexpr double kHurwitzTolerance = 1e-12;
inline constexpr double kMaxConditionNumber = 1e10;

/// Throws NotHurwitz when some Re(lambda) >= -1e-12 and NotDiagonalizable when
/// the eigenvector matrix has condition number above 1e10.
Spectrum diagonalize(const RealMatrix& A);

/// Sparse nonlinear coefficient b^i_k of a transformed component.
struct SeriesTerm {
  MultiIndex k;
  Complex b;
};

/// The field in eigencoordinates, g = S^-1 o f o S, plus the bilinear form
/// c_pq = sum_i s_ip s_iq of |Sz|^2.
struct TransformedField {
  std::vector<ComplexSeries> g;
  ComplexMatrix rhs_form;
  /// Nonzero coefficients of degree >= 2 of each g_i, in graded-lex order.
  std::vector<std::vector<SeriesTerm>> nonlinear;

  int dim() const { return static_cast<int>(g.size()); }
};

TransformedField transform_field(const PolyField& field,
                                 const Spectrum& spectrum);

/// c = S^T S, built entry by entry as c_pq = sum_i s_ip s_iq (no conjugation)
/// and mirrored so that c is exactly symmetric.
ComplexMatrix rhs_quadratic(const Spectrum& spectrum);

}  // namespace doa

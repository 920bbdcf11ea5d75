#pragma once

#include "doa/complex_series.hpp"
#include "doa/spectral.hpp"
#include "doa/types.hpp"

namespace doa {

/// Truncated series of the transformed optimal Lyapunov function W around
/// some center. Generation 0 is the expansion at the origin; generation k >= 1
/// is a re-expansion produced by the k-th growth step.
class Embryo {
 public:
  Embryo() = default;
  Embryo(ComplexSeries series, int generation);

  const ComplexSeries& series() const { return series_; }
  int generation() const { return generation_; }
  int degree() const { return series_.max_degree(); }
  int dim() const { return series_.dim(); }
  const ComplexVector& center() const { return series_.center(); }

  Embryo with_generation(int generation) const {
    return Embryo(series_, generation);
  }

 private:
  ComplexSeries series_;
  int generation_ = 0;
};

/// Coefficients B_j, 2 <= |j| <= degree, of W = V o S at the origin.
///
/// Degree-2 terms come from the right-hand side form c alone:
///   B_{2e_i} = -c_ii / (2 lambda_i),  B_{e_p+e_q} = -2 c_pq / (lambda_p + lambda_q).
/// For |j| >= 3 each coefficient is a reduction over lower degrees,
///   B_j = -1/(sum_i j_i lambda_i) * sum_i sum_k (j_i - k_i + 1) b^i_k B_{j-k+e_i},
/// with k running over the nonlinear support of g_i (2 <= |k| <= |j| - 1).
/// Coefficients of one degree are independent and are computed on up to
/// `workers` threads; the result does not depend on the worker count.
Embryo compute_coefficients(const TransformedField& tf,
                            const Spectrum& spectrum, int degree,
                            int workers = 1);

/// Largest coefficient modulus of <grad W_p, g> + c(z, z), truncated to
/// total degree <= p. Computed by sparse series differentiation and
/// multiplication, independently of the recurrence. Generation 0 only.
double pde_residual(const Embryo& embryo, const TransformedField& tf);

Complex evaluate(const Embryo& embryo, const ComplexVector& z);

/// V_p(x) = W_p(S^-1 x) for real x. Throws ImaginaryLeak when
/// |Im| > 1e-6 (1 + |Re|).
double evaluate_real(const Embryo& embryo, const Spectrum& spectrum,
                     const RealVector& x);

/// Same polynomial expanded at z0: coefficients (d^j W_p)(z0) / j!, obtained
/// by one exact univariate shift per variable. Degree and generation are
/// kept.
Embryo taylor_shift(const Embryo& embryo, const ComplexVector& z0);

/// Shifts a univariate coefficient array in place: afterwards it holds the
/// coefficients of P(h + y) in y.
void shift_univariate(std::span<Complex> coeffs, Complex h);

}  // namespace doa

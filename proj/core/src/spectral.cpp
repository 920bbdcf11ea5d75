#include "doa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doa/errors.hpp"

namespace doa {
namespace {

std::string format_complex(Complex z) {
  std::ostringstream s;
  s.precision(6);
  s << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

void hurwitz_gate(const ComplexVector& eigenvalues) {
  for (const Complex& lambda : eigenvalues) {
    if (!(lambda.real() < -kHurwitzTolerance)) {
      throw NotHurwitz("linearization is not Hurwitz: eigenvalue " +
                           format_complex(lambda) +
                           " has non-negative real part",
                       lambda);
    }
  }
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

// Unit norm, first entry above the noise floor made real and positive.
void canonicalize_column(Eigen::Ref<ComplexVector> v) {
  v /= v.norm();
  const double floor = 1e-10 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > floor) {
      v *= std::conj(v(k)) / std::abs(v(k));
      v(k) = std::abs(v(k));
      return;
    }
  }
}

// Eigenvalue, or a conjugate pair represented by its positive-Im member.
struct Mode {
  Complex lambda;
  ComplexVector vector;
  bool pair;
};

}  // namespace

Spectrum diagonalize(const RealMatrix& A) {
  const auto n = A.rows();
  if (A.cols() != n || n < 1 || n > kMaxDim) {
    throw CapacityError("linearization must be square with dimension 1.." +
                        std::to_string(kMaxDim));
  }
  const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);

  Spectrum out;
  const bool scalar =
      (A - A(0, 0) * RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0;
  if (scalar) {
    out.eigenvalues = ComplexVector::Constant(n, Complex(A(0, 0), 0.0));
    hurwitz_gate(out.eigenvalues);
    out.S = ComplexMatrix::Identity(n, n);
    out.S_inv = ComplexMatrix::Identity(n, n);
    return out;
  }

  Eigen::EigenSolver<RealMatrix> solver(A);
  if (solver.info() != Eigen::Success) {
    throw NotDiagonalizable("eigen-decomposition did not converge",
                            std::numeric_limits<double>::infinity());
  }
  const ComplexVector values = solver.eigenvalues();
  hurwitz_gate(values);

  ComplexMatrix raw = solver.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) raw.col(k).normalize();
  const double raw_cond = condition_number(raw);
  if (!(raw_cond <= kMaxConditionNumber)) {
    throw NotDiagonalizable("eigenvector matrix condition number " +
                                std::to_string(raw_cond) + " exceeds 1e10",
                            raw_cond);
  }

  const double imag_floor = 1e-12 * scale;
  std::vector<Mode> modes;
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex lambda = values(k);
    if (std::abs(lambda.imag()) <= imag_floor) {
      modes.push_back({Complex(lambda.real(), 0.0),
                       raw.col(k).real().cast<Complex>(), false});
    } else if (lambda.imag() > 0) {
      modes.push_back({lambda, raw.col(k), true});
    }
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) {
                     if (a.lambda.real() != b.lambda.real()) {
                       return a.lambda.real() < b.lambda.real();
                     }
                     return a.lambda.imag() < b.lambda.imag();
                   });

  // Orthonormal basis inside each cluster of (numerically) equal eigenvalues.
  const double cluster_tol = 1e-8 * scale;
  for (std::size_t start = 0; start < modes.size();) {
    std::size_t stop = start + 1;
    while (stop < modes.size() &&
           std::abs(modes[stop].lambda - modes[start].lambda) <= cluster_tol) {
      ++stop;
    }
    for (std::size_t a = start; a < stop; ++a) {
      modes[a].lambda = modes[start].lambda;
      for (std::size_t b = start; b < a; ++b) {
        modes[a].vector -=
            modes[b].vector.dot(modes[a].vector) * modes[b].vector;
      }
      canonicalize_column(modes[a].vector);
    }
    start = stop;
  }

  out.eigenvalues.resize(n);
  out.S.resize(n, n);
  Eigen::Index col = 0;
  for (const Mode& m : modes) {
    out.eigenvalues(col) = m.lambda;
    out.S.col(col++) = m.vector;
    if (m.pair) {
      out.eigenvalues(col) = std::conj(m.lambda);
      out.S.col(col++) = m.vector.conjugate();
    }
  }
  if (col != n) {
    throw NotDiagonalizable("unpaired complex eigenvalue", raw_cond);
  }

  const double cond = condition_number(out.S);
  if (!(cond <= kMaxConditionNumber)) {
    throw NotDiagonalizable("eigenvector matrix condition number " +
                                std::to_string(cond) + " exceeds 1e10",
                            cond);
  }
  out.S_inv = out.S.fullPivLu().inverse();

  const ComplexMatrix diag = out.eigenvalues.asDiagonal();
  const double diag_err =
      (out.S_inv * A.cast<Complex>() * out.S - diag).cwiseAbs().maxCoeff();
  if (diag_err > 1e-8 * scale) {
    throw NotDiagonalizable("linearization is defective to tolerance", cond);
  }
  return out;
}

ComplexMatrix rhs_quadratic(const Spectrum& spectrum) {
  const auto& S = spectrum.S;
  const auto n = S.cols();
  ComplexMatrix c(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p; q < n; ++q) {
      Complex sum = 0.0;
      for (Eigen::Index i = 0; i < S.rows(); ++i) sum += S(i, p) * S(i, q);
      c(p, q) = sum;
      c(q, p) = sum;
    }
  }
  return c;
}

TransformedField transform_field(const PolyField& field,
                                 const Spectrum& spectrum) {
  const int n = field.dim();
  if (spectrum.dim() != n) {
    throw std::invalid_argument("spectrum and field dimensions differ");
  }
  const int D = std::max(field.total_degree(), 1);

  // powers[p][e] = (x_p(z))^e with x = S z.
  std::vector<std::vector<ComplexSeries>> powers(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    ComplexSeries linear(n, D);
    for (int q = 0; q < n; ++q) {
      linear.at(MultiIndex::unit(n, q)) = spectrum.S(p, q);
    }
    ComplexSeries one(n, D);
    one.at(MultiIndex(n)) = 1.0;
    auto& row = powers[static_cast<std::size_t>(p)];
    row.push_back(one);
    for (int e = 1; e <= D; ++e) row.push_back(multiply(row.back(), linear, D));
  }

  // f_l(S z) for every component.
  std::vector<ComplexSeries> substituted;
  for (int l = 0; l < n; ++l) {
    ComplexSeries acc(n, D);
    for (const auto& [j, c] : field.component(l)) {
      ComplexSeries term(n, D);
      term.at(MultiIndex(n)) = c;
      for (int p = 0; p < n; ++p) {
        if (j[p]) term = multiply(term, powers[p][j[p]], D);
      }
      auto dst = acc.coefficients();
      auto src = term.coefficients();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
    }
    substituted.push_back(std::move(acc));
  }

  TransformedField out;
  out.rhs_form = rhs_quadratic(spectrum);
  out.nonlinear.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ComplexSeries gi(n, D);
    auto dst = gi.coefficients();
    for (int l = 0; l < n; ++l) {
      const Complex w = spectrum.S_inv(i, l);
      auto src = substituted[static_cast<std::size_t>(l)].coefficients();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += w * src[k];
    }
    const auto& layout = gi.layout();
    for (std::size_t k = layout.block_offset(2); k < dst.size(); ++k) {
      if (dst[k] != Complex{}) {
        out.nonlinear[static_cast<std::size_t>(i)].push_back(
            {layout.unrank(k), dst[k]});
      }
    }
    out.g.push_back(std::move(gi));
  }
  return out;
}

}  // namespace doa

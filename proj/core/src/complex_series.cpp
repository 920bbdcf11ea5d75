#include "doa/complex_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace doa {
namespace {

// powers[i][e] = w_i^e for e <= max_degree.
std::vector<std::vector<Complex>> power_table(const ComplexVector& w,
                                              int max_degree) {
  std::vector<std::vector<Complex>> powers(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    auto& row = powers[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(max_degree) + 1);
    row[0] = 1.0;
    for (int e = 1; e <= max_degree; ++e) row[e] = row[e - 1] * w(i);
  }
  return powers;
}

Complex block_sum(std::span<const Complex> block, int dim, int m,
                  const std::vector<std::vector<Complex>>& powers) {
  Complex sum = 0.0;
  MultiIndex j = first_of_degree(dim, m);
  for (const Complex& b : block) {
    if (b != Complex{}) {
      Complex term = b;
      for (int i = 0; i < dim; ++i) {
        if (j[i]) term *= powers[static_cast<std::size_t>(i)][j[i]];
      }
      sum += term;
    }
    next_in_degree(j);
  }
  return sum;
}

}  // namespace

ComplexSeries::ComplexSeries(int dim, int max_degree)
    : ComplexSeries(dim, max_degree, ComplexVector::Zero(dim)) {}

ComplexSeries::ComplexSeries(int dim, int max_degree, ComplexVector center)
    : layout_(dim, max_degree),
      center_(std::move(center)),
      coeffs_(layout_.size(), Complex{}) {
  if (center_.size() != dim) {
    throw std::invalid_argument("series center has wrong dimension");
  }
}

Complex ComplexSeries::coeff(const MultiIndex& j) const {
  if (j.degree() > max_degree()) return {};
  return coeffs_[layout_.rank(j)];
}

std::span<const Complex> ComplexSeries::block(int m) const {
  return std::span<const Complex>(coeffs_).subspan(layout_.block_offset(m),
                                                   layout_.block_size(m));
}

std::span<Complex> ComplexSeries::block(int m) {
  return std::span<Complex>(coeffs_).subspan(layout_.block_offset(m),
                                             layout_.block_size(m));
}

Complex ComplexSeries::evaluate(const ComplexVector& z) const {
  if (z.size() != dim()) throw std::invalid_argument("point dimension");
  const ComplexVector w = z - center_;
  const auto powers = power_table(w, max_degree());
  Complex total = 0.0;
  for (int m = 0; m <= max_degree(); ++m) {
    total += block_sum(block(m), dim(), m, powers);
  }
  return total;
}

Complex ComplexSeries::evaluate_block(int m, const ComplexVector& w) const {
  if (m < 0 || m > max_degree()) return {};
  return block_sum(block(m), dim(), m, power_table(w, m));
}

double ComplexSeries::max_abs() const {
  double best = 0.0;
  for (const Complex& c : coeffs_) best = std::max(best, std::abs(c));
  return best;
}

ComplexSeries multiply(const ComplexSeries& a, const ComplexSeries& b,
                       int max_degree) {
  if (a.dim() != b.dim()) throw std::invalid_argument("series dimension");
  ComplexSeries out(a.dim(), max_degree, a.center());
  const auto& la = a.layout();
  const auto& lb = b.layout();
  const auto& lo = out.layout();
  auto ca = a.coefficients();
  auto cb = b.coefficients();
  auto co = out.coefficients();
  for (std::size_t ia = 0; ia < ca.size(); ++ia) {
    if (ca[ia] == Complex{}) continue;
    const MultiIndex ja = la.unrank(ia);
    if (ja.degree() > max_degree) break;
    for (std::size_t ib = 0; ib < cb.size(); ++ib) {
      if (cb[ib] == Complex{}) continue;
      const MultiIndex jb = lb.unrank(ib);
      if (ja.degree() + jb.degree() > max_degree) break;
      co[lo.rank(ja + jb)] += ca[ia] * cb[ib];
    }
  }
  return out;
}

}  // namespace doa

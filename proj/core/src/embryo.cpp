#include "doa/embryo.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "doa/errors.hpp"
#include "doa/parallel.hpp"

namespace doa {

Embryo::Embryo(ComplexSeries series, int generation)
    : series_(std::move(series)), generation_(generation) {
  if (generation < 0) throw std::invalid_argument("negative generation");
}

Embryo compute_coefficients(const TransformedField& tf,
                            const Spectrum& spectrum, int degree,
                            int workers) {
  const int n = spectrum.dim();
  if (tf.dim() != n) throw std::invalid_argument("field/spectrum dimension");
  if (degree < 2) throw std::invalid_argument("truncation degree must be >= 2");
  validate_capacity(n, degree);

  const ComplexVector& lambda = spectrum.eigenvalues;
  double max_re = -std::numeric_limits<double>::infinity();
  for (const Complex& l : lambda) max_re = std::max(max_re, l.real());
  if (!(max_re < 0.0)) {
    throw NotHurwitz("recurrence requires a Hurwitz spectrum",
                     Complex(max_re, 0.0));
  }

  ComplexSeries series(n, degree);
  const GradedLayout& layout = series.layout();
  const ComplexMatrix& c = tf.rhs_form;

  // Degree 2: only the right-hand side contributes.
  {
    auto block = series.block(2);
    MultiIndex j = first_of_degree(n, 2);
    for (Complex& b : block) {
      int p = -1;
      int q = -1;
      for (int i = 0; i < n; ++i) {
        if (j[i] == 2) p = q = i;
        if (j[i] == 1) (p < 0 ? p : q) = i;
      }
      if (p == q) {
        b = -c(p, p) / (2.0 * lambda(p));
      } else {
        b = -2.0 * c(p, q) / (lambda(p) + lambda(q));
      }
      next_in_degree(j);
    }
  }

  auto coeffs = series.coefficients();
  for (int m = 3; m <= degree; ++m) {
    const std::vector<MultiIndex> indices = enumerate_multiindices(n, m);
    const std::size_t offset = layout.block_offset(m);
    parallel_for(indices.size(), workers, [&](std::size_t idx) {
      const MultiIndex& j = indices[idx];
      Complex denom = 0.0;
      for (int i = 0; i < n; ++i) denom += static_cast<double>(j[i]) * lambda(i);
      if (!(denom.real() <= 2.0 * max_re)) {
        throw std::logic_error("recurrence denominator for " + j.to_string() +
                               " is not safely negative");
      }
      Complex sum = 0.0;
      MultiIndex shifted;
      for (int i = 0; i < n; ++i) {
        for (const SeriesTerm& t : tf.nonlinear[static_cast<std::size_t>(i)]) {
          if (t.k.degree() > m - 1) break;
          const int weight = j[i] - t.k[i] + 1;
          if (weight <= 0) continue;
          if (!try_subtract(j, t.k, shifted)) continue;
          shifted.set(i, shifted[i] + 1);
          sum += static_cast<double>(weight) * t.b * coeffs[layout.rank(shifted)];
        }
      }
      coeffs[offset + idx] = -sum / denom;
    });
  }
  return Embryo(std::move(series), 0);
}

double pde_residual(const Embryo& embryo, const TransformedField& tf) {
  const ComplexSeries& w = embryo.series();
  const int n = w.dim();
  const int p = w.max_degree();
  if (embryo.generation() != 0 || w.center().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("pde_residual needs a generation-0 embryo");
  }
  using SparseSeries = std::map<MultiIndex, Complex, GradedLexLess>;

  auto to_sparse = [](const ComplexSeries& s) {
    SparseSeries out;
    const auto coeffs = s.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] != Complex{}) out.emplace(s.layout().unrank(k), coeffs[k]);
    }
    return out;
  };

  const SparseSeries wsp = to_sparse(w);
  SparseSeries residual;
  for (int i = 0; i < n; ++i) {
    SparseSeries derivative;
    const MultiIndex ei = MultiIndex::unit(n, i);
    for (const auto& [j, b] : wsp) {
      MultiIndex lowered;
      if (j[i] > 0 && try_subtract(j, ei, lowered)) {
        derivative[lowered] += static_cast<double>(j[i]) * b;
      }
    }
    const SparseSeries gi = to_sparse(tf.g[static_cast<std::size_t>(i)]);
    for (const auto& [a, da] : derivative) {
      for (const auto& [k, gk] : gi) {
        if (a.degree() + k.degree() > p) break;
        residual[a + k] += da * gk;
      }
    }
  }
  const ComplexMatrix& c = tf.rhs_form;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const MultiIndex idx = MultiIndex::unit(n, a) + MultiIndex::unit(n, b);
      residual[idx] += (a == b ? 1.0 : 2.0) * c(a, b);
    }
  }
  double worst = 0.0;
  for (const auto& [j, v] : residual) worst = std::max(worst, std::abs(v));
  return worst;
}

Complex evaluate(const Embryo& embryo, const ComplexVector& z) {
  return embryo.series().evaluate(z);
}

double evaluate_real(const Embryo& embryo, const Spectrum& spectrum,
                     const RealVector& x) {
  const ComplexVector z = spectrum.S_inv * x.cast<Complex>();
  const Complex v = evaluate(embryo, z);
  if (std::abs(v.imag()) > 1e-6 * (1.0 + std::abs(v.real()))) {
    throw ImaginaryLeak("embryo value has imaginary part " +
                        std::to_string(v.imag()) + " on the real slice");
  }
  return v.real();
}

void shift_univariate(std::span<Complex> a, Complex h) {
  const std::size_t d = a.size();
  if (d < 2 || h == Complex{}) return;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    for (std::size_t k = d - 1; k-- > i;) a[k] += h * a[k + 1];
  }
}

Embryo taylor_shift(const Embryo& embryo, const ComplexVector& z0) {
  const ComplexSeries& src = embryo.series();
  const int n = src.dim();
  const int p = src.max_degree();
  if (z0.size() != n) throw std::invalid_argument("shift center dimension");

  ComplexSeries out(n, p, z0);
  std::copy(src.coefficients().begin(), src.coefficients().end(),
            out.coefficients().begin());
  const GradedLayout& layout = out.layout();
  auto coeffs = out.coefficients();
  std::vector<Complex> line;
  std::vector<std::size_t> slots;

  for (int v = 0; v < n; ++v) {
    const Complex h = z0(v) - src.center()(v);
    if (h == Complex{}) continue;
    // Every monomial is r + t e_v for a unique r with r_v = 0.
    for (int d = 0; d <= p; ++d) {
      MultiIndex r = first_of_degree(n, d);
      do {
        if (r[v] != 0) continue;
        const int top = p - d;
        line.resize(static_cast<std::size_t>(top) + 1);
        slots.resize(line.size());
        MultiIndex j = r;
        for (int t = 0; t <= top; ++t) {
          j.set(v, t);
          slots[static_cast<std::size_t>(t)] = layout.rank(j);
          line[static_cast<std::size_t>(t)] =
              coeffs[slots[static_cast<std::size_t>(t)]];
        }
        shift_univariate(line, h);
        for (std::size_t t = 0; t < line.size(); ++t) coeffs[slots[t]] = line[t];
      } while (next_in_degree(r));
    }
  }
  return Embryo(std::move(out), embryo.generation());
}

}  // namespace doa

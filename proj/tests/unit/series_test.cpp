#include <gtest/gtest.h>

#include "doa/complex_series.hpp"

namespace doa {
namespace {

// Direct monomial sum, independent of the block/power-table path.
Complex naive_eval(const ComplexSeries& s, const ComplexVector& z) {
  Complex total = 0;
  const auto& layout = s.layout();
  for (std::size_t r = 0; r < layout.size(); ++r) {
    const MultiIndex j = layout.unrank(r);
    Complex term = s.coefficients()[r];
    for (int i = 0; i < s.dim(); ++i) {
      term *= std::pow(z(i) - s.center()(i), j[i]);
    }
    total += term;
  }
  return total;
}

ComplexSeries ramp(int n, int p) {
  ComplexSeries s(n, p);
  auto c = s.coefficients();
  for (std::size_t r = 0; r < c.size(); ++r) {
    c[r] = Complex(1.0 / (1.0 + r), 0.25 * std::sin(static_cast<double>(r)));
  }
  return s;
}

TEST(ComplexSeries, StartsAtZeroAndReadsZeroAboveDegree) {
  ComplexSeries s(2, 4);
  EXPECT_EQ(s.coefficients().size(), 15u);
  EXPECT_EQ(s.max_abs(), 0.0);
  s.at(MultiIndex{1, 3}) = Complex(2, -1);
  EXPECT_EQ(s.coeff(MultiIndex{1, 3}), Complex(2, -1));
  EXPECT_EQ(s.coeff(MultiIndex{5, 0}), Complex(0));
  EXPECT_EQ(s.block(4).size(), 5u);
  EXPECT_EQ(s.block(4)[3], Complex(2, -1));
}

TEST(ComplexSeries, EvaluationMatchesMonomialSum) {
  for (int n = 1; n <= 3; ++n) {
    const ComplexSeries s = ramp(n, 7);
    ComplexVector z(n);
    for (int i = 0; i < n; ++i) z(i) = Complex(0.3 - 0.2 * i, 0.1 * i);
    EXPECT_LT(std::abs(s.evaluate(z) - naive_eval(s, z)), 1e-13);
    Complex by_blocks = 0;
    for (int m = 0; m <= 7; ++m) by_blocks += s.evaluate_block(m, z);
    EXPECT_LT(std::abs(by_blocks - s.evaluate(z)), 1e-13);
  }
}

TEST(ComplexSeries, CenteredEvaluationUsesOffset) {
  ComplexVector c(2);
  c << Complex(1, 0), Complex(0, 1);
  ComplexSeries s(2, 2, c);
  s.at(MultiIndex{1, 1}) = 1.0;
  ComplexVector z(2);
  z << Complex(3, 0), Complex(0, 2);
  EXPECT_LT(std::abs(s.evaluate(z) - Complex(0, 2)), 1e-15);
}

TEST(ComplexSeries, ProductTruncates) {
  // (1 + x + y)^2 truncated at degree 1 is 1 + 2x + 2y.
  ComplexSeries a(2, 2);
  a.at(MultiIndex{0, 0}) = 1;
  a.at(MultiIndex{1, 0}) = 1;
  a.at(MultiIndex{0, 1}) = 1;
  const auto sq = multiply(a, a, 2);
  EXPECT_EQ(sq.coeff(MultiIndex{1, 1}), Complex(2));
  EXPECT_EQ(sq.coeff(MultiIndex{2, 0}), Complex(1));
  const auto lin = multiply(a, a, 1);
  EXPECT_EQ(lin.max_degree(), 1);
  EXPECT_EQ(lin.coeff(MultiIndex{0, 1}), Complex(2));
}

TEST(ComplexSeries, ProductMatchesPointwise) {
  const ComplexSeries a = ramp(2, 6);
  const ComplexSeries b = ramp(2, 6);
  const auto prod = multiply(a, b, 12);
  ComplexVector z(2);
  z << Complex(0.4, 0.1), Complex(-0.3, 0.2);
  EXPECT_LT(std::abs(prod.evaluate(z) - a.evaluate(z) * b.evaluate(z)), 1e-12);
}

}  // namespace
}  // namespace doa

#include <gtest/gtest.h>

#include "doa/embryo.hpp"
#include "doa/errors.hpp"
#include "doa/system_parser.hpp"
#include "fixtures.hpp"

namespace doa {
namespace {

struct Pipeline {
  explicit Pipeline(const PolyField& f)
      : spectrum(diagonalize(jacobian_at_origin(f))),
        tf(transform_field(f, spectrum)) {}
  Spectrum spectrum;
  TransformedField tf;
};

TEST(Embryo, OneDimensionalLogarithm) {
  // x' = -x + x^3 has V = -ln(1 - x^2)/2, so B_2k = 1/(2k) and odd terms vanish.
  const Pipeline pl(parse_system("dim 1\ndx1 = -x1 + x1^3\n"));
  const Embryo e = compute_coefficients(pl.tf, pl.spectrum, 40);
  for (int m = 2; m <= 40; ++m) {
    const Complex b = e.series().coeff(MultiIndex{m});
    const double expect = m % 2 == 0 ? 1.0 / m : 0.0;
    EXPECT_NEAR(b.real(), expect, 1e-14) << m;
    EXPECT_EQ(b.imag(), 0.0);
  }
}

TEST(Embryo, OneDimensionalLinear) {
  const Pipeline pl(parse_system("dim 1\ndx1 = -2*x1\n"));
  const Embryo e = compute_coefficients(pl.tf, pl.spectrum, 10);
  EXPECT_NEAR(e.series().coeff(MultiIndex{2}).real(), 0.25, 1e-15);
  for (int m = 3; m <= 10; ++m) EXPECT_EQ(e.series().coeff(MultiIndex{m}), Complex(0));
}

TEST(Embryo, QuadraticBlockOfCircleFixture) {
  const Pipeline pl(test::load_example(1));
  const Embryo e = compute_coefficients(pl.tf, pl.spectrum, 10);
  const auto block = e.series().block(2);
  EXPECT_NEAR(block[0].real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(std::abs(block[1]), 0.0, 1e-15);
  EXPECT_NEAR(block[2].real(), 1.0 / 6.0, 1e-15);
}

TEST(Embryo, CircleFixtureAxisCoefficients) {
  // Along x2 = 0 the exact coefficients are (3^(1-m) + (-1)^m) / (4m).
  const Pipeline pl(test::load_example(1));
  const Embryo e = compute_coefficients(pl.tf, pl.spectrum, 10);
  const double frozen[] = {1.0 / 6,   -2.0 / 27,   7.0 / 108,
                           -4.0 / 81, 61.0 / 1458, -26.0 / 729,
                           547.0 / 17496, -1640.0 / 59049, 4921.0 / 196830};
  for (int m = 2; m <= 10; ++m) {
    const Complex b = e.series().coeff(MultiIndex{m, 0});
    EXPECT_NEAR(b.real(), frozen[m - 2], 1e-14) << m;
  }
}

TEST(Embryo, ResidualVanishesOnFixtures) {
  for (int e = 1; e <= 4; ++e) {
    const Pipeline pl(test::load_example(e));
    for (int p : {10, 30}) {
      const Embryo w = compute_coefficients(pl.tf, pl.spectrum, p);
      EXPECT_LE(pde_residual(w, pl.tf), 1e-10 * w.series().max_abs())
          << "example " << e << " p " << p;
    }
  }
}

TEST(Embryo, ResidualDetectsPerturbation) {
  const Pipeline pl(test::load_example(3));
  const Embryo w = compute_coefficients(pl.tf, pl.spectrum, 12);
  ComplexSeries bad = w.series();
  bad.at(MultiIndex{3, 2}) += 1e-3;
  EXPECT_GT(pde_residual(Embryo(bad, 0), pl.tf), 1e-4);
}

TEST(Embryo, ConjugateSymmetryGivesRealValues) {
  const PolyField f = test::load_example(4);
  const Pipeline pl(f);
  const Embryo w = compute_coefficients(pl.tf, pl.spectrum, 20);
  // Swapping the exponents of the conjugate pair conjugates the coefficient.
  for (const auto& j : enumerate_multiindices(3, 7)) {
    const MultiIndex swapped{j[0], j[2], j[1]};
    EXPECT_LT(std::abs(w.series().coeff(swapped) - std::conj(w.series().coeff(j))),
              1e-12 * (1 + std::abs(w.series().coeff(j))));
  }
  RealVector x(3);
  x << 0.3, -0.2, 0.1;
  EXPECT_GT(evaluate_real(w, pl.spectrum, x), 0.0);
}

TEST(Embryo, ImaginaryLeakIsReported) {
  const Pipeline pl(test::load_example(4));
  const Embryo w = compute_coefficients(pl.tf, pl.spectrum, 6);
  ComplexSeries bad = w.series();
  bad.at(MultiIndex{2, 0, 0}) += Complex(0, 1);
  RealVector x(3);
  x << 0.5, 0.0, 0.0;
  EXPECT_THROW(evaluate_real(Embryo(bad, 0), pl.spectrum, x), ImaginaryLeak);
}

TEST(Embryo, WorkerCountDoesNotChangeBits) {
  const Pipeline pl(test::load_example(4));
  const Embryo one = compute_coefficients(pl.tf, pl.spectrum, 25, 1);
  const Embryo four = compute_coefficients(pl.tf, pl.spectrum, 25, 4);
  const auto a = one.series().coefficients();
  const auto b = four.series().coefficients();
  ASSERT_EQ(a.size(), b.size());
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
}

TEST(Embryo, DegreeBelowTwoIsRejected) {
  const Pipeline pl(test::load_example(3));
  EXPECT_THROW(compute_coefficients(pl.tf, pl.spectrum, 1), std::invalid_argument);
}

TEST(TaylorShift, UnivariateBinomial) {
  // z^3 about 0 becomes h^3 + 3h^2 u + 3h u^2 + u^3 about h.
  std::vector<Complex> a = {0, 0, 0, 1};
  shift_univariate(a, 2.0);
  EXPECT_EQ(a, (std::vector<Complex>{8, 12, 6, 1}));
}

TEST(TaylorShift, ShiftedPolynomialIsTheSameFunction) {
  const Pipeline pl(test::load_example(3));
  const Embryo w = compute_coefficients(pl.tf, pl.spectrum, 15);
  ComplexVector c(2);
  c << Complex(0.2, 0.05), Complex(-0.1, 0.0);
  const Embryo s = taylor_shift(w, c);
  EXPECT_EQ(s.center(), c);
  EXPECT_EQ(s.degree(), 15);
  ComplexVector z(2);
  z << Complex(0.25, 0.0), Complex(-0.05, 0.02);
  EXPECT_LT(std::abs(evaluate(s, z) - evaluate(w, z)), 1e-13);
  // The value at the new center is the constant term.
  EXPECT_LT(std::abs(s.series().coeff(MultiIndex{0, 0}) - evaluate(w, c)), 1e-14);
}

TEST(TaylorShift, ShiftsCompose) {
  const Pipeline pl(test::load_example(1));
  const Embryo w = compute_coefficients(pl.tf, pl.spectrum, 12);
  ComplexVector a(2), b(2);
  a << 0.1, -0.2;
  b << 0.3, 0.05;
  const Embryo twice = taylor_shift(taylor_shift(w, a), b);
  const Embryo once = taylor_shift(w, b);
  const auto x = twice.series().coefficients();
  const auto y = once.series().coefficients();
  for (std::size_t k = 0; k < x.size(); ++k) {
    EXPECT_LT(std::abs(x[k] - y[k]), 1e-13 * (1 + std::abs(y[k])));
  }
}

TEST(TaylorShift, TopBlockIsTranslationInvariant) {
  const Pipeline pl(test::load_example(3));
  const Embryo w = compute_coefficients(pl.tf, pl.spectrum, 10);
  ComplexVector c(2);
  c << 0.4, -0.3;
  const Embryo s = taylor_shift(w, c);
  const auto top = w.series().block(10);
  const auto shifted = s.series().block(10);
  EXPECT_TRUE(std::equal(top.begin(), top.end(), shifted.begin()));
}

TEST(TaylorShift, KeepsGeneration) {
  const Pipeline pl(test::load_example(3));
  const Embryo w = compute_coefficients(pl.tf, pl.spectrum, 5).with_generation(2);
  EXPECT_EQ(taylor_shift(w, ComplexVector::Zero(2)).generation(), 2);
}

}  // namespace
}  // namespace doa

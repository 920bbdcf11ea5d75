#include <gtest/gtest.h>

#include "doa/errors.hpp"
#include "doa/spectral.hpp"
#include "fixtures.hpp"

namespace doa {
namespace {

// The real polynomial field evaluated at a complex point, term by term.
ComplexVector eval_complex(const PolyField& f, const ComplexVector& x) {
  ComplexVector out = ComplexVector::Zero(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    for (const auto& [j, c] : f.component(i)) {
      Complex term = c;
      for (int k = 0; k < f.dim(); ++k) term *= std::pow(x(k), j[k]);
      out(i) += term;
    }
  }
  return out;
}

void expect_canonical(const Spectrum& s) {
  for (int k = 0; k < s.dim(); ++k) {
    EXPECT_NEAR(s.S.col(k).norm(), 1.0, 1e-12);
    int first = 0;
    while (std::abs(s.S(first, k)) < 1e-10) ++first;
    EXPECT_NEAR(s.S(first, k).imag(), 0.0, 1e-12);
    EXPECT_GT(s.S(first, k).real(), 0.0);
  }
  const ComplexMatrix I = s.S_inv * s.S;
  EXPECT_LT((I - ComplexMatrix::Identity(s.dim(), s.dim())).norm(), 1e-12);
}

TEST(Spectral, QuadraticFixtureEigenvalues) {
  const Spectrum s = diagonalize(jacobian_at_origin(test::load_example(3)));
  ASSERT_EQ(s.dim(), 2);
  EXPECT_NEAR(s.eigenvalues(0).real(), -2.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues(1).real(), -1.0, 1e-12);
  EXPECT_EQ(s.eigenvalues(0).imag(), 0.0);
  expect_canonical(s);
}

TEST(Spectral, ScalarJacobianKeepsIdentity) {
  const Spectrum s = diagonalize(jacobian_at_origin(test::load_example(1)));
  EXPECT_EQ(s.S, ComplexMatrix::Identity(2, 2));
  EXPECT_EQ(s.eigenvalues(0), Complex(-3.0));
}

TEST(Spectral, ComplexPairIsAdjacentAndConjugate) {
  const Spectrum s = diagonalize(jacobian_at_origin(test::load_example(4)));
  ASSERT_EQ(s.dim(), 3);
  EXPECT_NEAR(s.eigenvalues(0).real(), -1.3926467817026408, 1e-12);
  EXPECT_NEAR(s.eigenvalues(1).real(), -0.30367660914867959, 1e-12);
  EXPECT_NEAR(s.eigenvalues(1).imag(), 1.4359498641099561, 1e-12);
  EXPECT_EQ(s.eigenvalues(2), std::conj(s.eigenvalues(1)));
  EXPECT_LT((s.S.col(2) - s.S.col(1).conjugate()).norm(), 1e-15);
  expect_canonical(s);

  // A conjugate-symmetric z maps to a real x.
  ComplexVector z(3);
  z << Complex(0.2), Complex(0.1, 0.3), Complex(0.1, -0.3);
  const ComplexVector x = s.S * z;
  EXPECT_LT(x.imag().norm(), 1e-15);
}

TEST(Spectral, DiagonalizesRandomRotation) {
  RealMatrix A(3, 3);
  A << -1.0, 2.0, 0.5, -2.0, -1.5, 0.0, 0.3, 0.1, -0.7;
  const Spectrum s = diagonalize(A);
  const ComplexMatrix D = s.S_inv * A.cast<Complex>() * s.S;
  const ComplexMatrix L = s.eigenvalues.asDiagonal();
  EXPECT_LT((D - L).norm(), 1e-12);
  for (int k = 1; k < 3; ++k) {
    EXPECT_LE(s.eigenvalues(k - 1).real(), s.eigenvalues(k).real() + 1e-12);
  }
  expect_canonical(s);
}

TEST(Spectral, RejectsUnstableAndDefective) {
  RealMatrix unstable(2, 2);
  unstable << -1, 0, 0, 0.5;
  EXPECT_THROW(diagonalize(unstable), NotHurwitz);
  RealMatrix centre(2, 2);
  centre << 0, 1, -1, 0;
  EXPECT_THROW(diagonalize(centre), NotHurwitz);
  RealMatrix jordan(2, 2);
  jordan << -1, 1, 0, -1;
  EXPECT_THROW(diagonalize(jordan), NotDiagonalizable);
}

TEST(Spectral, TransformedFieldMatchesSubstitution) {
  for (int e = 1; e <= 4; ++e) {
    const PolyField f = test::load_example(e);
    const Spectrum s = diagonalize(jacobian_at_origin(f));
    const TransformedField tf = transform_field(f, s);
    const int n = f.dim();
    for (int trial = 0; trial < 20; ++trial) {
      ComplexVector z(n);
      for (int i = 0; i < n; ++i) {
        z(i) = Complex(std::sin(1.3 * trial + i), std::cos(0.7 * trial - 2 * i)) * 0.8;
      }
      const ComplexVector expect = s.S_inv * eval_complex(f, s.S * z);
      for (int i = 0; i < n; ++i) {
        EXPECT_LT(std::abs(tf.g[static_cast<std::size_t>(i)].evaluate(z) - expect(i)),
                  1e-12 * (1 + std::abs(expect(i))))
            << "example " << e;
      }
    }
    // Linear part is diagonal with the eigenvalues.
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const Complex c = tf.g[static_cast<std::size_t>(i)].coeff(MultiIndex::unit(n, k));
        EXPECT_LT(std::abs(c - (i == k ? s.eigenvalues(i) : Complex(0))), 1e-12);
      }
    }
  }
}

TEST(Spectral, RhsFormIsBilinear) {
  const Spectrum s = diagonalize(jacobian_at_origin(test::load_example(4)));
  const ComplexMatrix c = rhs_quadratic(s);
  EXPECT_LT((c - s.S.transpose() * s.S).norm(), 1e-14);
  EXPECT_EQ(c, c.transpose());
}

}  // namespace
}  // namespace doa

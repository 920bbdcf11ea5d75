#include <gtest/gtest.h>

#include "doa/errors.hpp"
#include "doa/oracle.hpp"
#include "doa/quasi_random.hpp"
#include "fixtures.hpp"

namespace doa {
namespace {

RealVector vec(std::initializer_list<double> v) {
  RealVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

TEST(Oracle, ClassifiesAlongTheAxis) {
  const PolyField f = test::load_example(1);
  EXPECT_EQ(simulate(f, vec({0.5, 0.0})).verdict, Verdict::kConverged);
  EXPECT_EQ(simulate(f, vec({-0.9, 0.0})).verdict, Verdict::kConverged);
  EXPECT_EQ(simulate(f, vec({-1.2, 0.0})).verdict, Verdict::kDiverged);
  EXPECT_EQ(simulate(f, vec({3.2, 0.0})).verdict, Verdict::kDiverged);
}

TEST(Oracle, DecidesAtTimeZero) {
  const PolyField f = test::load_example(1);
  const auto at_rest = simulate(f, vec({0.0, 0.0}));
  EXPECT_EQ(at_rest.verdict, Verdict::kConverged);
  EXPECT_EQ(at_rest.time, 0.0);
  const auto far = simulate(f, vec({2000.0, 0.0}));
  EXPECT_EQ(far.verdict, Verdict::kDiverged);
  EXPECT_EQ(far.time, 0.0);
}

TEST(Oracle, ShortHorizonIsUndecided) {
  SimParams p;
  p.horizon = 0.01;
  EXPECT_EQ(simulate(test::load_example(1), vec({1.0, 1.0}), p).verdict,
            Verdict::kUndecided);
  p.dt = 0.0;
  EXPECT_THROW(simulate(test::load_example(1), vec({1.0, 1.0}), p),
               std::invalid_argument);
}

TEST(Oracle, FixtureIds) {
  EXPECT_EQ(fixture_number("example2"), 2);
  EXPECT_EQ(fixture_number("example4.sys"), 4);
  EXPECT_FALSE(fixture_number("vanderpol"));
  EXPECT_THROW(exact_da_level(3, vec({0.0, 0.0})), UnknownExactDA);
  EXPECT_TRUE(exact_da_member(1, vec({2.0, 1.5})));
  EXPECT_FALSE(exact_da_member(1, vec({-1.1, 0.0})));
  EXPECT_TRUE(exact_da_member(2, vec({0.0, 0.0, 5.0})));
}

struct Box {
  RealVector lo, hi;
};

// Away from the exact boundary the integrator agrees with the closed form.
void check_agreement(int example, const Box& box, std::size_t count) {
  const PolyField f = test::load_example(example);
  const int n = f.dim();
  std::size_t checked = 0;
  for (std::uint64_t k = 1; checked < count; ++k) {
    const RealVector x = box.lo + halton_point(n, k).cwiseProduct(box.hi - box.lo);
    if (std::abs(exact_da_level(example, x)) < 0.05) continue;
    ++checked;
    const Verdict v = simulate(f, x).verdict;
    const Verdict expect =
        exact_da_member(example, x) ? Verdict::kConverged : Verdict::kDiverged;
    ASSERT_EQ(v, expect) << "example " << example << " x = " << x.transpose();
  }
}

TEST(Oracle, AgreesWithCircleFixture) {
  check_agreement(1, {vec({-3, -4}), vec({5, 4})}, 1000);
}

TEST(Oracle, AgreesWithHyperboloidFixture) {
  check_agreement(2, {vec({-2, -2, -2}), vec({2, 2, 2})}, 1000);
}

TEST(Oracle, HalvingTheStepKeepsVerdicts) {
  const PolyField f = test::load_example(3);
  SimParams fine;
  fine.dt = 5e-4;
  for (std::uint64_t k = 1; k <= 200; ++k) {
    const RealVector x = vec({-4, -4}) + 8.0 * halton_point(2, k);
    EXPECT_EQ(simulate(f, x).verdict, simulate(f, x, fine).verdict)
        << x.transpose();
  }
}

}  // namespace
}  // namespace doa

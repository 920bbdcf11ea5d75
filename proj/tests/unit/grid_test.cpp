#include <gtest/gtest.h>

#include "doa/errors.hpp"
#include "doa/grid.hpp"
#include "fixtures.hpp"

namespace doa {
namespace {

RealVector vec(std::initializer_list<double> v) {
  RealVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

TEST(Grid, CornersOnlyAtResolutionTwo) {
  const GridSpec g(vec({-1, 0}), vec({1, 2}), {2, 2});
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.point(0), vec({-1, 0}));
  EXPECT_EQ(g.point(1), vec({-1, 2}));
  EXPECT_EQ(g.point(2), vec({1, 0}));
  EXPECT_EQ(g.point(3), vec({1, 2}));
  EXPECT_THROW(g.point(4), std::out_of_range);
}

TEST(Grid, SliceFixesOneAxis) {
  const GridSpec g(vec({-1, -1, -1}), vec({1, 1, 1}), {3, 5, 0}, SliceSpec{2, 0.25});
  EXPECT_EQ(g.size(), 15u);
  EXPECT_EQ(g.free_axes(), (std::vector<int>{0, 1}));
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(g.point(k)(2), 0.25);
  EXPECT_EQ(g.point(14), vec({1, 1, 0.25}));
}

TEST(Grid, RejectsBadSpecs) {
  EXPECT_THROW(GridSpec(vec({0, 0}), vec({1, 1}), {1, 3}), Error);
  EXPECT_THROW(GridSpec(vec({0, 0}), vec({0, 1}), {2, 2}), Error);
  EXPECT_THROW(GridSpec(vec({0, 0}), vec({1, 1}), {2, 2}, SliceSpec{1, 0}), Error);
  EXPECT_THROW(GridSpec(vec({0, 0, 0}), vec({1, 1, 1}), {2, 2, 2}, SliceSpec{3, 0}),
               Error);
}

TEST(Grid, ClassificationIsIndependentOfWorkers) {
  GrowthConfig cfg;
  cfg.degree = 20;
  cfg.steps = 1;
  const Atlas atlas = grow_atlas(test::load_example(3), cfg);
  const GridSpec g(vec({-3, -3}), vec({3, 3}), {41, 37});
  const auto a = classify_grid(atlas, g, 1);
  const auto b = classify_grid(atlas, g, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].member, b[k].member);
    EXPECT_EQ(a[k].chart, b[k].chart);
    EXPECT_EQ(a[k].margin, b[k].margin);
  }
  EXPECT_GT(count_members(a), 0u);
  EXPECT_LT(count_members(a), a.size());
  const auto gen0 = classify_grid(atlas, g, 1, 0);
  EXPECT_LE(count_members(gen0), count_members(a));
}

TEST(Grid, DimensionMismatch) {
  GrowthConfig cfg;
  cfg.degree = 8;
  const Atlas atlas = grow_atlas(test::load_example(3), cfg);
  const GridSpec g(vec({-1, -1, -1}), vec({1, 1, 1}), {2, 2, 2});
  EXPECT_THROW(classify_grid(atlas, g), Error);
}

}  // namespace
}  // namespace doa

#include <gtest/gtest.h>

#include <filesystem>

#include "doa/serialization.hpp"
#include "fixtures.hpp"

namespace doa {
namespace {

TEST(Serialization, EmbryoRoundTripIsExact) {
  const PolyField f = test::load_example(4);
  const Spectrum s = diagonalize(jacobian_at_origin(f));
  const Embryo w = compute_coefficients(transform_field(f, s), s, 12);
  ComplexVector c(3);
  c << 0.1, Complex(0.2, -0.3), Complex(0.2, 0.3);
  const Embryo shifted = taylor_shift(w, c).with_generation(1);
  const Json j = embryo_to_json(shifted);
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("p"), 12);
  EXPECT_EQ(j.at("generation"), 1);
  const Embryo back = embryo_from_json(j);
  EXPECT_EQ(back.center(), shifted.center());
  const auto a = back.series().coefficients();
  const auto b = shifted.series().coefficients();
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  // Parse from text too: doubles survive the shortest-form round trip.
  EXPECT_EQ(embryo_to_json(embryo_from_json(Json::parse(j.dump()))), j);
}

TEST(Serialization, CoefficientsAreInGradedLexOrder) {
  const PolyField f = test::load_example(3);
  const Spectrum s = diagonalize(jacobian_at_origin(f));
  const Json j = embryo_to_json(compute_coefficients(transform_field(f, s), s, 6));
  const GradedLayout layout(2, 6);
  std::size_t last = 0;
  for (const auto& c : j.at("coeffs")) {
    const auto e = c.at("j").get<std::vector<int>>();
    const std::size_t r = layout.rank(MultiIndex{e[0], e[1]});
    EXPECT_GE(r, last);
    last = r;
  }
}

TEST(Serialization, SpectrumRoundTrip) {
  const Spectrum s = diagonalize(jacobian_at_origin(test::load_example(4)));
  const Spectrum back = spectrum_from_json(spectrum_to_json(s));
  EXPECT_EQ(back.eigenvalues, s.eigenvalues);
  EXPECT_EQ(back.S, s.S);
  EXPECT_EQ(back.S_inv, s.S_inv);
}

TEST(Serialization, AtlasRoundTripThroughFile) {
  GrowthConfig cfg;
  cfg.system_id = "example3";
  cfg.degree = 14;
  cfg.steps = 1;
  cfg.rule = MembershipRule::kTailLimsup;
  const Atlas atlas = grow_atlas(test::load_example(3), cfg);
  const auto path = std::filesystem::temp_directory_path() / "doa_atlas_rt.json";
  write_json_file(path, atlas_to_json(atlas));
  const Atlas back = atlas_from_json(read_json_file(path));
  std::filesystem::remove(path);
  EXPECT_EQ(back.system_id(), "example3");
  EXPECT_EQ(back.charts().size(), atlas.charts().size());
  EXPECT_EQ(back.charts()[0].rule(), MembershipRule::kTailLimsup);
  EXPECT_EQ(atlas_to_json(back), atlas_to_json(atlas));
  RealVector x(2);
  x << 0.7, -0.4;
  EXPECT_EQ(classify_real(back, x).margin, classify_real(atlas, x).margin);
}

TEST(Serialization, RejectsForeignFormat) {
  Json j = {{"format", "something-else"}};
  EXPECT_ANY_THROW(atlas_from_json(j));
}

}  // namespace
}  // namespace doa

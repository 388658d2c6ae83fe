#include <gtest/gtest.h>

#include <random>

#include "closure/enumerate.hpp"
#include "closure/maps.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace closure;
using fixtures::m;

namespace {

SpaceMap identity(const Space& x, const Space& y) { return SpaceMap(x, y, {0, 1}); }
SpaceMap constant_a(const Space& x, const Space& y) { return SpaceMap(x, y, {0, 0}); }

void expect_matches_oracle(const SpaceMap& f) {
  const auto o = oracle::to_oracle(f);
  const auto p = map_profile(f);
  EXPECT_EQ(p.closure_preserving, oracle::closure_preserving(o));
  EXPECT_EQ(p.continuous, oracle::continuous(o));
  EXPECT_EQ(p.nonseparating, oracle::nonseparating(o));
  EXPECT_EQ(p.preimage_separating, oracle::preimage_separating(o));
  const int nx = o.x.n;
  const int ny = o.y.n;
  for (std::size_t a = 0; a < f.domain().table().size(); ++a) {
    const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
    EXPECT_EQ(oracle::from_mask(f.image(ma), ny), oracle::image(o, oracle::from_mask(ma, nx)));
    EXPECT_TRUE(ma.subset_of(f.preimage(f.image(ma))));
  }
  for (std::size_t b = 0; b < f.codomain().table().size(); ++b) {
    const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
    EXPECT_EQ(oracle::from_mask(f.preimage(mb), nx), oracle::preimage(o, oracle::from_mask(mb, ny)));
    EXPECT_TRUE(f.image(f.preimage(mb)).subset_of(mb));
  }
}

}  // namespace

TEST(SpaceMap, Validation) {
  EXPECT_EQ(fixtures::error_kind([] { SpaceMap(fixtures::d2(), fixtures::d2(), {0}); }), ErrorKind::LengthMismatch);
  EXPECT_EQ(fixtures::error_kind([] { SpaceMap(fixtures::d2(), fixtures::d2(), {0, 2}); }),
            ErrorKind::ElementOutOfRange);
  const auto f = identity(fixtures::d2(), fixtures::d2());
  EXPECT_EQ(fixtures::error_kind([&] { f.image(m(4)); }), ErrorKind::MaskOutOfRange);
  EXPECT_EQ(fixtures::error_kind([&] { f.preimage(m(4)); }), ErrorKind::MaskOutOfRange);
}

TEST(SpaceMap, ImageAndPreimage) {
  const auto id = identity(fixtures::d2(), fixtures::d2());
  const auto k = constant_a(fixtures::d2(), fixtures::d2());
  EXPECT_EQ(id.image(m(1)), m(1));
  EXPECT_EQ(k.image(m(3)), m(1));
  EXPECT_EQ(k.image(m(0)), m(0));
  EXPECT_EQ(id.preimage(m(2)), m(2));
  EXPECT_EQ(k.preimage(m(1)), m(3));
  EXPECT_EQ(k.preimage(m(2)), m(0));
  const auto widen = SpaceMap(discrete_space(1), discrete_space(3), {2});
  EXPECT_EQ(widen.image(m(1)), m(4));
}

TEST(MapProfile, FixtureValues) {
  const auto d2 = fixtures::d2();
  const auto c2 = fixtures::c2();
  EXPECT_EQ(map_profile(identity(d2, d2)), (MapProfile{true, true, true, true}));
  EXPECT_EQ(map_profile(constant_a(d2, d2)), (MapProfile{true, true, true, true}));
  EXPECT_TRUE(is_nonseparating(constant_a(d2, fixtures::i2())));

  const auto into_c2 = identity(d2, c2);
  EXPECT_FALSE(is_closure_preserving(into_c2));
  EXPECT_FALSE(is_continuous(into_c2));
  EXPECT_FALSE(is_nonseparating(into_c2));
  EXPECT_FALSE(is_preimage_separating(into_c2));
  expect_matches_oracle(into_c2);
}

TEST(MapProfile, AgreesWithOracleOnSampledTwoPointPairs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto x = fixtures::random_space(2, rng);
    const auto y = fixtures::random_space(2, rng);
    for (const auto& f : enumerate_maps(x, y)) expect_matches_oracle(f);
  }
}

TEST(MapProfile, AgreesWithOracleOnMixedCarriers) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    const auto x = fixtures::random_space(1 + i % 3, rng);
    const auto y = fixtures::random_space(1 + (i / 3) % 3, rng);
    for (const auto& f : enumerate_maps(x, y)) expect_matches_oracle(f);
  }
}

TEST(MapProfile, TheoremsOnIsotonicTwoPointPairs) {
  const auto spaces = enumerate_spaces(2, GeneratorClass::isotonic);
  for (const auto& x : spaces) {
    for (const auto& y : spaces) {
      for (const auto& f : enumerate_maps(x, y)) {
        const auto p = map_profile(f);
        EXPECT_EQ(p.closure_preserving, p.continuous);
        EXPECT_EQ(p.nonseparating, p.preimage_separating);
        if (p.closure_preserving) EXPECT_TRUE(p.nonseparating);
        if (is_pointwise_symmetric(y)) EXPECT_EQ(p.nonseparating, p.continuous);
      }
    }
  }
}

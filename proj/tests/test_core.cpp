#include <gtest/gtest.h>

#include <random>

#include "closure/core.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace closure;
using fixtures::m;

TEST(GroundSet, RejectsBadSizesAndDuplicates) {
  EXPECT_EQ(fixtures::error_kind([] { GroundSet({}); }), ErrorKind::InvalidGroundSet);
  EXPECT_EQ(fixtures::error_kind([] { GroundSet::letters(17); }), ErrorKind::InvalidGroundSet);
  EXPECT_EQ(fixtures::error_kind([] { GroundSet({"a", "b", "a"}); }), ErrorKind::DuplicateElement);
  EXPECT_EQ(GroundSet::letters(16).size(), 16U);
  EXPECT_EQ(GroundSet({"p", "q"}).index_of("q"), 1U);
}

TEST(MakeSpace, Validation) {
  EXPECT_EQ(fixtures::error_kind([] { make_space(GroundSet::letters(2), {m(0), m(1), m(2)}); }),
            ErrorKind::LengthMismatch);
  EXPECT_EQ(fixtures::error_kind([] { make_space(GroundSet::letters(2), {m(0), m(1), m(4), m(3)}); }),
            ErrorKind::MaskOutOfRange);
  const auto s = make_space(GroundSet::letters(1), {m(1), m(1)});
  EXPECT_FALSE(is_grounded(s));
  EXPECT_EQ(s.closure(m(0)), m(1));
}

TEST(Operators, FixtureValues) {
  const auto d2 = fixtures::d2();
  const auto i2 = fixtures::i2();
  const auto c2 = fixtures::c2();
  EXPECT_EQ(d2.closure(m(1)), m(1));
  EXPECT_EQ(i2.closure(m(0)), m(3));
  EXPECT_EQ(c2.closure(m(3)), m(0));

  EXPECT_EQ(d2.interior(m(1)), m(1));
  EXPECT_EQ(i2.interior(m(3)), m(0));
  EXPECT_EQ(c2.interior(m(0)), m(3));

  EXPECT_EQ(d2.exterior(m(1)), m(2));
  for (unsigned a = 0; a < 4; ++a) EXPECT_EQ(i2.exterior(m(a)), m(0));
  EXPECT_EQ(c2.exterior(m(3)), m(3));

  EXPECT_TRUE(d2.is_neighborhood(m(1), 0));
  EXPECT_FALSE(i2.is_neighborhood(m(3), 0));
  EXPECT_TRUE(c2.is_neighborhood(m(0), 0));

  EXPECT_TRUE(d2.are_separated(m(1), m(2)));
  EXPECT_FALSE(d2.are_separated(m(1), m(1)));
  EXPECT_TRUE(i2.are_separated(m(0), m(0)));
  EXPECT_FALSE(i2.are_separated(m(0), m(1)));
  EXPECT_FALSE(i2.are_separated(m(1), m(2)));
}

TEST(Operators, RangeErrors) {
  const auto d2 = fixtures::d2();
  EXPECT_EQ(fixtures::error_kind([&] { d2.closure(m(4)); }), ErrorKind::MaskOutOfRange);
  EXPECT_EQ(fixtures::error_kind([&] { d2.interior(m(8)); }), ErrorKind::MaskOutOfRange);
  EXPECT_EQ(fixtures::error_kind([&] { d2.exterior(m(4)); }), ErrorKind::MaskOutOfRange);
  EXPECT_EQ(fixtures::error_kind([&] { d2.is_neighborhood(m(1), 2); }), ErrorKind::ElementOutOfRange);
  EXPECT_EQ(fixtures::error_kind([&] { d2.are_separated(m(1), m(4)); }), ErrorKind::MaskOutOfRange);
}

TEST(Profiles, FixtureValues) {
  EXPECT_EQ(axiom_profile(fixtures::d2()), (AxiomProfile{true, true, true, true, true}));
  EXPECT_EQ(axiom_profile(fixtures::i2()), (AxiomProfile{false, true, true, true, true}));
  // cl({a} ∪ {b}) = ∅ ⊆ cl({a}) ∪ cl({b}), and every other union is trivially covered.
  EXPECT_EQ(axiom_profile(fixtures::c2()), (AxiomProfile{true, false, false, true, true}));

  EXPECT_EQ(symmetry_profile(fixtures::d2()), (SymmetryProfile{true, true, true}));
  EXPECT_EQ(symmetry_profile(fixtures::i2()), (SymmetryProfile{true, true, true}));
  EXPECT_EQ(symmetry_profile(fixtures::c2()), (SymmetryProfile{true, true, false}));
}

namespace {

void expect_matches_oracle(const Space& s) {
  const auto o = oracle::to_oracle(s);
  const auto ax = axiom_profile(s);
  EXPECT_EQ(ax.grounded, oracle::grounded(o));
  EXPECT_EQ(ax.isotonic, oracle::isotonic(o));
  EXPECT_EQ(is_isotonic_pairwise(s), ax.isotonic);
  EXPECT_EQ(ax.enlarging, oracle::enlarging(o));
  EXPECT_EQ(ax.idempotent, oracle::idempotent(o));
  EXPECT_EQ(ax.sublinear, oracle::sublinear(o));
  const auto sym = symmetry_profile(s);
  EXPECT_EQ(sym.pointwise_symmetric, oracle::pointwise_symmetric(o));
  EXPECT_EQ(sym.r0, oracle::r0(o));
  EXPECT_EQ(sym.exterior_separated, oracle::exterior_separated(o));
  const int n = static_cast<int>(s.size());
  for (std::size_t a = 0; a < s.table().size(); ++a) {
    const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
    const auto oa = oracle::from_mask(ma, n);
    EXPECT_EQ(oracle::from_mask(s.interior(ma), n), oracle::interior(o, oa));
    EXPECT_EQ(oracle::from_mask(s.exterior(ma), n), oracle::exterior(o, oa));
    for (std::size_t b = 0; b < s.table().size(); ++b) {
      const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
      const bool sep = s.are_separated(ma, mb);
      EXPECT_EQ(sep, oracle::separated(o, oa, oracle::from_mask(mb, n)));
      EXPECT_EQ(sep, s.are_separated(mb, ma));
      EXPECT_EQ(sep, ma.subset_of(s.exterior(mb)) && mb.subset_of(s.exterior(ma)));
    }
  }
}

}  // namespace

TEST(Profiles, AgreeWithOracleOnEveryTwoPointSpace) {
  int count = 0;
  oracle::for_each_table(2, [&](const oracle::OSpace& o) {
    expect_matches_oracle(oracle::from_oracle(o));
    ++count;
  });
  EXPECT_EQ(count, 256);
}

TEST(Profiles, AgreeWithOracleOnRandomSpaces) {
  std::mt19937_64 rng(20261017);
  for (int i = 0; i < 400; ++i) expect_matches_oracle(fixtures::random_space(1 + i % 3 + (i % 7 == 0), rng));
}

TEST(Profiles, OneElementSpaces) {
  // Every closure function on one point is pointwise-symmetric, R0 and exterior-separated.
  oracle::for_each_table(1, [&](const oracle::OSpace& o) {
    const auto s = oracle::from_oracle(o);
    EXPECT_EQ(symmetry_profile(s), (SymmetryProfile{true, true, true}));
    expect_matches_oracle(s);
  });
}

TEST(Profiles, SymmetryImplicationsOnEveryTwoPointSpace) {
  oracle::for_each_table(2, [&](const oracle::OSpace& o) {
    const auto s = oracle::from_oracle(o);
    const auto sym = symmetry_profile(s);
    if (sym.exterior_separated) EXPECT_TRUE(sym.pointwise_symmetric && sym.r0);
    if (is_isotonic(s)) {
      EXPECT_EQ(sym.pointwise_symmetric, sym.r0);
      EXPECT_EQ(sym.r0, sym.exterior_separated);
    }
  });
}

TEST(Profiles, PureAndRepeatable) {
  std::mt19937_64 rng(5);
  const auto s = fixtures::random_space(4, rng);
  const auto copy = s;
  EXPECT_EQ(axiom_profile(s), axiom_profile(copy));
  EXPECT_EQ(symmetry_profile(s), symmetry_profile(s));
  EXPECT_EQ(s, copy);
}

TEST(SubsetMask, SubmaskEnumeration) {
  std::vector<unsigned> seen;
  for_each_submask(m(0b101), [&](SubsetMask s) { seen.push_back(s.bits()); });
  EXPECT_EQ(seen, (std::vector<unsigned>{5, 4, 1, 0}));
  seen.clear();
  for_each_submask_ascending(m(0b101), [&](SubsetMask s) {
    seen.push_back(s.bits());
    return true;
  });
  EXPECT_EQ(seen, (std::vector<unsigned>{0, 1, 4, 5}));
}

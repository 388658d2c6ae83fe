#pragma once

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "closure/core.hpp"
#include "closure/error.hpp"

namespace fixtures {

using closure::SubsetMask;

inline SubsetMask m(unsigned bits) { return SubsetMask(bits); }

/// Two-point space from its four closure values, indexed ∅, {a}, {b}, {a,b}.
inline closure::Space two_point(unsigned e, unsigned a, unsigned b, unsigned ab) {
  return closure::make_space(closure::GroundSet::letters(2), {m(e), m(a), m(b), m(ab)});
}

inline closure::Space d2() { return two_point(0, 1, 2, 3); }
inline closure::Space i2() { return two_point(3, 3, 3, 3); }
inline closure::Space c2() { return two_point(0, 1, 2, 0); }

inline closure::Space random_space(std::size_t n, std::mt19937_64& rng) {
  std::vector<SubsetMask> table(std::size_t{1} << n);
  std::uniform_int_distribution<unsigned> pick(0, static_cast<unsigned>(table.size() - 1));
  for (auto& t : table) t = m(pick(rng));
  return closure::make_space(closure::GroundSet::letters(n), table);
}

template <typename Fn>
closure::ErrorKind error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const closure::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a closure::Error";
  return closure::ErrorKind::IoError;
}

}  // namespace fixtures

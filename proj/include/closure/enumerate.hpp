#pragma once

// Generators for closure spaces and maps at desk scale.
//
// Exhaustive streams walk the closure table slot by slot (slot m holds cl(m))
// and try values in ascending order, keeping only values consistent with the
// class constraints among already-filled slots. Streams therefore come out in
// lexicographic order of (cl(0), cl(1), ...), and each member of the class is
// emitted exactly once.
//
// Samplers are random-access: sample i depends only on (seed, i), so sweeps
// can be split across workers without changing what gets checked.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "closure/core.hpp"
#include "closure/maps.hpp"
#include "closure/separation.hpp"

namespace closure {

enum class GeneratorClass {
  all,
  isotonic,
  isotonic_pointwise_symmetric,
  exterior_separated,
  enlarging_isotonic,
};

inline constexpr std::array kGeneratorClasses = {GeneratorClass::all, GeneratorClass::isotonic,
                                                 GeneratorClass::isotonic_pointwise_symmetric,
                                                 GeneratorClass::exterior_separated, GeneratorClass::enlarging_isotonic};

constexpr std::string_view to_string(GeneratorClass cls) {
  switch (cls) {
    case GeneratorClass::all: return "all";
    case GeneratorClass::isotonic: return "isotonic";
    case GeneratorClass::isotonic_pointwise_symmetric: return "isotonic_pointwise_symmetric";
    case GeneratorClass::exterior_separated: return "exterior_separated";
    case GeneratorClass::enlarging_isotonic: return "enlarging_isotonic";
  }
  return "?";
}

inline GeneratorClass parse_generator_class(std::string_view name) {
  for (auto cls : kGeneratorClasses) {
    if (to_string(cls) == name) return cls;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator class '" + std::string(name) + "'");
}

/// Class membership evaluated through the core predicates.
inline bool in_class(const Space& s, GeneratorClass cls) {
  switch (cls) {
    case GeneratorClass::all: return true;
    case GeneratorClass::isotonic: return is_isotonic(s);
    case GeneratorClass::isotonic_pointwise_symmetric: return is_isotonic(s) && is_pointwise_symmetric(s);
    case GeneratorClass::exterior_separated: return has_exterior_separation(s);
    case GeneratorClass::enlarging_isotonic: return is_isotonic(s) && is_enlarging(s);
  }
  return false;
}

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kDefaultMaxSpaces = std::uint64_t{1} << 20;

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kUnbounded / a) return kUnbounded;
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

/// Is value t admissible for slot m given slots [0, m) of table?
inline bool slot_admissible(GeneratorClass cls, std::span<const SubsetMask> table, std::size_t m, SubsetMask t,
                            std::size_t n) {
  const SubsetMask a(static_cast<SubsetMask::bits_type>(m));
  const bool singleton = a.size() == 1;
  switch (cls) {
    case GeneratorClass::all:
      return true;
    case GeneratorClass::isotonic:
    case GeneratorClass::isotonic_pointwise_symmetric:
    case GeneratorClass::enlarging_isotonic: {
      bool ok = true;
      for_each_element(a, [&](std::size_t x) { ok = ok && table[a.without(x).index()].subset_of(t); });
      if (!ok) return false;
      if (cls == GeneratorClass::enlarging_isotonic) return a.subset_of(t);
      if (cls == GeneratorClass::isotonic_pointwise_symmetric && singleton) {
        const auto x = static_cast<std::size_t>(std::countr_zero(a.bits()));
        for (std::size_t y = 0; y < x; ++y) {
          if (t.contains(y) != table[SubsetMask::singleton(y).index()].contains(x)) return false;
        }
      }
      return true;
    }
    case GeneratorClass::exterior_separated: {
      // Every pair (x, A) must satisfy cl({x}) ∩ A ≠ ∅ ⇒ x ∈ cl(A); check the
      // pairs whose later slot is m.
      for (std::size_t x = 0; x < n; ++x) {
        const auto sx = SubsetMask::singleton(x).index();
        if (sx > m) break;
        const SubsetMask clx = sx == m ? t : table[sx];
        if (!clx.disjoint(a) && !t.contains(x)) return false;
      }
      if (singleton) {
        const auto x = static_cast<std::size_t>(std::countr_zero(a.bits()));
        for (std::size_t b = 0; b < m; ++b) {
          if (!t.disjoint(SubsetMask(static_cast<SubsetMask::bits_type>(b))) && !table[b].contains(x)) return false;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Up-sets (upward-closed families) of the subset lattice on n points, each
/// encoded as a bitmask over subset indices, ascending. n ≤ 4.
inline std::vector<std::uint32_t> up_sets(std::size_t n) {
  if (n == 0 || n > 4) throw Error(ErrorKind::InvalidArgument, "up_sets needs 1 <= n <= 4");
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::uint32_t> out;
  const std::uint64_t families = std::uint64_t{1} << subsets;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    bool upward = true;
    for (std::size_t m = 0; m < subsets && upward; ++m) {
      if (((fam >> m) & 1U) == 0) continue;
      for (std::size_t x = 0; x < n; ++x) {
        if (((fam >> (m | (std::size_t{1} << x))) & 1U) == 0) {
          upward = false;
          break;
        }
      }
    }
    if (upward) out.push_back(static_cast<std::uint32_t>(fam));
  }
  return out;
}

/// Lexicographic stream of every space of a class on n lettered points.
class SpaceEnumerator {
 public:
  SpaceEnumerator(std::size_t n, GeneratorClass cls, std::uint64_t max_spaces = kDefaultMaxSpaces)
      : n_(n), cls_(cls), scratch_(discrete_space(n)) {
    if (n > 4) throw Error(ErrorKind::UniverseTooLarge, "exhaustive enumeration needs n <= 4");
    const auto bound = size_upper_bound(n, cls);
    if (bound > max_spaces) {
      if (cls == GeneratorClass::all || cls == GeneratorClass::isotonic) {
        throw Error(ErrorKind::UniverseTooLarge, "class " + std::string(to_string(cls)) + " on " + std::to_string(n) +
                                                     " points has " + std::to_string(bound) + " spaces, limit is " +
                                                     std::to_string(max_spaces));
      }
      // Filtered classes may be far smaller than their closed-form bound.
      SpaceEnumerator probe(n, cls, Unchecked{});
      std::uint64_t count = 0;
      while (probe.next()) {
        if (++count > max_spaces) {
          throw Error(ErrorKind::UniverseTooLarge, "class " + std::string(to_string(cls)) + " on " + std::to_string(n) +
                                                       " points has more than " + std::to_string(max_spaces) +
                                                       " spaces");
        }
      }
    }
  }

  /// Closed-form bound on the class size (exact for all and isotonic).
  static std::uint64_t size_upper_bound(std::size_t n, GeneratorClass cls) {
    const std::uint64_t subsets = std::uint64_t{1} << n;
    if (cls == GeneratorClass::all || cls == GeneratorClass::exterior_separated || n > 4) {
      return detail::saturating_pow(subsets, subsets);
    }
    return detail::saturating_pow(up_sets(n).size(), n);
  }

  /// Advances to the next space; false once the stream is exhausted.
  bool next() {
    auto& table = detail::TableAccess::table(scratch_);
    if (!started_) {
      started_ = true;
      if (!fill_from(0, 0)) return done();
      ++emitted_;
      return true;
    }
    if (finished_) return false;
    // Backtrack: bump the deepest slot that still has a larger admissible value.
    std::size_t m = table.size();
    while (m > 0) {
      --m;
      if (fill_from(m, table[m].bits() + 1)) {
        ++emitted_;
        return true;
      }
    }
    return done();
  }

  const Space& current() const { return scratch_; }
  std::uint64_t emitted() const { return emitted_; }
  std::size_t n() const { return n_; }
  GeneratorClass generator_class() const { return cls_; }

 private:
  struct Unchecked {};
  SpaceEnumerator(std::size_t n, GeneratorClass cls, Unchecked) : n_(n), cls_(cls), scratch_(discrete_space(n)) {}

  bool done() {
    finished_ = true;
    return false;
  }

  /// Sets slot m to its smallest admissible value ≥ start and completes the
  /// remaining slots minimally, backtracking as needed within [m, end).
  bool fill_from(std::size_t m, std::uint32_t start) {
    auto& table = detail::TableAccess::table(scratch_);
    const std::size_t slots = table.size();
    const std::uint32_t limit = static_cast<std::uint32_t>(slots);
    const std::size_t floor = m;
    std::uint32_t value = start;
    while (true) {
      bool placed = false;
      for (; value < limit; ++value) {
        if (detail::slot_admissible(cls_, table, m, SubsetMask(value), n_)) {
          table[m] = SubsetMask(value);
          placed = true;
          break;
        }
      }
      if (placed) {
        if (m + 1 == slots) return true;
        ++m;
        value = 0;
        continue;
      }
      if (m == floor) return false;
      --m;
      value = table[m].bits() + 1;
    }
  }

  std::size_t n_;
  GeneratorClass cls_;
  Space scratch_;
  bool started_ = false;
  bool finished_ = false;
  std::uint64_t emitted_ = 0;
};

/// Calls fn(space) for each space of the class, in stream order.
template <typename Fn>
void for_each_space(std::size_t n, GeneratorClass cls, Fn&& fn, std::uint64_t max_spaces = kDefaultMaxSpaces) {
  SpaceEnumerator stream(n, cls, max_spaces);
  while (stream.next()) fn(stream.current());
}

inline std::vector<Space> enumerate_spaces(std::size_t n, GeneratorClass cls,
                                           std::uint64_t max_spaces = kDefaultMaxSpaces) {
  std::vector<Space> out;
  for_each_space(n, cls, [&](const Space& s) { out.push_back(s); }, max_spaces);
  return out;
}

/// Exact class size, or nullopt once it exceeds cap.
inline std::optional<std::uint64_t> class_size(std::size_t n, GeneratorClass cls, std::uint64_t cap) {
  if (n > 4) return std::nullopt;
  const auto bound = SpaceEnumerator::size_upper_bound(n, cls);
  if (cls == GeneratorClass::all || cls == GeneratorClass::isotonic) {
    if (bound > cap) return std::nullopt;
    return bound;
  }
  SpaceEnumerator stream(n, cls, kUnbounded);
  std::uint64_t count = 0;
  while (stream.next()) {
    if (++count > cap) return std::nullopt;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Generator for item `index` of the stream named by `seed`.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

/// Uniform draw from [0, bound) by rejection; identical on every platform.
inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = kUnbounded - kUnbounded % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

inline Space table_from_up_sets(const GroundPtr& ground, const std::vector<std::uint32_t>& coords) {
  std::vector<SubsetMask> table(ground->subset_count());
  for (std::size_t m = 0; m < table.size(); ++m) {
    for (std::size_t x = 0; x < coords.size(); ++x) {
      if ((coords[x] >> m) & 1U) table[m] = table[m].with(x);
    }
  }
  return Space(ground, std::move(table));
}

}  // namespace detail

/// Random-access sampler. isotonic classes need n ≤ 4; all and
/// exterior_separated work for any n ≤ 16.
///
/// isotonic and enlarging_isotonic are uniform over their class (one random
/// up-set per output point); isotonic_pointwise_symmetric rejects from
/// isotonic; exterior_separated builds singleton closures symmetric in the
/// off-diagonal and then draws each cl(A) above the forced points
/// { x : cl({x}) ∩ A ≠ ∅ }.
class SpaceSampler {
 public:
  SpaceSampler(std::size_t n, GeneratorClass cls, std::uint64_t seed)
      : ground_(std::make_shared<const GroundSet>(GroundSet::letters(n))), cls_(cls), seed_(seed) {
    if (cls != GeneratorClass::all && cls != GeneratorClass::exterior_separated) {
      if (n > 4) throw Error(ErrorKind::UniverseTooLarge, "isotonic sampling needs n <= 4");
      up_sets_ = up_sets(n);
      containing_.resize(n);
      for (auto fam : up_sets_) {
        for (std::size_t x = 0; x < n; ++x) {
          if ((fam >> SubsetMask::singleton(x).index()) & 1U) containing_[x].push_back(fam);
        }
      }
    }
  }

  Space operator()(std::uint64_t index) const {
    auto rng = detail::stream_rng(seed_, index);
    const std::size_t n = ground_->size();
    const std::uint64_t values = ground_->subset_count();
    switch (cls_) {
      case GeneratorClass::all: {
        std::vector<SubsetMask> table(ground_->subset_count());
        for (auto& entry : table) entry = SubsetMask(static_cast<SubsetMask::bits_type>(detail::below(rng, values)));
        return Space(ground_, std::move(table));
      }
      case GeneratorClass::isotonic:
      case GeneratorClass::isotonic_pointwise_symmetric: {
        std::vector<std::uint32_t> coords(n);
        while (true) {
          for (auto& c : coords) c = up_sets_[detail::below(rng, up_sets_.size())];
          Space s = detail::table_from_up_sets(ground_, coords);
          if (cls_ == GeneratorClass::isotonic || is_pointwise_symmetric(s)) return s;
        }
      }
      case GeneratorClass::enlarging_isotonic: {
        std::vector<std::uint32_t> coords(n);
        for (std::size_t x = 0; x < n; ++x) coords[x] = containing_[x][detail::below(rng, containing_[x].size())];
        return detail::table_from_up_sets(ground_, coords);
      }
      case GeneratorClass::exterior_separated: {
        std::vector<SubsetMask> table(ground_->subset_count());
        table[0] = SubsetMask(static_cast<SubsetMask::bits_type>(detail::below(rng, values)));
        for (std::size_t x = 0; x < n; ++x) {
          auto& clx = table[SubsetMask::singleton(x).index()];
          if (rng() & 1U) clx = clx.with(x);
          for (std::size_t y = x + 1; y < n; ++y) {
            if (rng() & 1U) {
              clx = clx.with(y);
              auto& cly = table[SubsetMask::singleton(y).index()];
              cly = cly.with(x);
            }
          }
        }
        for (std::size_t m = 3; m < table.size(); ++m) {
          const SubsetMask a(static_cast<SubsetMask::bits_type>(m));
          if (a.size() < 2) continue;
          SubsetMask forced;
          for (std::size_t x = 0; x < n; ++x) {
            if (!table[SubsetMask::singleton(x).index()].disjoint(a)) forced = forced.with(x);
          }
          table[m] = forced | SubsetMask(static_cast<SubsetMask::bits_type>(detail::below(rng, values)));
        }
        return Space(ground_, std::move(table));
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown generator class");
  }

  std::size_t n() const { return ground_->size(); }
  GeneratorClass generator_class() const { return cls_; }
  const GroundPtr& ground_ptr() const { return ground_; }

 private:
  GroundPtr ground_;
  GeneratorClass cls_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> up_sets_;
  std::vector<std::vector<std::uint32_t>> containing_;
};

inline std::vector<Space> sample_spaces(std::size_t n, GeneratorClass cls, std::size_t count, std::uint64_t seed) {
  if (n == 0 || n > 4) throw Error(ErrorKind::InvalidArgument, "sample_spaces needs 1 <= n <= 4");
  SpaceSampler sampler(n, cls, seed);
  std::vector<Space> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler(i));
  return out;
}

// ---------------------------------------------------------------------------
// Maps

/// ny^nx, saturating.
inline std::uint64_t map_count(std::size_t nx, std::size_t ny) { return detail::saturating_pow(ny, nx); }

/// Assignment number k in lexicographic order (element 0 most significant).
inline std::vector<std::size_t> assignment_at(std::size_t nx, std::size_t ny, std::uint64_t k) {
  std::vector<std::size_t> out(nx);
  for (std::size_t i = nx; i-- > 0;) {
    out[i] = static_cast<std::size_t>(k % ny);
    k /= ny;
  }
  return out;
}

inline std::vector<SpaceMap> enumerate_maps(const Space& x, const Space& y,
                                            std::uint64_t max_maps = kDefaultMaxSpaces) {
  const auto count = map_count(x.size(), y.size());
  if (count > max_maps) {
    throw Error(ErrorKind::UniverseTooLarge, std::to_string(y.size()) + "^" + std::to_string(x.size()) +
                                                 " maps exceed the limit of " + std::to_string(max_maps));
  }
  std::vector<SpaceMap> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.emplace_back(x, y, assignment_at(x.size(), y.size(), k));
  return out;
}

// ---------------------------------------------------------------------------
// Relations

/// Every unordered pair {A, B} (A ≤ B) on n points, ascending. Relation
/// number k contains pair j iff bit j of k is set.
inline std::vector<SubsetPair> canonical_pairs(std::size_t n) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<SubsetPair> out;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      out.push_back({SubsetMask(static_cast<SubsetMask::bits_type>(a)), SubsetMask(static_cast<SubsetMask::bits_type>(b))});
    }
  }
  return out;
}

inline SeparationRelation relation_at(const GroundPtr& ground, const std::vector<SubsetPair>& pairs, std::uint64_t k) {
  SeparationRelation rel(ground);
  for (std::size_t j = 0; j < pairs.size() && j < 64; ++j) {
    if ((k >> j) & 1U) rel.insert(pairs[j].first, pairs[j].second);
  }
  return rel;
}

/// Random-access relation sampler on n ≤ 4 points mixing relations that
/// satisfy the reconstruction conditions with ones that do not: half are
/// uniform random pair sets; the other half are separated_pairs of a random
/// isotonic pointwise-symmetric space, every other one with a single pair
/// toggled.
class RelationSampler {
 public:
  RelationSampler(std::size_t n, std::uint64_t seed)
      : spaces_(n, GeneratorClass::isotonic_pointwise_symmetric, detail::splitmix64(seed ^ 0x5EEDULL)),
        pairs_(canonical_pairs(n)),
        seed_(seed) {}

  SeparationRelation operator()(std::uint64_t index) const {
    auto rng = detail::stream_rng(seed_, index);
    const auto mode = rng() & 3U;
    if (mode < 2) {
      SeparationRelation rel(spaces_.ground_ptr());
      for (const auto& p : pairs_) {
        if (rng() & 1U) rel.insert(p.first, p.second);
      }
      return rel;
    }
    auto rel = separated_pairs(spaces_(index));
    if (mode == 3) {
      const auto& p = pairs_[detail::below(rng, pairs_.size())];
      if (!rel.erase(p.first, p.second)) rel.insert(p.first, p.second);
    }
    return rel;
  }

 private:
  SpaceSampler spaces_;
  std::vector<SubsetPair> pairs_;
  std::uint64_t seed_;
};

}  // namespace closure

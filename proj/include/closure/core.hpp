#pragma once

// Finite generalized closure spaces: a carrier of at most 16 labelled points
// together with an arbitrary map from subsets to subsets. Nothing here
// assumes any closure axiom; the predicates below test them.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "closure/error.hpp"

namespace closure {

inline constexpr std::size_t kMaxElements = 16;

/// A subset of a ground set, bit i set iff element i is a member.
class SubsetMask {
 public:
  using bits_type = std::uint32_t;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(bits_type bits) : bits_(bits) {}

  static constexpr SubsetMask singleton(std::size_t i) { return SubsetMask(bits_type{1} << i); }
  static constexpr SubsetMask full(std::size_t n) { return SubsetMask((bits_type{1} << n) - 1); }

  constexpr bits_type bits() const { return bits_; }
  constexpr std::size_t index() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t i) const { return ((bits_ >> i) & 1U) != 0; }
  constexpr bool subset_of(SubsetMask other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(SubsetMask other) const { return (bits_ & other.bits_) == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  constexpr SubsetMask with(std::size_t i) const { return SubsetMask(bits_ | (bits_type{1} << i)); }
  constexpr SubsetMask without(std::size_t i) const { return SubsetMask(bits_ & ~(bits_type{1} << i)); }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ | b.bits_); }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ & ~b.bits_); }

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

 private:
  bits_type bits_ = 0;
};

/// Calls fn(element index) for every member of mask, ascending.
template <typename Fn>
constexpr void for_each_element(SubsetMask mask, Fn&& fn) {
  for (auto bits = mask.bits(); bits != 0; bits &= bits - 1) {
    fn(static_cast<std::size_t>(std::countr_zero(bits)));
  }
}

/// Calls fn(sub) for every sub ⊆ mask, including ∅ and mask itself.
/// Order is descending numerically.
template <typename Fn>
constexpr void for_each_submask(SubsetMask mask, Fn&& fn) {
  const auto m = mask.bits();
  for (auto sub = m;; sub = (sub - 1) & m) {
    fn(SubsetMask(sub));
    if (sub == 0) break;
  }
}

/// Same as for_each_submask but ascending, ∅ first. fn returns false to stop.
template <typename Fn>
constexpr bool for_each_submask_ascending(SubsetMask mask, Fn&& fn) {
  const auto m = mask.bits();
  SubsetMask::bits_type sub = 0;
  do {
    if (!fn(SubsetMask(sub))) return false;
    sub = (sub - m) & m;
  } while (sub != 0);
  return true;
}

/// Ordered finite carrier. Element index i is bit i of every SubsetMask.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty() || labels_.size() > kMaxElements) {
      throw Error(ErrorKind::InvalidGroundSet,
                  "ground set must have between 1 and 16 elements, got " + std::to_string(labels_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : labels_) {
      if (!seen.insert(label).second) {
        throw Error(ErrorKind::DuplicateElement, "duplicate element '" + label + "'");
      }
    }
  }

  /// Elements named a, b, c, ... in order.
  static GroundSet letters(std::size_t n) {
    if (n == 0 || n > kMaxElements) {
      throw Error(ErrorKind::InvalidGroundSet, "letters() needs 1 <= n <= 16");
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
    return GroundSet(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t subset_count() const { return std::size_t{1} << labels_.size(); }
  SubsetMask full() const { return SubsetMask::full(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool valid(SubsetMask m) const { return m.subset_of(full()); }
  SubsetMask complement(SubsetMask m) const { return full() - m; }

  void require_valid(SubsetMask m) const {
    if (!valid(m)) {
      throw Error(ErrorKind::MaskOutOfRange,
                  "mask " + std::to_string(m.bits()) + " has bits outside a " + std::to_string(size()) +
                      "-element ground set");
    }
  }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

namespace detail {
struct TableAccess;
}

/// A generalized closure space: entry m of the table is cl(m). Immutable.
class Space {
 public:
  Space(GroundPtr ground, std::vector<SubsetMask> table) : ground_(std::move(ground)), table_(std::move(table)) {
    if (!ground_) throw Error(ErrorKind::InvalidGroundSet, "null ground set");
    if (table_.size() != ground_->subset_count()) {
      throw Error(ErrorKind::LengthMismatch, "closure table has " + std::to_string(table_.size()) +
                                                 " entries, expected " + std::to_string(ground_->subset_count()));
    }
    for (auto entry : table_) ground_->require_valid(entry);
  }

  const GroundSet& ground() const { return *ground_; }
  const GroundPtr& ground_ptr() const { return ground_; }
  std::size_t size() const { return ground_->size(); }
  SubsetMask full() const { return ground_->full(); }
  std::span<const SubsetMask> table() const { return table_; }

  SubsetMask closure(SubsetMask a) const {
    ground_->require_valid(a);
    return table_[a.index()];
  }

  /// X − cl(X − A)
  SubsetMask interior(SubsetMask a) const {
    ground_->require_valid(a);
    return full() - table_[(full() - a).index()];
  }

  /// X − cl(A)
  SubsetMask exterior(SubsetMask a) const {
    ground_->require_valid(a);
    return full() - table_[a.index()];
  }

  bool is_neighborhood(SubsetMask n_set, std::size_t x) const {
    require_element(x);
    return interior(n_set).contains(x);
  }

  /// A ∩ cl(B) = ∅ and cl(A) ∩ B = ∅.
  bool are_separated(SubsetMask a, SubsetMask b) const {
    ground_->require_valid(a);
    ground_->require_valid(b);
    return a.disjoint(table_[b.index()]) && table_[a.index()].disjoint(b);
  }

  void require_element(std::size_t x) const {
    if (x >= size()) {
      throw Error(ErrorKind::ElementOutOfRange,
                  "element index " + std::to_string(x) + " outside a " + std::to_string(size()) + "-element ground set");
    }
  }

  friend bool operator==(const Space& a, const Space& b) {
    return (a.ground_ == b.ground_ || *a.ground_ == *b.ground_) && a.table_ == b.table_;
  }

 private:
  friend struct detail::TableAccess;
  GroundPtr ground_;
  std::vector<SubsetMask> table_;
};

namespace detail {
// Generators rewrite a scratch space in place instead of allocating one
// table per emitted space.
struct TableAccess {
  static std::vector<SubsetMask>& table(Space& s) { return s.table_; }
};
}  // namespace detail

inline Space make_space(GroundSet ground, std::vector<SubsetMask> table) {
  return Space(std::make_shared<const GroundSet>(std::move(ground)), std::move(table));
}

/// Identity closure on n lettered points.
inline Space discrete_space(std::size_t n) {
  auto ground = std::make_shared<const GroundSet>(GroundSet::letters(n));
  std::vector<SubsetMask> table(ground->subset_count());
  for (std::size_t m = 0; m < table.size(); ++m) table[m] = SubsetMask(static_cast<SubsetMask::bits_type>(m));
  return Space(std::move(ground), std::move(table));
}

/// cl(A) = X for every A.
inline Space indiscrete_constant_space(std::size_t n) {
  auto ground = std::make_shared<const GroundSet>(GroundSet::letters(n));
  std::vector<SubsetMask> table(ground->subset_count(), ground->full());
  return Space(std::move(ground), std::move(table));
}

// ---------------------------------------------------------------------------
// Axioms

struct AxiomProfile {
  bool grounded = false;
  bool isotonic = false;
  bool enlarging = false;
  bool idempotent = false;
  bool sublinear = false;
  friend bool operator==(const AxiomProfile&, const AxiomProfile&) = default;
};

struct SymmetryProfile {
  bool pointwise_symmetric = false;
  bool r0 = false;
  bool exterior_separated = false;
  friend bool operator==(const SymmetryProfile&, const SymmetryProfile&) = default;
};

inline bool is_grounded(const Space& s) { return s.table()[0].empty(); }

/// Single-element-drop test: cl(A − {x}) ⊆ cl(A) for all A and x ∈ A.
/// Equivalent to the all-pairs definition because ⊆ on subsets is generated
/// by single-element steps.
inline bool is_isotonic(const Space& s) {
  const auto t = s.table();
  for (std::size_t m = 1; m < t.size(); ++m) {
    const SubsetMask a(static_cast<SubsetMask::bits_type>(m));
    bool ok = true;
    for_each_element(a, [&](std::size_t x) { ok = ok && t[a.without(x).index()].subset_of(t[m]); });
    if (!ok) return false;
  }
  return true;
}

/// cl(A) ⊆ cl(B) for every A ⊆ B, checked pair by pair.
inline bool is_isotonic_pairwise(const Space& s) {
  const auto t = s.table();
  for (std::size_t m = 0; m < t.size(); ++m) {
    const SubsetMask b(static_cast<SubsetMask::bits_type>(m));
    bool ok = true;
    for_each_submask(b, [&](SubsetMask a) { ok = ok && t[a.index()].subset_of(t[m]); });
    if (!ok) return false;
  }
  return true;
}

inline bool is_enlarging(const Space& s) {
  const auto t = s.table();
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (!SubsetMask(static_cast<SubsetMask::bits_type>(m)).subset_of(t[m])) return false;
  }
  return true;
}

inline bool is_idempotent(const Space& s) {
  const auto t = s.table();
  for (auto c : t) {
    if (t[c.index()] != c) return false;
  }
  return true;
}

inline bool is_sublinear(const Space& s) {
  const auto t = s.table();
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a; b < t.size(); ++b) {
      if (!t[a | b].subset_of(t[a] | t[b])) return false;
    }
  }
  return true;
}

inline AxiomProfile axiom_profile(const Space& s) {
  return AxiomProfile{is_grounded(s), is_isotonic(s), is_enlarging(s), is_idempotent(s), is_sublinear(s)};
}

// ---------------------------------------------------------------------------
// Symmetry and separation axioms

inline bool is_pointwise_symmetric(const Space& s) {
  const auto t = s.table();
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (t[SubsetMask::singleton(y).index()].contains(x) && !t[SubsetMask::singleton(x).index()].contains(y)) {
        return false;
      }
    }
  }
  return true;
}

/// For each point y, the set of points lying in every neighborhood of y
/// (the whole carrier when y has no neighborhood at all).
inline std::vector<SubsetMask> neighborhood_cores(const Space& s) {
  const auto t = s.table();
  const auto full = s.full();
  std::vector<SubsetMask> core(s.size(), full);
  for (std::size_t m = 0; m < t.size(); ++m) {
    const SubsetMask nbhd(static_cast<SubsetMask::bits_type>(m));
    const SubsetMask interior = full - t[(full - nbhd).index()];
    for_each_element(interior, [&](std::size_t y) { core[y] = core[y] & nbhd; });
  }
  return core;
}

/// If x is in every neighborhood of y then y is in every neighborhood of x.
/// Points without neighborhoods satisfy the hypothesis vacuously.
inline bool is_r0(const Space& s) {
  const auto core = neighborhood_cores(s);
  const std::size_t n = s.size();
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      if (core[y].contains(x) && !core[x].contains(y)) return false;
    }
  }
  return true;
}

/// Every x ∈ ext(A) is closure-separated from A, for every A.
inline bool has_exterior_separation(const Space& s) {
  const auto t = s.table();
  const auto full = s.full();
  for (std::size_t m = 0; m < t.size(); ++m) {
    const SubsetMask a(static_cast<SubsetMask::bits_type>(m));
    bool ok = true;
    // x ∉ cl(A) already gives {x} ∩ cl(A) = ∅; only cl({x}) ∩ A remains.
    for_each_element(full - t[m], [&](std::size_t x) { ok = ok && t[SubsetMask::singleton(x).index()].disjoint(a); });
    if (!ok) return false;
  }
  return true;
}

inline SymmetryProfile symmetry_profile(const Space& s) {
  return SymmetryProfile{is_pointwise_symmetric(s), is_r0(s), has_exterior_separation(s)};
}

}  // namespace closure

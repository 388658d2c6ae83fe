#pragma once

// Named predicates that claims are written in, one registry per kind of
// instance. Every predicate is evaluated by its definition through core,
// separation or maps; results are cached per instance.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "closure/core.hpp"
#include "closure/maps.hpp"
#include "closure/separation.hpp"

namespace closure {

enum class SpacePredicate : int {
  grounded,
  isotonic,
  isotonic_pairwise,
  enlarging,
  idempotent,
  sublinear,
  pointwise_symmetric,
  r0,
  exterior_separated,
  separation_symmetric,
  separation_exterior_form,
  closure_formula,
  roundtrip,
  grounded_crit,
  enlarging_crit,
  sublinear_crit,
  idempotent_sufficient,
  count_
};

inline constexpr std::array<std::string_view, static_cast<std::size_t>(SpacePredicate::count_)> kSpacePredicateNames = {
    "grounded",
    "isotonic",
    "isotonic_pairwise",
    "enlarging",
    "idempotent",
    "sublinear",
    "pointwise_symmetric",
    "r0",
    "exterior_separated",
    "separation_symmetric",
    "separation_exterior_form",
    "closure_formula",
    "roundtrip",
    "grounded_crit",
    "enlarging_crit",
    "sublinear_crit",
    "idempotent_sufficient",
};

inline int resolve_space_predicate(std::string_view name) {
  for (std::size_t i = 0; i < kSpacePredicateNames.size(); ++i) {
    if (kSpacePredicateNames[i] == name) return static_cast<int>(i);
  }
  return -1;
}

/// Lazily evaluated predicates of one space.
class SpaceFacts {
 public:
  explicit SpaceFacts(const Space& s) : space_(s) {}

  bool operator()(int id) { return get(static_cast<SpacePredicate>(id)); }

  bool get(SpacePredicate p) {
    auto& slot = cache_[static_cast<std::size_t>(p)];
    if (slot < 0) slot = compute(p) ? 1 : 0;
    return slot == 1;
  }

  const Space& space() const { return space_; }

  const SeparationRelation& relation() {
    if (!relation_) relation_ = separated_pairs(space_);
    return *relation_;
  }

 private:
  const RelationCriteria& criteria() {
    if (!criteria_) criteria_ = relation_axiom_criteria(relation());
    return *criteria_;
  }

  bool compute(SpacePredicate p) {
    switch (p) {
      case SpacePredicate::grounded: return is_grounded(space_);
      case SpacePredicate::isotonic: return is_isotonic(space_);
      case SpacePredicate::isotonic_pairwise: return is_isotonic_pairwise(space_);
      case SpacePredicate::enlarging: return is_enlarging(space_);
      case SpacePredicate::idempotent: return is_idempotent(space_);
      case SpacePredicate::sublinear: return is_sublinear(space_);
      case SpacePredicate::pointwise_symmetric: return is_pointwise_symmetric(space_);
      case SpacePredicate::r0: return is_r0(space_);
      case SpacePredicate::exterior_separated: return has_exterior_separation(space_);
      case SpacePredicate::separation_symmetric: return separation_symmetric();
      case SpacePredicate::separation_exterior_form: return separation_exterior_form();
      case SpacePredicate::closure_formula: return closure_formula(relation()) == space_;
      case SpacePredicate::roundtrip: return roundtrip_ok(space_);
      case SpacePredicate::grounded_crit: return criteria().grounded;
      case SpacePredicate::enlarging_crit: return criteria().enlarging;
      case SpacePredicate::sublinear_crit: return criteria().sublinear;
      case SpacePredicate::idempotent_sufficient: return criteria().idempotent_sufficient;
      case SpacePredicate::count_: break;
    }
    return false;
  }

  bool separation_symmetric() const {
    const auto count = space_.ground().subset_count();
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
        const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
        if (space_.are_separated(ma, mb) != space_.are_separated(mb, ma)) return false;
      }
    }
    return true;
  }

  /// A, B separated ⇔ A ⊆ ext(B) and B ⊆ ext(A).
  bool separation_exterior_form() const {
    const auto count = space_.ground().subset_count();
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
        const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
        const bool via_exterior = ma.subset_of(space_.exterior(mb)) && mb.subset_of(space_.exterior(ma));
        if (space_.are_separated(ma, mb) != via_exterior) return false;
      }
    }
    return true;
  }

  const Space& space_;
  std::array<std::int8_t, static_cast<std::size_t>(SpacePredicate::count_)> cache_ = [] {
    std::array<std::int8_t, static_cast<std::size_t>(SpacePredicate::count_)> a{};
    a.fill(-1);
    return a;
  }();
  std::optional<SeparationRelation> relation_;
  std::optional<RelationCriteria> criteria_;
};

// ---------------------------------------------------------------------------
// Maps: own predicates, plus "X.<space predicate>" for the domain and
// "Y.<space predicate>" for the codomain.

enum class MapPredicate : int { closure_preserving, continuous, nonseparating, preimage_separating, count_ };

inline constexpr std::array<std::string_view, 4> kMapPredicateNames = {"closure_preserving", "continuous",
                                                                       "nonseparating", "preimage_separating"};

inline constexpr int kDomainOffset = 100;
inline constexpr int kCodomainOffset = 200;

inline int resolve_map_predicate(std::string_view name) {
  for (std::size_t i = 0; i < kMapPredicateNames.size(); ++i) {
    if (kMapPredicateNames[i] == name) return static_cast<int>(i);
  }
  if (name.size() > 2 && name[1] == '.' && (name[0] == 'X' || name[0] == 'Y')) {
    const int inner = resolve_space_predicate(name.substr(2));
    if (inner < 0) return -1;
    return inner + (name[0] == 'X' ? kDomainOffset : kCodomainOffset);
  }
  return -1;
}

class MapFacts {
 public:
  explicit MapFacts(const SpaceMap& f) : map_(f), domain_(f.domain()), codomain_(f.codomain()) {}

  bool operator()(int id) {
    if (id >= kCodomainOffset) return codomain_(id - kCodomainOffset);
    if (id >= kDomainOffset) return domain_(id - kDomainOffset);
    auto& slot = cache_[static_cast<std::size_t>(id)];
    if (slot < 0) slot = compute(static_cast<MapPredicate>(id)) ? 1 : 0;
    return slot == 1;
  }

 private:
  bool compute(MapPredicate p) const {
    switch (p) {
      case MapPredicate::closure_preserving: return is_closure_preserving(map_);
      case MapPredicate::continuous: return is_continuous(map_);
      case MapPredicate::nonseparating: return is_nonseparating(map_);
      case MapPredicate::preimage_separating: return is_preimage_separating(map_);
      case MapPredicate::count_: break;
    }
    return false;
  }

  const SpaceMap& map_;
  SpaceFacts domain_;
  SpaceFacts codomain_;
  std::array<std::int8_t, 4> cache_ = {-1, -1, -1, -1};
};

// ---------------------------------------------------------------------------
// Relations: the two reconstruction conditions and properties of the
// closure function the formula cl(A) = {x : {{x}, A} ∉ 𝒮} produces.

enum class RelationPredicate : int {
  condition1,
  condition2,
  derived_isotonic,
  derived_pointwise_symmetric,
  derived_separates_exactly,
  count_
};

inline constexpr std::array<std::string_view, 5> kRelationPredicateNames = {
    "condition1", "condition2", "derived_isotonic", "derived_pointwise_symmetric", "derived_separates_exactly"};

inline int resolve_relation_predicate(std::string_view name) {
  for (std::size_t i = 0; i < kRelationPredicateNames.size(); ++i) {
    if (kRelationPredicateNames[i] == name) return static_cast<int>(i);
  }
  return -1;
}

class RelationFacts {
 public:
  explicit RelationFacts(const SeparationRelation& rel) : rel_(rel) {}

  bool operator()(int id) {
    auto& slot = cache_[static_cast<std::size_t>(id)];
    if (slot < 0) slot = compute(static_cast<RelationPredicate>(id)) ? 1 : 0;
    return slot == 1;
  }

 private:
  const Space& derived() {
    if (!derived_) derived_ = closure_formula(rel_);
    return *derived_;
  }

  const ConditionReport& report() {
    if (!report_) report_ = check_relation_conditions(rel_);
    return *report_;
  }

  bool compute(RelationPredicate p) {
    switch (p) {
      case RelationPredicate::condition1: return report().condition1;
      case RelationPredicate::condition2: return report().condition2;
      case RelationPredicate::derived_isotonic: return is_isotonic(derived());
      case RelationPredicate::derived_pointwise_symmetric: return is_pointwise_symmetric(derived());
      case RelationPredicate::derived_separates_exactly: return separated_pairs(derived()) == rel_;
      case RelationPredicate::count_: break;
    }
    return false;
  }

  const SeparationRelation& rel_;
  std::optional<Space> derived_;
  std::optional<ConditionReport> report_;
  std::array<std::int8_t, 5> cache_ = {-1, -1, -1, -1, -1};
};

}  // namespace closure

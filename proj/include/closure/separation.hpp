#pragma once

// Separation relations: the collection of unordered pairs {A, B} of subsets
// that a closure function separates, the closure function recovered from
// such a relation, and relation-level forms of the closure axioms.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "closure/core.hpp"

namespace closure {

/// Unordered pair of subsets stored as (min, max).
struct SubsetPair {
  SubsetMask first;
  SubsetMask second;

  static SubsetPair canonical(SubsetMask a, SubsetMask b) { return b < a ? SubsetPair{b, a} : SubsetPair{a, b}; }

  std::uint32_t key() const { return (first.bits() << 16) | second.bits(); }

  friend bool operator==(const SubsetPair&, const SubsetPair&) = default;
  friend auto operator<=>(const SubsetPair&, const SubsetPair&) = default;
};

/// Symmetric set of unordered subset pairs over a ground set. Pairs {A, A}
/// are allowed.
class SeparationRelation {
 public:
  explicit SeparationRelation(GroundPtr ground) : ground_(std::move(ground)) {
    if (!ground_) throw Error(ErrorKind::InvalidGroundSet, "null ground set");
  }

  const GroundSet& ground() const { return *ground_; }
  const GroundPtr& ground_ptr() const { return ground_; }

  /// Returns false if the pair was already present.
  bool insert(SubsetMask a, SubsetMask b) {
    ground_->require_valid(a);
    ground_->require_valid(b);
    return keys_.insert(SubsetPair::canonical(a, b).key()).second;
  }

  bool erase(SubsetMask a, SubsetMask b) { return keys_.erase(SubsetPair::canonical(a, b).key()) > 0; }

  bool contains(SubsetMask a, SubsetMask b) const { return keys_.count(SubsetPair::canonical(a, b).key()) > 0; }

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  /// Canonical pairs sorted ascending by (min, max).
  std::vector<SubsetPair> pairs() const {
    std::vector<SubsetPair> out;
    out.reserve(keys_.size());
    for (auto key : keys_) out.push_back({SubsetMask(key >> 16), SubsetMask(key & 0xFFFFU)});
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const SeparationRelation& a, const SeparationRelation& b) {
    return (a.ground_ == b.ground_ || *a.ground_ == *b.ground_) && a.keys_ == b.keys_;
  }

 private:
  GroundPtr ground_;
  std::unordered_set<std::uint32_t> keys_;
};

inline SeparationRelation separated_pairs(const Space& space) {
  SeparationRelation rel(space.ground_ptr());
  const auto t = space.table();
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a; b < t.size(); ++b) {
      const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
      const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
      if (ma.disjoint(t[b]) && t[a].disjoint(mb)) rel.insert(ma, mb);
    }
  }
  return rel;
}

// ---------------------------------------------------------------------------
// Conditions under which a relation determines a closure function

/// A ⊆ B and {B, C} ∈ 𝒮 but {A, C} ∉ 𝒮.
struct DownwardWitness {
  SubsetMask a, b, c;
  friend bool operator==(const DownwardWitness&, const DownwardWitness&) = default;
};

/// Every {x} with x ∈ A is related to B and every {y} with y ∈ B is
/// related to A, yet {A, B} ∉ 𝒮.
struct PointwiseWitness {
  SubsetMask a, b;
  friend bool operator==(const PointwiseWitness&, const PointwiseWitness&) = default;
};

struct ConditionReport {
  bool condition1 = true;
  bool condition2 = true;
  std::optional<DownwardWitness> witness1;
  std::optional<PointwiseWitness> witness2;

  bool ok() const { return condition1 && condition2; }
};

inline bool violates_condition1(const SeparationRelation& rel, const DownwardWitness& w) {
  return w.a.subset_of(w.b) && rel.contains(w.b, w.c) && !rel.contains(w.a, w.c);
}

inline bool violates_condition2(const SeparationRelation& rel, const PointwiseWitness& w) {
  bool hypotheses = true;
  for_each_element(w.a, [&](std::size_t x) { hypotheses = hypotheses && rel.contains(SubsetMask::singleton(x), w.b); });
  for_each_element(w.b, [&](std::size_t y) { hypotheses = hypotheses && rel.contains(SubsetMask::singleton(y), w.a); });
  return hypotheses && !rel.contains(w.a, w.b);
}

/// Reports the first violation of each condition. Condition 1 walks the
/// pairs in canonical order, each coordinate in turn as B, and the subsets
/// of B ascending; condition 2 walks A ≤ B ascending.
inline ConditionReport check_relation_conditions(const SeparationRelation& rel) {
  ConditionReport report;
  for (const auto& pair : rel.pairs()) {
    for (auto [b, c] : {std::pair{pair.first, pair.second}, std::pair{pair.second, pair.first}}) {
      for_each_submask_ascending(b, [&](SubsetMask a) {
        if (rel.contains(a, c)) return true;
        report.condition1 = false;
        report.witness1 = DownwardWitness{a, b, c};
        return false;
      });
      if (!report.condition1) break;
    }
    if (!report.condition1) break;
  }

  const std::size_t count = rel.ground().subset_count();
  for (std::size_t a = 0; a < count && report.condition2; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      const PointwiseWitness candidate{SubsetMask(static_cast<SubsetMask::bits_type>(a)),
                                       SubsetMask(static_cast<SubsetMask::bits_type>(b))};
      if (violates_condition2(rel, candidate)) {
        report.condition2 = false;
        report.witness2 = candidate;
        break;
      }
    }
  }
  return report;
}

class ConditionsViolatedError : public Error {
 public:
  explicit ConditionsViolatedError(ConditionReport report)
      : Error(ErrorKind::ConditionsViolated, describe(report)), report_(std::move(report)) {}

  const ConditionReport& report() const { return report_; }

 private:
  static std::string describe(const ConditionReport& r) {
    std::string out;
    if (!r.condition1) out += "relation is not closed downward in each coordinate";
    if (!r.condition2) {
      if (!out.empty()) out += "; ";
      out += "relation misses a pair whose points are all separated";
    }
    return out;
  }

  ConditionReport report_;
};

/// cl(A) = { x : {{x}, A} ∉ 𝒮 }, with no precondition on the relation.
inline Space closure_formula(const SeparationRelation& rel) {
  const auto& ground = rel.ground();
  std::vector<SubsetMask> table(ground.subset_count());
  for (std::size_t m = 0; m < table.size(); ++m) {
    const SubsetMask a(static_cast<SubsetMask::bits_type>(m));
    SubsetMask cl;
    for (std::size_t x = 0; x < ground.size(); ++x) {
      if (!rel.contains(SubsetMask::singleton(x), a)) cl = cl.with(x);
    }
    table[m] = cl;
  }
  return Space(rel.ground_ptr(), std::move(table));
}

/// The unique pointwise-symmetric isotonic closure function separating
/// exactly the pairs of rel. Throws ConditionsViolatedError when rel fails
/// either condition.
inline Space closure_from_relation(const SeparationRelation& rel) {
  auto report = check_relation_conditions(rel);
  if (!report.ok()) throw ConditionsViolatedError(std::move(report));
  return closure_formula(rel);
}

// ---------------------------------------------------------------------------
// Closure axioms expressed through the relation

struct RelationCriteria {
  bool grounded = false;
  bool enlarging = false;
  bool sublinear = false;
  bool idempotent_sufficient = false;
  friend bool operator==(const RelationCriteria&, const RelationCriteria&) = default;
};

inline RelationCriteria relation_axiom_criteria(const SeparationRelation& rel) {
  const auto& ground = rel.ground();
  const std::size_t n = ground.size();
  const std::size_t count = ground.subset_count();
  RelationCriteria crit;

  crit.grounded = true;
  for (std::size_t x = 0; x < n; ++x) crit.grounded = crit.grounded && rel.contains(SubsetMask::singleton(x), {});

  const auto pairs = rel.pairs();
  crit.enlarging = std::all_of(pairs.begin(), pairs.end(), [](const SubsetPair& p) { return p.first.disjoint(p.second); });

  // {A, B}, {A, C} ∈ 𝒮 ⇒ {A, B ∪ C} ∈ 𝒮
  std::vector<std::vector<SubsetMask>> partners(count);
  for (const auto& p : pairs) {
    partners[p.first.index()].push_back(p.second);
    if (p.first != p.second) partners[p.second.index()].push_back(p.first);
  }
  crit.sublinear = true;
  for (std::size_t a = 0; a < count && crit.sublinear; ++a) {
    const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
    for (auto b : partners[a]) {
      for (auto c : partners[a]) {
        if (!rel.contains(ma, b | c)) {
          crit.sublinear = false;
          break;
        }
      }
      if (!crit.sublinear) break;
    }
  }

  // For all x, A, B: {{x}, B} ∉ 𝒮 and {{y}, A} ∉ 𝒮 for each y ∈ B
  // imply {{x}, A} ∉ 𝒮. With R(A) = {y : {{y}, A} ∉ 𝒮}: B ⊆ R(A) ⇒ R(B) ⊆ R(A).
  std::vector<SubsetMask> unseparated(count);
  for (std::size_t m = 0; m < count; ++m) {
    const SubsetMask a(static_cast<SubsetMask::bits_type>(m));
    for (std::size_t y = 0; y < n; ++y) {
      if (!rel.contains(SubsetMask::singleton(y), a)) unseparated[m] = unseparated[m].with(y);
    }
  }
  crit.idempotent_sufficient = true;
  for (std::size_t a = 0; a < count && crit.idempotent_sufficient; ++a) {
    for_each_submask(unseparated[a], [&](SubsetMask b) {
      if (!unseparated[b.index()].subset_of(unseparated[a])) crit.idempotent_sufficient = false;
    });
  }
  return crit;
}

/// True iff the space is recovered table-for-table from its own separated
/// pairs.
inline bool roundtrip_ok(const Space& space) {
  try {
    return closure_from_relation(separated_pairs(space)) == space;
  } catch (const ConditionsViolatedError&) {
    return false;
  }
}

}  // namespace closure

#pragma once

// Functions between closure spaces and the morphism predicates on them.
// Every predicate is evaluated from its definition over all subsets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "closure/core.hpp"

namespace closure {

/// Total function from domain.ground to codomain.ground; assignment[i] is
/// the codomain index of f(element i).
class SpaceMap {
 public:
  SpaceMap(Space domain, Space codomain, std::vector<std::size_t> assignment)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment)) {
    if (assignment_.size() != domain_.size()) {
      throw Error(ErrorKind::LengthMismatch, "assignment has " + std::to_string(assignment_.size()) +
                                                 " entries for a " + std::to_string(domain_.size()) + "-element domain");
    }
    for (auto target : assignment_) codomain_.require_element(target);
  }

  const Space& domain() const { return domain_; }
  const Space& codomain() const { return codomain_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }

  SubsetMask image(SubsetMask a) const {
    domain_.ground().require_valid(a);
    SubsetMask out;
    for_each_element(a, [&](std::size_t i) { out = out.with(assignment_[i]); });
    return out;
  }

  SubsetMask preimage(SubsetMask b) const {
    codomain_.ground().require_valid(b);
    SubsetMask out;
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
      if (b.contains(assignment_[i])) out = out.with(i);
    }
    return out;
  }

  /// f(A) for every A ⊆ X, indexed by A.
  std::vector<SubsetMask> image_table() const {
    std::vector<SubsetMask> out(domain_.ground().subset_count());
    for (std::size_t m = 1; m < out.size(); ++m) {
      const auto low = static_cast<std::size_t>(std::countr_zero(m));
      out[m] = out[m & (m - 1)].with(assignment_[low]);
    }
    return out;
  }

  /// f⁻¹(B) for every B ⊆ Y, indexed by B.
  std::vector<SubsetMask> preimage_table() const {
    const std::size_t ny = codomain_.size();
    std::vector<SubsetMask> fibers(ny);
    for (std::size_t i = 0; i < assignment_.size(); ++i) fibers[assignment_[i]] = fibers[assignment_[i]].with(i);
    std::vector<SubsetMask> out(codomain_.ground().subset_count());
    for (std::size_t m = 1; m < out.size(); ++m) {
      const auto low = static_cast<std::size_t>(std::countr_zero(m));
      out[m] = out[m & (m - 1)] | fibers[low];
    }
    return out;
  }

  friend bool operator==(const SpaceMap&, const SpaceMap&) = default;

 private:
  Space domain_;
  Space codomain_;
  std::vector<std::size_t> assignment_;
};

struct MapProfile {
  bool closure_preserving = false;
  bool continuous = false;
  bool nonseparating = false;
  bool preimage_separating = false;
  friend bool operator==(const MapProfile&, const MapProfile&) = default;
};

namespace detail {
inline bool separated_in(std::span<const SubsetMask> t, SubsetMask a, SubsetMask b) {
  return a.disjoint(t[b.index()]) && t[a.index()].disjoint(b);
}
}  // namespace detail

/// f(cl_X(A)) ⊆ cl_Y(f(A)) for every A ⊆ X.
inline bool is_closure_preserving(const SpaceMap& f) {
  const auto img = f.image_table();
  const auto tx = f.domain().table();
  const auto ty = f.codomain().table();
  for (std::size_t a = 0; a < img.size(); ++a) {
    if (!img[tx[a].index()].subset_of(ty[img[a].index()])) return false;
  }
  return true;
}

/// cl_X(f⁻¹(B)) ⊆ f⁻¹(cl_Y(B)) for every B ⊆ Y.
inline bool is_continuous(const SpaceMap& f) {
  const auto pre = f.preimage_table();
  const auto tx = f.domain().table();
  const auto ty = f.codomain().table();
  for (std::size_t b = 0; b < pre.size(); ++b) {
    if (!tx[pre[b].index()].subset_of(pre[ty[b].index()])) return false;
  }
  return true;
}

/// A, B are cl_X-separated whenever f(A), f(B) are cl_Y-separated.
inline bool is_nonseparating(const SpaceMap& f) {
  const auto img = f.image_table();
  const auto tx = f.domain().table();
  const auto ty = f.codomain().table();
  for (std::size_t a = 0; a < img.size(); ++a) {
    const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
    for (std::size_t b = a; b < img.size(); ++b) {
      const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
      if (detail::separated_in(ty, img[a], img[b]) && !detail::separated_in(tx, ma, mb)) return false;
    }
  }
  return true;
}

/// f⁻¹(C), f⁻¹(D) are cl_X-separated whenever C, D are cl_Y-separated.
inline bool is_preimage_separating(const SpaceMap& f) {
  const auto pre = f.preimage_table();
  const auto tx = f.domain().table();
  const auto ty = f.codomain().table();
  for (std::size_t c = 0; c < pre.size(); ++c) {
    const SubsetMask mc(static_cast<SubsetMask::bits_type>(c));
    for (std::size_t d = c; d < pre.size(); ++d) {
      const SubsetMask md(static_cast<SubsetMask::bits_type>(d));
      if (detail::separated_in(ty, mc, md) && !detail::separated_in(tx, pre[c], pre[d])) return false;
    }
  }
  return true;
}

inline MapProfile map_profile(const SpaceMap& f) {
  return MapProfile{is_closure_preserving(f), is_continuous(f), is_nonseparating(f), is_preimage_separating(f)};
}

}  // namespace closure

#pragma once

// Claim catalog, verifier and counterexample hunter.
//
// A claim is a list of clauses. Each clause reads "for every instance in the
// universe, hypothesis implies conclusion", where both sides are formulas over
// the named predicates of facts.hpp and the universe is a generator class (or
// a pair of them for maps). Positive claims are theorems and are verified by
// sweeping; negative claims are implications that do NOT hold in general, and
// the hunter looks for an instance refuting them.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "closure/enumerate.hpp"
#include "closure/facts.hpp"
#include "closure/formula.hpp"
#include "closure/io.hpp"

namespace closure {

enum class UniverseKind { spaces, maps, relations };

constexpr std::string_view to_string(UniverseKind kind) {
  switch (kind) {
    case UniverseKind::spaces: return "spaces";
    case UniverseKind::maps: return "maps";
    case UniverseKind::relations: return "relations";
  }
  return "?";
}

struct ClaimClause {
  std::string hypothesis;
  std::string conclusion;
  GeneratorClass domain_class = GeneratorClass::all;
  GeneratorClass codomain_class = GeneratorClass::all;
};

struct Claim {
  std::string id;
  std::string description;
  UniverseKind universe = UniverseKind::spaces;
  bool negative = false;
  std::vector<ClaimClause> clauses;
};

inline const std::vector<Claim>& claim_catalog() {
  using G = GeneratorClass;
  using U = UniverseKind;
  static const std::vector<Claim> catalog = {
      // Positive claims.
      {"axioms-equiv-check",
       "the single-step isotonicity test agrees with the all-pairs test, and closure-separation is symmetric and "
       "agrees with its exterior formulation",
       U::spaces,
       false,
       {{"true", "(isotonic <-> isotonic_pairwise) & separation_symmetric & separation_exterior_form", G::all}}},
      {"cor-r0",
       "exterior points closure-separated implies pointwise-symmetric and R0",
       U::spaces,
       false,
       {{"exterior_separated", "pointwise_symmetric & r0", G::all}}},
      {"thm-equiv-isotonic",
       "for isotonic closures, exterior separation, pointwise symmetry and R0 coincide",
       U::spaces,
       false,
       {{"isotonic", "(pointwise_symmetric <-> r0) & (r0 <-> exterior_separated)", G::isotonic}}},
      {"thm-clthm-formula",
       "with exterior points separated, cl(A) = {x : {{x}, A} not separated}",
       U::spaces,
       false,
       {{"exterior_separated", "closure_formula", G::exterior_separated}}},
      {"thm-reconstruct",
       "a relation meeting both conditions yields an isotonic pointwise-symmetric closure separating exactly it",
       U::relations,
       false,
       {{"condition1 & condition2",
         "derived_isotonic & derived_pointwise_symmetric & derived_separates_exactly"}}},
      {"thm-roundtrip",
       "an isotonic pointwise-symmetric closure is recovered from its separated pairs",
       U::spaces,
       false,
       {{"isotonic & pointwise_symmetric", "roundtrip", G::isotonic_pointwise_symmetric}}},
      {"thm-crit-grounded",
       "with exterior points separated: grounded iff every {{x}, {}} is separated",
       U::spaces,
       false,
       {{"exterior_separated", "grounded <-> grounded_crit", G::exterior_separated}}},
      {"thm-crit-enlarging",
       "with exterior points separated: enlarging iff every separated pair is disjoint",
       U::spaces,
       false,
       {{"exterior_separated", "enlarging <-> enlarging_crit", G::exterior_separated}}},
      {"thm-crit-sublinear",
       "with exterior points separated: sub-linear iff separation from B and C gives separation from B u C",
       U::spaces,
       false,
       {{"exterior_separated", "sublinear <-> sublinear_crit", G::exterior_separated}}},
      {"thm-idem-sufficient",
       "with exterior points separated, an enlarging closure meeting the relation criterion is idempotent",
       U::spaces,
       false,
       {{"exterior_separated & enlarging & idempotent_sufficient", "idempotent", G::exterior_separated}}},
      {"thm-idem-necessary",
       "with exterior points separated, an isotonic idempotent closure meets the relation criterion",
       U::spaces,
       false,
       {{"exterior_separated & isotonic & idempotent", "idempotent_sufficient", G::exterior_separated}}},
      {"thm-cp-cont",
       "closure-preserving into an isotonic codomain is continuous; continuous from an isotonic domain is "
       "closure-preserving",
       U::maps,
       false,
       {{"closure_preserving & Y.isotonic", "continuous", G::all, G::isotonic},
        {"continuous & X.isotonic", "closure_preserving", G::isotonic, G::all}}},
      {"thm-cp-implies-ns",
       "every closure-preserving map is nonseparating",
       U::maps,
       false,
       {{"closure_preserving", "nonseparating", G::all, G::all}}},
      {"cor-cont-implies-ns",
       "a continuous map from an isotonic domain is nonseparating",
       U::maps,
       false,
       {{"X.isotonic & continuous", "nonseparating", G::isotonic, G::all}}},
      {"thm-preimage",
       "nonseparating into an isotonic codomain gives separated preimages of separated sets; the converse holds "
       "from an isotonic domain",
       U::maps,
       false,
       {{"Y.isotonic & nonseparating", "preimage_separating", G::all, G::isotonic},
        {"X.isotonic & preimage_separating", "nonseparating", G::isotonic, G::all}}},
      {"thm-ns-iff-cp",
       "into a codomain with exterior points separated, nonseparating iff closure-preserving",
       U::maps,
       false,
       {{"Y.exterior_separated", "nonseparating <-> closure_preserving", G::all, G::exterior_separated}}},
      {"cor-ns-iff-cont",
       "between isotonic spaces with a pointwise-symmetric codomain, nonseparating iff continuous",
       U::maps,
       false,
       {{"X.isotonic & Y.isotonic & Y.pointwise_symmetric", "nonseparating <-> continuous", G::isotonic,
         G::isotonic_pointwise_symmetric}}},

      // Negative claims: converses that fail without extra axioms.
      {"neg-pws-not-extsep",
       "pointwise symmetry alone does not give exterior separation",
       U::spaces,
       true,
       {{"pointwise_symmetric", "exterior_separated", G::all}}},
      {"neg-r0-not-extsep",
       "R0 alone does not give exterior separation",
       U::spaces,
       true,
       {{"r0", "exterior_separated", G::all}}},
      {"neg-cont-not-cp",
       "continuity does not imply closure preservation",
       U::maps,
       true,
       {{"continuous", "closure_preserving", G::all, G::all}}},
      {"neg-cp-not-cont",
       "closure preservation does not imply continuity",
       U::maps,
       true,
       {{"closure_preserving", "continuous", G::all, G::all}}},
      {"neg-ns-not-cp",
       "a nonseparating map need not be closure-preserving",
       U::maps,
       true,
       {{"nonseparating", "closure_preserving", G::all, G::all}}},
      {"neg-ns-not-cont",
       "a nonseparating map need not be continuous",
       U::maps,
       true,
       {{"nonseparating", "continuous", G::all, G::all}}},
  };
  return catalog;
}

inline const Claim& find_claim(std::string_view id) {
  for (const auto& claim : claim_catalog()) {
    if (claim.id == id) return claim;
  }
  throw Error(ErrorKind::UnknownClaim, "no claim with id '" + std::string(id) + "'");
}

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;
inline constexpr std::size_t kMaxStoredViolations = 16;

struct SweepOptions {
  std::size_t n = 2;
  std::uint64_t budget = kDefaultBudget;  // (instance, subset pair) evaluations
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct Violation {
  std::size_t clause = 0;
  std::uint64_t index = 0;  // position in the clause's universe stream
  std::string witness;      // JSON document of the offending instance
};

struct VerificationReport {
  std::string claim_id;
  std::uint64_t instances_checked = 0;
  std::uint64_t hypothesis_held = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // the first kMaxStoredViolations, by (clause, index)
  std::chrono::nanoseconds elapsed{0};
  bool exhaustive = true;

  /// Counts add, violations concatenate, exhaustive is AND-ed.
  void merge(VerificationReport other) {
    instances_checked += other.instances_checked;
    hypothesis_held += other.hypothesis_held;
    violation_count += other.violation_count;
    exhaustive = exhaustive && other.exhaustive;
    elapsed = std::max(elapsed, other.elapsed);
    for (auto& v : other.violations) violations.push_back(std::move(v));
    std::sort(violations.begin(), violations.end(),
              [](const Violation& a, const Violation& b) { return std::tie(a.clause, a.index) < std::tie(b.clause, b.index); });
    if (violations.size() > kMaxStoredViolations) violations.resize(kMaxStoredViolations);
  }

  std::string summary() const {
    std::ostringstream out;
    out << "checked=" << instances_checked << " violations=" << violation_count
        << " exhaustive=" << (exhaustive ? "true" : "false");
    return out.str();
  }
};

namespace detail {

struct CompiledClause {
  Formula hypothesis;
  Formula conclusion;
  GeneratorClass domain_class;
  GeneratorClass codomain_class;
};

inline std::vector<CompiledClause> compile(const Claim& claim) {
  std::function<int(std::string_view)> resolve;
  switch (claim.universe) {
    case UniverseKind::spaces: resolve = resolve_space_predicate; break;
    case UniverseKind::maps: resolve = resolve_map_predicate; break;
    case UniverseKind::relations: resolve = resolve_relation_predicate; break;
  }
  std::vector<CompiledClause> out;
  for (const auto& c : claim.clauses) {
    out.push_back({Formula::parse(c.hypothesis, resolve), Formula::parse(c.conclusion, resolve), c.domain_class,
                   c.codomain_class});
  }
  return out;
}

/// 0 if the instance is out of scope, 1 if the hypothesis held and the
/// conclusion followed, 2 on a violation.
template <typename Facts>
int judge(const CompiledClause& clause, Facts& facts) {
  if (!clause.hypothesis.evaluate(facts)) return 0;
  return clause.conclusion.evaluate(facts) ? 1 : 2;
}

inline std::uint64_t pair_cost(std::size_t n) { return std::uint64_t{1} << (2 * n); }

/// How a clause's universe is swept at a given carrier size.
struct Plan {
  bool exhaustive = true;
  std::uint64_t instances = 0;
  std::uint64_t domain_count = 0;    // maps: spaces in the domain class
  std::uint64_t codomain_count = 0;  // maps: spaces in the codomain class
  std::uint64_t maps_per_pair = 0;
};

inline Plan plan_clause(UniverseKind kind, const CompiledClause& clause, std::size_t n, std::uint64_t budget) {
  const std::uint64_t cost = pair_cost(n);
  const std::uint64_t affordable = std::max<std::uint64_t>(1, budget / cost);
  Plan plan;
  switch (kind) {
    case UniverseKind::spaces: {
      if (auto size = class_size(n, clause.domain_class, affordable)) {
        plan.instances = *size;
      } else {
        plan.exhaustive = false;
        plan.instances = affordable;
      }
      break;
    }
    case UniverseKind::relations: {
      const std::uint64_t pairs = canonical_pairs(n).size();
      if (pairs < 63 && (std::uint64_t{1} << pairs) <= affordable) {
        plan.instances = std::uint64_t{1} << pairs;
      } else {
        plan.exhaustive = false;
        plan.instances = affordable;
      }
      break;
    }
    case UniverseKind::maps: {
      plan.maps_per_pair = map_count(n, n);
      auto xs = class_size(n, clause.domain_class, affordable);
      auto ys = xs ? class_size(n, clause.codomain_class, affordable / std::max<std::uint64_t>(1, *xs)) : std::nullopt;
      if (xs && ys && saturating_mul(saturating_mul(*xs, *ys), plan.maps_per_pair) <= affordable) {
        plan.domain_count = *xs;
        plan.codomain_count = *ys;
        plan.instances = *xs * *ys * plan.maps_per_pair;
      } else {
        plan.exhaustive = false;
        plan.instances = affordable;
      }
      break;
    }
  }
  return plan;
}

inline std::vector<std::size_t> random_assignment(std::size_t nx, std::size_t ny, std::uint64_t seed,
                                                  std::uint64_t index) {
  auto rng = stream_rng(seed, index);
  std::vector<std::size_t> out(nx);
  for (auto& target : out) target = static_cast<std::size_t>(below(rng, ny));
  return out;
}

/// Sweeps the instances i of one clause with i % workers == worker.
class ClauseSweep {
 public:
  ClauseSweep(UniverseKind kind, const CompiledClause& clause, const Plan& plan, const SweepOptions& opts,
              std::size_t clause_index)
      : kind_(kind), clause_(clause), plan_(plan), opts_(opts), clause_index_(clause_index) {}

  VerificationReport run(unsigned worker, unsigned workers) const {
    VerificationReport report;
    report.exhaustive = plan_.exhaustive;
    auto record = [&](int verdict, std::uint64_t index, auto&& witness) {
      ++report.instances_checked;
      if (verdict >= 1) ++report.hypothesis_held;
      if (verdict == 2) {
        ++report.violation_count;
        if (report.violations.size() < kMaxStoredViolations) {
          report.violations.push_back({clause_index_, index, witness()});
        }
      }
    };
    const std::size_t n = opts_.n;
    switch (kind_) {
      case UniverseKind::spaces: {
        auto visit = [&](const Space& s, std::uint64_t i) {
          SpaceFacts facts(s);
          record(judge(clause_, facts), i, [&] { return io::serialize_space(s); });
        };
        if (plan_.exhaustive) {
          SpaceEnumerator stream(n, clause_.domain_class, kUnbounded);
          for (std::uint64_t i = 0; stream.next(); ++i) {
            if (i % workers == worker) visit(stream.current(), i);
          }
        } else {
          SpaceSampler sampler(n, clause_.domain_class, opts_.seed);
          for (std::uint64_t i = worker; i < plan_.instances; i += workers) visit(sampler(i), i);
        }
        break;
      }
      case UniverseKind::relations: {
        auto visit = [&](const SeparationRelation& rel, std::uint64_t i) {
          RelationFacts facts(rel);
          record(judge(clause_, facts), i, [&] { return io::serialize_relation(rel); });
        };
        if (plan_.exhaustive) {
          const auto ground = std::make_shared<const GroundSet>(GroundSet::letters(n));
          const auto pairs = canonical_pairs(n);
          for (std::uint64_t k = worker; k < plan_.instances; k += workers) visit(relation_at(ground, pairs, k), k);
        } else {
          RelationSampler sampler(n, opts_.seed);
          for (std::uint64_t i = worker; i < plan_.instances; i += workers) visit(sampler(i), i);
        }
        break;
      }
      case UniverseKind::maps: {
        auto visit = [&](const SpaceMap& f, std::uint64_t i) {
          MapFacts facts(f);
          record(judge(clause_, facts), i, [&] { return io::serialize_map(f); });
        };
        if (plan_.exhaustive) {
          const auto ys = enumerate_spaces(n, clause_.codomain_class, kUnbounded);
          SpaceEnumerator xs(n, clause_.domain_class, kUnbounded);
          for (std::uint64_t ix = 0; xs.next(); ++ix) {
            if (ix % workers != worker) continue;
            for (std::uint64_t iy = 0; iy < ys.size(); ++iy) {
              for (std::uint64_t k = 0; k < plan_.maps_per_pair; ++k) {
                visit(SpaceMap(xs.current(), ys[iy], assignment_at(n, n, k)),
                      (ix * ys.size() + iy) * plan_.maps_per_pair + k);
              }
            }
          }
        } else {
          SpaceSampler domain(n, clause_.domain_class, splitmix64(opts_.seed + 1));
          SpaceSampler codomain(n, clause_.codomain_class, splitmix64(opts_.seed + 2));
          const auto map_seed = splitmix64(opts_.seed + 3);
          for (std::uint64_t i = worker; i < plan_.instances; i += workers) {
            visit(SpaceMap(domain(i), codomain(i), random_assignment(n, n, map_seed, i)), i);
          }
        }
        break;
      }
    }
    return report;
  }

 private:
  UniverseKind kind_;
  const CompiledClause& clause_;
  Plan plan_;
  const SweepOptions& opts_;
  std::size_t clause_index_;
};

}  // namespace detail

/// Sweeps every clause of a claim over carrier size opts.n: exhaustively
/// when the universe fits the budget, otherwise over budget / 4^n seeded
/// samples. Work is split across opts.threads workers by instance index;
/// the merged report does not depend on the thread count.
inline VerificationReport verify_claim(std::string_view id, const SweepOptions& opts = {}) {
  const Claim& claim = find_claim(id);
  if (opts.n == 0 || opts.n > 4) throw Error(ErrorKind::InvalidArgument, "verify needs 1 <= n <= 4");
  const auto start = std::chrono::steady_clock::now();
  const auto clauses = detail::compile(claim);
  const unsigned workers = std::max(1U, opts.threads);

  VerificationReport total;
  total.claim_id = claim.id;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto plan = detail::plan_clause(claim.universe, clauses[c], opts.n, opts.budget);
    const detail::ClauseSweep sweep(claim.universe, clauses[c], plan, opts, c);
    std::vector<VerificationReport> parts(workers);
    if (workers == 1) {
      parts[0] = sweep.run(0, 1);
    } else {
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            parts[w] = sweep.run(w, workers);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (auto& part : parts) total.merge(std::move(part));
  }
  total.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return total;
}

// ---------------------------------------------------------------------------
// Counterexample hunting

struct HuntOptions {
  std::size_t n_max = 2;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
};

struct Witness {
  std::string claim_id;
  UniverseKind kind = UniverseKind::spaces;
  std::size_t domain_size = 0;
  std::size_t codomain_size = 0;  // maps only
  /// True when every smaller carrier and every earlier instance at this
  /// carrier was searched exhaustively.
  bool minimal = true;
  std::string document;
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> carrier_order(UniverseKind kind, std::size_t n_max) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t m = 1; m <= n_max; ++m) {
    if (kind != UniverseKind::maps) {
      out.emplace_back(m, 0);
      continue;
    }
    for (std::size_t nx = 1; nx <= m; ++nx) {
      for (std::size_t ny = 1; ny <= m; ++ny) {
        if (std::max(nx, ny) == m) out.emplace_back(nx, ny);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Searches carriers in increasing size (for maps: by the larger carrier,
/// then domain size, then codomain size), each exhaustively in stream order
/// while the budget allows, and returns the first instance satisfying the
/// hypothesis but not the conclusion. Once a carrier is too large to search
/// exhaustively, the remaining budget is spent on seeded samples there.
inline std::optional<Witness> hunt_counterexample(std::string_view id, const HuntOptions& opts = {}) {
  const Claim& claim = find_claim(id);
  if (!claim.negative) throw Error(ErrorKind::UnknownClaim, "'" + claim.id + "' is not a negative claim");
  if (opts.n_max == 0 || opts.n_max > 4) throw Error(ErrorKind::InvalidArgument, "hunt needs 1 <= n <= 4");
  const auto clauses = detail::compile(claim);
  const auto& clause = clauses.front();
  std::uint64_t remaining = opts.budget;

  for (auto [nx, ny] : detail::carrier_order(claim.universe, opts.n_max)) {
    const std::uint64_t cost = detail::pair_cost(std::max(nx, ny));
    const std::uint64_t affordable = remaining / cost;
    if (affordable == 0) return std::nullopt;
    Witness w{claim.id, claim.universe, nx, ny, true, {}};

    if (claim.universe == UniverseKind::spaces) {
      if (auto size = class_size(nx, clause.domain_class, affordable)) {
        SpaceEnumerator stream(nx, clause.domain_class, kUnbounded);
        while (stream.next()) {
          SpaceFacts facts(stream.current());
          if (detail::judge(clause, facts) == 2) {
            w.document = io::serialize_space(stream.current());
            return w;
          }
        }
        remaining -= *size * cost;
        continue;
      }
      SpaceSampler sampler(nx, clause.domain_class, opts.seed);
      for (std::uint64_t i = 0; i < affordable; ++i) {
        const Space s = sampler(i);
        SpaceFacts facts(s);
        if (detail::judge(clause, facts) == 2) {
          w.minimal = false;
          w.document = io::serialize_space(s);
          return w;
        }
      }
      return std::nullopt;
    }

    // Maps. Relation claims are never negative.
    const std::uint64_t maps_per_pair = map_count(nx, ny);
    auto xs = class_size(nx, clause.domain_class, affordable);
    auto ys = class_size(ny, clause.codomain_class, affordable);
    if (xs && ys && detail::saturating_mul(detail::saturating_mul(*xs, *ys), maps_per_pair) <= affordable) {
      const auto y_spaces = enumerate_spaces(ny, clause.codomain_class, kUnbounded);
      SpaceEnumerator x_stream(nx, clause.domain_class, kUnbounded);
      while (x_stream.next()) {
        for (const auto& y : y_spaces) {
          for (std::uint64_t k = 0; k < maps_per_pair; ++k) {
            const SpaceMap f(x_stream.current(), y, assignment_at(nx, ny, k));
            MapFacts facts(f);
            if (detail::judge(clause, facts) == 2) {
              w.document = io::serialize_map(f);
              return w;
            }
          }
        }
      }
      remaining -= *xs * *ys * maps_per_pair * cost;
      continue;
    }
    SpaceSampler domain(nx, clause.domain_class, detail::splitmix64(opts.seed + 1));
    SpaceSampler codomain(ny, clause.codomain_class, detail::splitmix64(opts.seed + 2));
    const auto map_seed = detail::splitmix64(opts.seed + 3);
    for (std::uint64_t i = 0; i < affordable; ++i) {
      const SpaceMap f(domain(i), codomain(i), detail::random_assignment(nx, ny, map_seed, i));
      MapFacts facts(f);
      if (detail::judge(clause, facts) == 2) {
        w.minimal = false;
        w.document = io::serialize_map(f);
        return w;
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

/// Parses a witness document of the claim's universe and reports whether it
/// violates some clause of the claim, re-evaluating every predicate.
inline bool replays_as_violation(const Claim& claim, std::string_view document) {
  const auto clauses = detail::compile(claim);
  bool violated = false;
  switch (claim.universe) {
    case UniverseKind::spaces: {
      const Space s = io::parse_space(document);
      for (const auto& c : clauses) {
        SpaceFacts facts(s);
        violated = violated || detail::judge(c, facts) == 2;
      }
      break;
    }
    case UniverseKind::maps: {
      const SpaceMap f = io::parse_map(document);
      for (const auto& c : clauses) {
        MapFacts facts(f);
        violated = violated || detail::judge(c, facts) == 2;
      }
      break;
    }
    case UniverseKind::relations: {
      const SeparationRelation rel = io::parse_relation(document);
      for (const auto& c : clauses) {
        RelationFacts facts(rel);
        violated = violated || detail::judge(c, facts) == 2;
      }
      break;
    }
  }
  return violated;
}

}  // namespace closure

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "closure/claims.hpp"
#include "closure/enumerate.hpp"
#include "closure/io.hpp"

using namespace closure;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << s << " s";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cli_exit_code(const std::string& args) {
  const std::string command = std::string(CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

SweepOptions single(std::size_t n) {
  SweepOptions o;
  o.n = n;
  o.threads = 1;
  return o;
}

bool clean(const VerificationReport& r) { return r.violation_count == 0 && r.exhaustive; }

// Bit-level tests shared by the filter cross-checks of criteria 3 and 9.
template <std::size_t K>
bool table_isotonic(const std::array<unsigned, K>& t) {
  for (unsigned a = 0; a < K; ++a) {
    for (unsigned b = 0; b < K; ++b) {
      if ((a & b) == a && (t[a] & ~t[b]) != 0) return false;
    }
  }
  return true;
}

template <std::size_t K>
bool table_exterior_separated(const std::array<unsigned, K>& t, unsigned n) {
  for (unsigned a = 0; a < K; ++a) {
    for (unsigned x = 0; x < n; ++x) {
      if (!((t[a] >> x) & 1U) && (t[1U << x] & a) != 0) return false;
    }
  }
  return true;
}

struct FilterCounts {
  std::uint64_t all = 0;
  std::uint64_t isotonic = 0;
  std::uint64_t exterior_separated = 0;
};

template <std::size_t K>
FilterCounts filter_tables(unsigned n) {
  FilterCounts out;
  std::array<unsigned, K> t{};
  const std::uint64_t total = std::uint64_t{1} << (n * K);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (unsigned i = 0; i < K; ++i) t[i] = static_cast<unsigned>((code >> (n * i)) & (K - 1));
    ++out.all;
    out.isotonic += table_isotonic(t);
    out.exterior_separated += table_exterior_separated(t, n);
  }
  return out;
}

// Reconstruction conditions evaluated straight from their statements.
bool conditions_hold(const SeparationRelation& rel) {
  const std::size_t count = rel.ground().subset_count();
  for (std::size_t b = 0; b < count; ++b) {
    for (std::size_t c = 0; c < count; ++c) {
      const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
      const SubsetMask mc(static_cast<SubsetMask::bits_type>(c));
      if (!rel.contains(mb, mc)) continue;
      for (std::size_t a = 0; a < count; ++a) {
        const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
        if (ma.subset_of(mb) && !rel.contains(ma, mc)) return false;
      }
    }
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      const SubsetMask ma(static_cast<SubsetMask::bits_type>(a));
      const SubsetMask mb(static_cast<SubsetMask::bits_type>(b));
      bool hyp = true;
      for (std::size_t x = 0; x < rel.ground().size(); ++x) {
        if (ma.contains(x)) hyp = hyp && rel.contains(SubsetMask::singleton(x), mb);
        if (mb.contains(x)) hyp = hyp && rel.contains(SubsetMask::singleton(x), ma);
      }
      if (hyp && !rel.contains(ma, mb)) return false;
    }
  }
  return true;
}

Outcome criterion1() {
  const auto r = verify_claim("cor-r0", single(2));
  const double s = std::chrono::duration<double>(r.elapsed).count();
  return {clean(r) && r.instances_checked == 256 && s < 1.0, r.summary() + " in " + fmt_seconds(s) + " (limit 1 s)"};
}

Outcome criterion2() {
  const auto r2 = verify_claim("thm-equiv-isotonic", single(2));
  const auto r3 = verify_claim("thm-equiv-isotonic", single(3));
  const double s = std::chrono::duration<double>(r3.elapsed).count();
  return {clean(r2) && clean(r3) && r2.instances_checked == 36 && r3.instances_checked == 8000 && s < 30.0,
          "n=2 " + r2.summary() + "; n=3 " + r3.summary() + " in " + fmt_seconds(s) + " (limit 30 s)"};
}

Outcome criterion3() {
  bool pass = true;
  std::string detail;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = verify_claim("thm-clthm-formula", single(n));
    pass = pass && clean(r);
    detail += "n=" + std::to_string(n) + " " + r.summary() + "; ";
  }
  // The exterior-separated stream must be exactly the filter of the full universe.
  const auto f2 = filter_tables<4>(2);
  const auto f3 = filter_tables<8>(3);
  const auto s2 = class_size(2, GeneratorClass::exterior_separated, kUnbounded);
  const auto s3 = class_size(3, GeneratorClass::exterior_separated, kUnbounded);
  pass = pass && s2 == f2.exterior_separated && s3 == f3.exterior_separated;
  detail += "filter of all tables: " + std::to_string(f2.exterior_separated) + " (n=2), " +
            std::to_string(f3.exterior_separated) + " (n=3)";
  return {pass, detail};
}

Outcome criterion4() {
  bool pass = true;
  std::string detail;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = verify_claim("thm-roundtrip", single(n));
    std::set<std::vector<SubsetPair>> images;
    std::uint64_t count = 0;
    for_each_space(n, GeneratorClass::isotonic_pointwise_symmetric, [&](const Space& s) {
      images.insert(separated_pairs(s).pairs());
      ++count;
    });
    pass = pass && clean(r) && images.size() == count && count == r.instances_checked;
    detail += "n=" + std::to_string(n) + " " + r.summary() + " distinct_relations=" + std::to_string(images.size()) +
              "; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome criterion5() {
  RelationSampler sampler(2, 1);
  std::uint64_t valid = 0;
  std::uint64_t violations = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto rel = sampler(i);
    const bool expected = conditions_hold(rel);
    valid += expected ? 1 : 0;
    try {
      const auto space = closure_from_relation(rel);
      if (!expected || !(separated_pairs(space) == rel)) ++violations;
    } catch (const ConditionsViolatedError&) {
      if (expected) ++violations;
    }
  }
  return {violations == 0 && valid > 0 && valid < 1000,
          "relations=1000 valid=" + std::to_string(valid) + " violations=" + std::to_string(violations)};
}

Outcome criterion6() {
  bool pass = true;
  std::string detail;
  for (const char* id :
       {"thm-crit-grounded", "thm-crit-enlarging", "thm-crit-sublinear", "thm-idem-sufficient", "thm-idem-necessary"}) {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto r = verify_claim(id, single(n));
      pass = pass && clean(r);
      checked += r.instances_checked;
      violations += r.violation_count;
    }
    detail += std::string(id) + " checked=" + std::to_string(checked) + " violations=" + std::to_string(violations) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome criterion7() {
  const std::array ids = {"thm-cp-cont", "thm-cp-implies-ns", "cor-cont-implies-ns",
                          "thm-preimage", "thm-ns-iff-cp",     "cor-ns-iff-cont"};
  bool pass = true;
  std::uint64_t checked = 0;
  const auto start = Clock::now();
  std::vector<VerificationReport> serial;
  for (const char* id : ids) {
    serial.push_back(verify_claim(id, single(2)));
    pass = pass && clean(serial.back());
    checked += serial.back().instances_checked;
  }
  const double serial_s = seconds_since(start);

  const unsigned workers = std::max(2U, std::thread::hardware_concurrency());
  const auto pstart = Clock::now();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    SweepOptions o = single(2);
    o.threads = workers;
    const auto r = verify_claim(ids[i], o);
    pass = pass && r.summary() == serial[i].summary() && r.hypothesis_held == serial[i].hypothesis_held;
  }
  const double parallel_s = seconds_since(pstart);
  pass = pass && serial_s < 300.0;
  return {pass, "claims=6 checked=" + std::to_string(checked) + " violations=0 single-threaded " +
                    fmt_seconds(serial_s) + " (limit 300 s); " + std::to_string(workers) + " workers " +
                    fmt_seconds(parallel_s) + " with identical merged reports on " +
                    std::to_string(std::thread::hardware_concurrency()) + " hardware threads"};
}

Outcome criterion8() {
  bool pass = true;
  std::string detail;
  for (const auto& claim : claim_catalog()) {
    if (!claim.negative) continue;
    HuntOptions o;
    o.n_max = 2;
    const auto first = hunt_counterexample(claim.id, o);
    const auto second = hunt_counterexample(claim.id, o);
    const std::string golden = read_file(std::string(GOLDEN_DIR) + "/" + claim.id + ".json");
    const bool ok = first && second && first->document == second->document && first->document == golden &&
                    replays_as_violation(claim, first->document);
    pass = pass && ok;
    detail += claim.id + (ok ? "=ok" : "=FAILED") + "; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome criterion9() {
  const auto all2 = enumerate_spaces(2, GeneratorClass::all).size();
  const auto iso2 = enumerate_spaces(2, GeneratorClass::isotonic).size();
  std::uint64_t iso3 = 0;
  for_each_space(3, GeneratorClass::isotonic, [&](const Space&) { ++iso3; });
  const auto f2 = filter_tables<4>(2);
  const auto f3 = filter_tables<8>(3);
  const bool pass = all2 == 256 && iso2 == 36 && iso3 == 8000 && f2.all == all2 && f2.isotonic == iso2 &&
                    f3.isotonic == iso3;
  return {pass, "streams " + std::to_string(all2) + "/" + std::to_string(iso2) + "/" + std::to_string(iso3) +
                    ", filters " + std::to_string(f2.all) + "/" + std::to_string(f2.isotonic) + "/" +
                    std::to_string(f3.isotonic)};
}

Outcome criterion10() {
  std::mt19937_64 rng(10);
  RelationSampler relations(3, 10);
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
    const auto s = sample_spaces(n, GeneratorClass::all, 1, static_cast<std::uint64_t>(i)).front();
    const auto y = sample_spaces(1 + static_cast<std::size_t>(i % 3), GeneratorClass::all, 1,
                                 static_cast<std::uint64_t>(i + 1000))
                       .front();
    std::vector<std::size_t> assignment(n);
    for (auto& t : assignment) t = static_cast<std::size_t>(rng() % y.size());
    const SpaceMap f(s, y, assignment);
    const auto rel = relations(static_cast<std::uint64_t>(i));
    if (!(io::parse_space(io::serialize_space(s)) == s)) ++failures;
    if (!(io::parse_relation(io::serialize_relation(rel)) == rel)) ++failures;
    if (!(io::parse_map(io::serialize_map(f)) == f)) ++failures;
  }

  const std::string dir = std::string(FIXTURE_DIR) + "/malformed/";
  const std::vector<std::tuple<std::string, std::string, ErrorKind>> corpus = {
      {"check", "missing_key.json", ErrorKind::MissingSubsetKey},
      {"check", "unknown_element.json", ErrorKind::UnknownElement},
      {"check", "duplicate_element.json", ErrorKind::DuplicateElement},
      {"check", "not_json.json", ErrorKind::SyntaxError},
      {"check", "unsorted_subset.json", ErrorKind::SyntaxError},
      {"derive", "duplicate_pair.relation.json", ErrorKind::DuplicatePair},
      {"map-check", "partial_assignment.map.json", ErrorKind::PartialAssignment},
      {"map-check", "unknown_target.map.json", ErrorKind::UnknownElement},
  };
  int corpus_failures = 0;
  for (const auto& [command, file, kind] : corpus) {
    const std::string path = dir + file;
    std::optional<ErrorKind> got;
    try {
      const auto text = io::read_text(path);
      if (command == "check") io::parse_space(text);
      if (command == "derive") io::parse_relation(text);
      if (command == "map-check") io::parse_map(text, std::filesystem::path(path).parent_path());
    } catch (const Error& e) {
      got = e.kind();
    }
    if (got != kind || cli_exit_code(command + " " + path) != 2) ++corpus_failures;
  }
  return {failures == 0 && corpus_failures == 0,
          "round-trips=300 failures=" + std::to_string(failures) + "; malformed=" + std::to_string(corpus.size()) +
              " mismatches=" + std::to_string(corpus_failures)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exterior separation gives symmetry and R0, n=2", criterion1},
      {"isotonic equivalence n=2,3", criterion2},
      {"closure formula n<=3", criterion3},
      {"round-trip uniqueness n<=3", criterion4},
      {"relation conditions soundness", criterion5},
      {"axiom criteria n<=3", criterion6},
      {"map theorems n=2", criterion7},
      {"negative witnesses", criterion8},
      {"enumeration counts", criterion9},
      {"format round-trips", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}

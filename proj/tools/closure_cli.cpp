// closure-cli: command-line front end for the closure-space library.
//
// Exit codes: 0 ok, 1 claim violated or relation conditions fail,
// 2 bad input, 3 hunt found nothing within budget.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "closure/claims.hpp"
#include "closure/core.hpp"
#include "closure/io.hpp"
#include "closure/maps.hpp"
#include "closure/separation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitNotFound = 3;

const char* flag(bool b) { return b ? "true" : "false"; }

std::string braced(const closure::GroundSet& g, closure::SubsetMask m) {
  return "{" + closure::io::format_subset(g, m) + "}";
}

std::filesystem::path base_dir(const std::string& path) {
  if (path == "-") return {};
  return std::filesystem::path(path).parent_path();
}

struct Output {
  bool quiet = false;
  std::ostream& out = std::cout;

  template <typename T>
  Output& operator<<(const T& v) {
    if (!quiet) out << v;
    return *this;
  }
};

int cmd_check(const std::string& file, Output& out) {
  const auto space = closure::io::parse_space(closure::io::read_text(file));
  const auto ax = closure::axiom_profile(space);
  const auto sym = closure::symmetry_profile(space);
  out << "grounded=" << flag(ax.grounded) << "\n"
      << "isotonic=" << flag(ax.isotonic) << "\n"
      << "enlarging=" << flag(ax.enlarging) << "\n"
      << "idempotent=" << flag(ax.idempotent) << "\n"
      << "sublinear=" << flag(ax.sublinear) << "\n"
      << "pointwise_symmetric=" << flag(sym.pointwise_symmetric) << "\n"
      << "r0=" << flag(sym.r0) << "\n"
      << "exterior_separated=" << flag(sym.exterior_separated) << "\n";
  return kExitOk;
}

int cmd_separate(const std::string& file, Output& out) {
  const auto space = closure::io::parse_space(closure::io::read_text(file));
  const auto rel = closure::separated_pairs(space);
  for (const auto& p : rel.pairs()) {
    out << braced(space.ground(), p.first) << " | " << braced(space.ground(), p.second) << "\n";
  }
  return kExitOk;
}

int cmd_derive(const std::string& file, const std::string& out_path, Output& out) {
  const auto rel = closure::io::parse_relation(closure::io::read_text(file));
  try {
    const auto space = closure::closure_from_relation(rel);
    if (out_path.empty() || out_path == "-") {
      out << closure::io::serialize_space(space);
    } else {
      closure::io::write_text(out_path, closure::io::serialize_space(space));
    }
    return kExitOk;
  } catch (const closure::ConditionsViolatedError& e) {
    const auto& r = e.report();
    const auto& g = rel.ground();
    out << "condition1=" << flag(r.condition1) << "\n";
    if (r.witness1) {
      out << "witness1 A=" << braced(g, r.witness1->a) << " B=" << braced(g, r.witness1->b)
          << " C=" << braced(g, r.witness1->c) << "\n";
    }
    out << "condition2=" << flag(r.condition2) << "\n";
    if (r.witness2) out << "witness2 A=" << braced(g, r.witness2->a) << " B=" << braced(g, r.witness2->b) << "\n";
    return kExitViolation;
  }
}

int cmd_map_check(const std::string& file, Output& out) {
  const auto f = closure::io::parse_map(closure::io::read_text(file), base_dir(file));
  const auto p = closure::map_profile(f);
  out << "closure_preserving=" << flag(p.closure_preserving) << "\n"
      << "continuous=" << flag(p.continuous) << "\n"
      << "nonseparating=" << flag(p.nonseparating) << "\n"
      << "preimage_separating=" << flag(p.preimage_separating) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& claim, const closure::SweepOptions& opts, bool timing, Output& out) {
  const auto report = closure::verify_claim(claim, opts);
  out << "claim=" << report.claim_id << "\n" << report.summary() << "\n"
      << "hypothesis_held=" << report.hypothesis_held << "\n";
  for (const auto& v : report.violations) {
    out << "violation clause=" << v.clause << " index=" << v.index << " "
        << closure::io::Json::parse(v.witness).dump() << "\n";
  }
  if (timing) {
    out << "elapsed_ms=" << std::chrono::duration_cast<std::chrono::milliseconds>(report.elapsed).count() << "\n";
  }
  return report.violation_count == 0 ? kExitOk : kExitViolation;
}

int cmd_hunt(const std::string& claim, const closure::HuntOptions& opts, const std::string& out_path, Output& out) {
  const auto witness = closure::hunt_counterexample(claim, opts);
  if (!witness) {
    out << "claim=" << claim << " found=false\n";
    return kExitNotFound;
  }
  if (out_path.empty() || out_path == "-") {
    out << witness->document;
  } else {
    closure::io::write_text(out_path, witness->document);
    out << "claim=" << witness->claim_id << " found=true minimal=" << flag(witness->minimal)
        << " domain=" << witness->domain_size;
    if (witness->kind == closure::UniverseKind::maps) out << " codomain=" << witness->codomain_size;
    out << "\n";
  }
  return kExitOk;
}

int cmd_list(Output& out) {
  for (const auto& c : closure::claim_catalog()) {
    out << c.id << (c.negative ? " [negative]" : "") << " (" << closure::to_string(c.universe) << "): " << c.description
        << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite generalized closure spaces: axioms, separation, maps, and claim sweeps"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress standard output");

  std::string file;
  std::string out_path;
  std::string claim;
  bool timing = false;
  closure::SweepOptions sweep;
  sweep.threads = std::max(1U, std::thread::hardware_concurrency());
  closure::HuntOptions hunt;

  auto* check = app.add_subcommand("check", "Print the axiom and symmetry profile of a space");
  check->add_option("space-file", file, "Space document, or - for stdin")->required();

  auto* separate = app.add_subcommand("separate", "List the closure-separated pairs of a space");
  separate->add_option("space-file", file, "Space document, or - for stdin")->required();

  auto* derive = app.add_subcommand("derive", "Build the closure function determined by a separation relation");
  derive->add_option("relation-file", file, "Relation document, or - for stdin")->required();
  derive->add_option("-o,--output", out_path, "Write the space document here instead of stdout");

  auto* map_check = app.add_subcommand("map-check", "Print the morphism profile of a map");
  map_check->add_option("map-file", file, "Map document, or - for stdin")->required();

  auto* verify = app.add_subcommand("verify", "Sweep a catalog claim over spaces of a given size");
  verify->add_option("--claim", claim, "Claim id")->required();
  verify->add_option("--n", sweep.n, "Carrier size")->required()->check(CLI::Range(1, 4));
  verify->add_option("--budget", sweep.budget, "Budget in (instance, subset pair) evaluations");
  verify->add_option("--seed", sweep.seed, "Seed for sampled universes");
  verify->add_option("--threads", sweep.threads, "Worker threads")->check(CLI::Range(1, 1024));
  verify->add_flag("--timing", timing, "Also print elapsed time");

  auto* hunt_cmd = app.add_subcommand("hunt", "Search for a counterexample to a negative claim");
  hunt_cmd->add_option("--claim", claim, "Negative claim id")->required();
  hunt_cmd->add_option("--n", hunt.n_max, "Largest carrier size to search")->required()->check(CLI::Range(1, 4));
  hunt_cmd->add_option("--budget", hunt.budget, "Budget in (instance, subset pair) evaluations");
  hunt_cmd->add_option("--seed", hunt.seed, "Seed for sampled carriers");
  hunt_cmd->add_option("-o,--output", out_path, "Write the witness document here instead of stdout");

  auto* list = app.add_subcommand("list-claims", "List the claim catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  Output out{quiet};
  try {
    if (*check) return cmd_check(file, out);
    if (*separate) return cmd_separate(file, out);
    if (*derive) return cmd_derive(file, out_path, out);
    if (*map_check) return cmd_map_check(file, out);
    if (*verify) return cmd_verify(claim, sweep, timing, out);
    if (*hunt_cmd) return cmd_hunt(claim, hunt, out_path, out);
    if (*list) return cmd_list(out);
  } catch (const closure::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

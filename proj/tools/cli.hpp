#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fodist/graph.hpp"

namespace fodist::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // bound violation, unsupported flag combination, search cap
  kIsomorphic = 2,
  kParseError = 3,
  kResourceCap = 4,
};

struct ResolvedGraph {
  Graph graph;
  std::optional<Graph> cfi_seed;  // set for CFI0(...) / CFI1(...) inputs
};

/// Accepts graph6, @path (graph6 on the first line, else an edge list),
/// Kn, Pn, Cn, En, K{a,b}, CFI0(seed) / CFI1(seed), and unions joined with '+'.
/// Throws ParseError.
ResolvedGraph resolve_graph(const std::string& spec);

/// Runs one command line (args exclude the program name). Reports go to out as
/// line-delimited JSON; prompts and diagnostics go to err. `in` feeds play mode.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fodist::cli

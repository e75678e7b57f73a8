#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "fodist/graph.hpp"

namespace fodist {

using Ratio = boost::rational<long long>;

/// Origin of a vertex of a CFI graph.
struct CfiLabel {
  enum class Kind { Middle, EdgePair };
  Kind kind = Kind::Middle;
  int seed_vertex = -1;                    // middle only
  std::vector<std::pair<int, int>> subset;  // middle only: even subset of incident edges
  std::pair<int, int> edge{-1, -1};         // edge pair only
  int bit = 0;                              // edge pair only

  /// "middle(v,{a-b,c-d})" or "edgepair(a-b,bit)".
  std::string to_string() const;
};

struct CfiInstance {
  Graph seed;
  int degree = 0;
  Graph g;
  Graph h;                           // g with the twist
  std::pair<int, int> twist{-1, -1};  // seed edge whose connection is flipped at its lower endpoint
  std::vector<CfiLabel> labels;      // same for g and h
  int certificate_k = 0;             // multiset WL dimension separating g and h; 0 when checked exhaustively
};

/// Builds the pair from a connected d-regular seed with d >= 2. Middle
/// vertices come first (seed vertex order, then subset bitmask order over the
/// vertex's edges in lexicographic order), then edgepair(e,0), edgepair(e,1)
/// per edge in lexicographic order. Throws std::invalid_argument for a seed
/// that is not connected, not regular or of degree < 2; std::logic_error if
/// an output property fails.
CfiInstance cfi_pair(const Graph& seed);

struct SeparatorResult {
  int size = 0;
  VertexSet witness;
};

/// Smallest X such that every component of H - X has at most n/2 vertices.
/// Brute force; throws ResourceLimitError above order 16.
SeparatorResult separator_size(const Graph& h);

struct ExpansionResult {
  Ratio value;
  VertexSet witness;
};

/// min |N(A)| / |A| over nonempty A with |A| <= n/2, N(A) the vertices outside
/// A with a neighbour in A. Throws std::invalid_argument below order 2 and
/// ResourceLimitError above 16.
ExpansionResult vertex_expansion(const Graph& h);
/// min e(A, V - A) / |A| over the same sets.
ExpansionResult edge_expansion(const Graph& h);

struct ExpansionReport {
  Ratio i_v;
  Ratio i_e;
  int s = 0;
  VertexSet separator;
  Ratio certified_lower;  // i_v / (3 + i_v) * n
  int degree = -1;        // regular degree, or -1
};

/// Computes the three quantities and checks s >= certified_lower, and for a
/// d-regular graph i_v >= i_e / d. Throws std::logic_error naming the failed
/// inequality.
ExpansionReport lower_bound_certificate(const Graph& h);

/// Uniform pairing model with rejection of loops and parallel edges. Throws
/// std::invalid_argument when d * m is odd, d < 0 or m <= d, and
/// std::runtime_error after too many rejections.
Graph random_regular(int d, int m, std::uint64_t seed);

}  // namespace fodist

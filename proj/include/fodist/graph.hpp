#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fodist/bitset.hpp"

namespace fodist {

using VertexSet = DynBitset;

/// Raised for malformed textual input (graph6, edge lists, formulas, names).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input is beyond a documented size cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 0..order-1, stored as bit rows.
///
/// Rows are symmetric with a zero diagonal; every mutator keeps that true.
/// Graph values are immutable once handed out by the builders below.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order);

  static Graph from_edges(int order, std::span<const std::pair<int, int>> edges);

  int order() const { return order_; }
  bool adjacent(int u, int v) const { return rows_[u].test(v); }
  const DynBitset& row(int v) const { return rows_[v]; }
  int degree(int v) const { return static_cast<int>(rows_[v].count()); }
  int max_degree() const;
  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  VertexSet empty_set() const { return VertexSet(static_cast<std::size_t>(order_)); }
  VertexSet full_set() const { return empty_set().complemented(); }

  /// Throws std::logic_error when the symmetric/anti-reflexive invariant fails.
  void check_invariants() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int order_ = 0;
  std::vector<DynBitset> rows_;
};

// Named families.
Graph complete_graph(int n);
Graph empty_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_bipartite(int a, int b);

Graph complement(const Graph& g);
Graph disjoint_union(const Graph& g, const Graph& h);
Graph induced_subgraph(const Graph& g, const VertexSet& s);
/// Relabels so that vertex v of g becomes perm[v].
Graph permute(const Graph& g, std::span<const int> perm);

std::vector<VertexSet> connected_components(const Graph& g);
bool is_connected(const Graph& g);
/// BFS hop count; nullopt when unreachable.
std::optional<int> distance(const Graph& g, int u, int v);
/// Common degree when g is regular, nullopt otherwise (order 0 counts as 0-regular).
std::optional<int> regular_degree(const Graph& g);

/// graph6 short form (order <= 62).
Graph parse_graph6(std::string_view line);
std::string write_graph6(const Graph& g);

/// "n" on the first line followed by "u v" pairs, 0-based.
Graph parse_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

/// Ground-truth isomorphism by degree-ordered backtracking.
/// Exact at any order; practical up to roughly a dozen vertices on hard inputs.
/// On success the returned map sends vertex v of g to map[v] in h and has been
/// verified edge by edge.
std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h);
inline bool is_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

/// Canonical code: the minimum over degree-sorted vertex orders of the
/// upper-triangle bit string in graph6 column order. Equal codes iff
/// isomorphic. Order must be at most 11 so the code fits in 64 bits.
std::uint64_t canonical_code(const Graph& g);
/// The graph realising canonical_code(g).
Graph canonical_form(const Graph& g);

/// All graphs of the given order up to isomorphism, each in canonical form,
/// sorted by canonical code. Supported for 0 <= n <= 8; results are cached.
const std::vector<Graph>& graph_catalogue(int n);

}  // namespace fodist

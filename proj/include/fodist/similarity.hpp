#pragma once

#include <vector>

#include "fodist/graph.hpp"

namespace fodist {

/// Partition of V(g) into classes of vertices whose transposition is an
/// automorphism.
struct SimilarityPartition {
  std::vector<VertexSet> classes;  // ordered by smallest member
  std::vector<int> class_of;       // vertex -> index into classes
  std::vector<bool> clique;        // per class; false for singletons
  int graph_sigma = 0;

  int sigma_of(int v) const { return static_cast<int>(classes[static_cast<std::size_t>(class_of[v])].count()); }
};

/// Sorts adjacency rows of g and of its complement; equal rows are twins.
SimilarityPartition similarity_partition(const Graph& g);

/// Direct check: swapping u and v maps g onto itself.
bool transposition_is_automorphism(const Graph& g, int u, int v);

int sigma(const Graph& g);
int sigma_of(const Graph& g, int v);

bool is_clique(const Graph& g, const VertexSet& s);
bool is_independent(const Graph& g, const VertexSet& s);
/// A clique no outside vertex fully extends, or an independent set no outside
/// vertex extends. Singletons are treated as independent sets.
bool is_maximal_homogeneous(const Graph& g, const VertexSet& s);

/// Graphs whose largest similarity class is oversized. S1: 2*sigma > n+3 and
/// the class is maximal homogeneous. S2: 2*sigma > n+1 and it is not.
enum class Membership { None, S1, S2 };

const char* membership_name(Membership m);

struct ClassReport {
  Membership membership = Membership::None;
  /// 2*sigma > n+3, independent of maximality.
  bool in_s = false;
  int sigma = 0;
  VertexSet largest_class;  // the first largest class that decided membership
  bool maximal_homogeneous = false;
  std::vector<VertexSet> largest_classes;
};

ClassReport classify(const Graph& g);

/// Appends l vertices similar to v. Requires l == 0 or sigma_of(g, v) >= 2.
Graph oplus(const Graph& g, int v, int l);

/// Defining rank of g: exact for S1 / S2, an interval otherwise.
struct DefiningRankReport {
  Membership membership = Membership::None;
  bool exact = false;
  int lower = 0;
  int upper = 0;  // equals lower when exact
  bool lower_from_search = false;  // lower bound is the exhaustive identification rank
};

DefiningRankReport defining_rank_report(const Graph& g);

enum class RankKind { NoAlternation, Unrestricted };

/// Values for the pair (g, oplus(g, v, l)) when sigma(g) >= n/2 and v lies in
/// a largest class.
struct SpecialPairRank {
  int pebbles = 0;
  int rank = 0;
  RankKind kind = RankKind::Unrestricted;
  Graph extended;
};

SpecialPairRank exact_pair_rank_special(const Graph& g, int v, int l);

}  // namespace fodist

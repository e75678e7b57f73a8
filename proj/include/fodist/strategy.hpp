#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fodist/graph.hpp"
#include "fodist/solver.hpp"

namespace fodist {

/// Partition of V(g) \ X by neighbourhood inside X, and its refinement on the
/// non-singleton part.
struct PartitionState {
  VertexSet x;
  std::vector<VertexSet> classes;    // C(X), ordered by smallest member
  VertexSet y;                       // union of singleton classes
  VertexSet z;                       // the rest of V \ X
  std::vector<VertexSet> d_classes;  // C(X u Y) restricted to Z
};

PartitionState cx_partition(const Graph& g, const VertexSet& x);

/// X grown greedily from the empty set: scan vertices in increasing order and
/// add the first one that strictly increases the number of classes; repeat.
struct CMaximalSet {
  std::vector<int> order;  // vertices of X in the order they were added
  PartitionState state;
};

CMaximalSet c_maximal_set(const Graph& g);

/// Matching of C(X) in g with C(X') in h under phi: classes correspond when a
/// vertex of each extends phi to a partial isomorphism.
struct PhiMatch {
  enum class Defect { None, Unmatched, SingletonVsLarger };

  std::vector<int> counterpart;          // class of g -> class of h, or -1
  std::vector<int> counterpart_reverse;  // class of h -> class of g, or -1
  Defect defect = Defect::None;
  Side defect_side = Side::None;  // structure holding the offending class
  int defect_class = -1;
  std::vector<int> unequal_sizes;  // matched classes of g whose partner differs in size
};

/// phi is given as pairs (x in g, x' in h) covering X and X'. Throws
/// std::invalid_argument when phi is not a partial isomorphism.
PhiMatch phi_match(const Graph& g, const PartitionState& sg, const Graph& h, const PartitionState& sh,
                   std::span<const PebblePair> phi);

struct SpoilerMove {
  enum class Kind { Place, ClaimWin, Resign };
  Kind kind = Kind::Place;
  Side side = Side::None;
  int vertex = -1;
};

/// Search-free Spoiler. Phase 1 pebbles a C-maximal set X of the smaller graph
/// (g on ties); phase 2 inspects Duplicator's answer and either exposes a
/// mismatch between the class structures or floods a class whose size differs
/// on the two sides. All phase-2 moves stay in one structure, so a match uses
/// at most one alternation.
class SpoilerPlan {
 public:
  /// Throws IsomorphicInputError for isomorphic inputs and
  /// std::invalid_argument when the larger graph is the smaller one with a
  /// similarity class inflated (no short win exists there). Pass
  /// check_inputs = false to skip both checks; the plan then resigns when it
  /// finds no line.
  SpoilerPlan(const Graph& g, const Graph& h, bool check_inputs = true);

  /// Next move given the rounds so far as (g vertex, h vertex) pairs.
  SpoilerMove next_move(std::span<const PebblePair> history) const;

  const std::vector<int>& phase1() const { return x_.order; }
  Side phase1_side() const { return side_a_; }
  /// |X| + max sigma over vertices outside X + 2.
  int predicted_rounds() const { return predicted_; }

 private:
  Graph g_;
  Graph h_;
  Side side_a_;  // structure of phase 1
  CMaximalSet x_;
  int predicted_ = 0;
};

using DuplicatorFn = std::function<int(std::span<const PebblePair>, Side, int)>;

struct MatchRound {
  int round = 0;
  Side side = Side::None;
  int vertex = -1;
  int reply = -1;
  bool alive = true;
};

struct Transcript {
  bool spoiler_won = false;
  int rounds = 0;
  int alternations = 0;
  std::vector<MatchRound> moves;
};

/// Plays SpoilerPlan against `duplicator` until the pairing dies or
/// round_cap rounds pass.
Transcript simulate_match(const Graph& g, const Graph& h, const DuplicatorFn& duplicator, int round_cap);

}  // namespace fodist

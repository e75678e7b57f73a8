#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fodist/formula.hpp"
#include "fodist/graph.hpp"

namespace fodist {

/// The structure Spoiler moves in.
enum class Side : std::uint8_t { None = 0, G = 1, H = 2 };

inline constexpr int kUnlimited = -1;

/// Orders above this are rejected by the game solvers.
inline constexpr int kSolverMaxOrder = 16;

/// (vertex of g, vertex of h)
using PebblePair = std::pair<int, int>;

struct GameConfig {
  std::vector<PebblePair> pairs;
  Side side_last = Side::None;
  int alternations_left = kUnlimited;
};

/// Raised when a distinguishing measure is requested for isomorphic graphs.
class IsomorphicInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The pairing is a partial isomorphism: equal on one side iff equal on the
/// other, adjacent on one side iff adjacent on the other.
bool is_alive(const Graph& g, const Graph& h, std::span<const PebblePair> pairs);

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t memo_entries = 0;
  double millis = 0;
};

struct SolveResult {
  int rank = 0;
  /// Least alternation budget that still wins in `rank` rounds; kUnlimited
  /// if more than rank-1 would be needed (never happens in practice).
  int alternations_used = kUnlimited;
  std::optional<Formula> formula;
  SolveStats stats;
};

/// Memoized Ehrenfeucht game search on one pair of graphs.
///
/// Configurations are reduced modulo twin swaps: vertices of a similarity
/// class are interchangeable, so pebbled twins are relabelled onto the
/// lowest class members before lookup. The memo survives across calls.
class GameSolver {
 public:
  GameSolver(const Graph& g, const Graph& h);
  ~GameSolver();
  GameSolver(GameSolver&&) noexcept;
  GameSolver& operator=(GameSolver&&) noexcept;

  const Graph& g() const;
  const Graph& h() const;

  /// Spoiler wins the remaining `rounds` rounds from cfg (no pebble removal).
  bool spoiler_wins(const GameConfig& cfg, int rounds);

  /// Vertices Spoiler may usefully pick on `side`: unpebbled, one per twin class.
  std::vector<int> spoiler_moves(std::span<const PebblePair> pairs, Side side) const;
  /// Replies in the other structure that keep the pairing alive. With
  /// `one_per_class`, only the lowest vertex of each twin class is listed.
  std::vector<int> alive_replies(std::span<const PebblePair> pairs, Side side, int vertex, bool one_per_class) const;

  /// Least r in 1..cap such that Spoiler (unlimited alternations) wins from
  /// pairs in r rounds, or cap+1 when none does.
  int spoiler_rounds_needed(std::span<const PebblePair> pairs, int cap);

  /// Spoiler wins the l-pebble game with unbounded rounds and pebble reuse.
  bool spoiler_wins_pebble_game(int pebbles);

  SolveStats stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool spoiler_wins(const Graph& g, const Graph& h, const GameConfig& cfg, int rounds);

/// Least r such that Spoiler wins the r-round game with unlimited alternations.
SolveResult rank_D(const Graph& g, const Graph& h, bool with_formula = false);
/// Least r such that Spoiler wins switching structures at most k times.
SolveResult rank_Dk(const Graph& g, const Graph& h, int k, bool with_formula = false);
/// Least number of reusable pebbles with which Spoiler wins.
int pebble_V(const Graph& g, const Graph& h);
/// Max rank_D(g, h) over all non-isomorphic h of the same order (order <= 6).
int identification_rank(const Graph& g);

/// Negation-normal formula true on g and false on h built from a Spoiler
/// strategy winning in `rounds` rounds with at most `alternations` switches.
/// Throws std::invalid_argument when no such strategy exists.
Formula extract_formula(const Graph& g, const Graph& h, int rounds, int alternations = kUnlimited);
Formula extract_formula(GameSolver& solver, int rounds, int alternations = kUnlimited);

/// Duplicator replies that survive as long as possible in a game of `rounds`
/// rounds. On isomorphic inputs it follows a fixed isomorphism while the
/// position allows. Not thread-safe: the underlying search table grows lazily.
class OptimalDuplicator {
 public:
  OptimalDuplicator(const Graph& g, const Graph& h, int rounds);

  /// Reply to Spoiler picking `vertex` in `side`, given the pairs so far.
  int reply(std::span<const PebblePair> pairs, Side side, int vertex);

  GameSolver& solver() { return solver_; }

 private:
  GameSolver solver_;
  int rounds_;
  std::optional<std::vector<int>> iso_;
  std::vector<int> inverse_;
};

/// The structure on the other side.
inline Side other(Side s) { return s == Side::G ? Side::H : Side::G; }

}  // namespace fodist

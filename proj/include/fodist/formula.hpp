#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fodist/graph.hpp"

namespace fodist {

/// A word over {exists, forall}, spelled with 'E' and 'A'.
using QuantSeq = std::string;

/// First-order formula over the graph vocabulary: adjacency and equality.
///
/// Variables are dense indices; variable i prints as x{i+1}. An empty And is
/// the constant true and an empty Or the constant false.
class Formula {
 public:
  enum class Kind { Adj, Eq, Not, And, Or, Exists, Forall };

  static Formula adj(int x, int y);
  static Formula eq(int x, int y);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula exists(int var, Formula body);
  static Formula forall(int var, Formula body);
  static Formula truth() { return conj({}); }
  static Formula falsity() { return disj({}); }

  Kind kind() const { return kind_; }
  bool is_atom() const { return kind_ == Kind::Adj || kind_ == Kind::Eq; }
  bool is_quantifier() const { return kind_ == Kind::Exists || kind_ == Kind::Forall; }
  /// Atom arguments.
  int lhs() const { return a_; }
  int rhs() const { return b_; }
  /// Bound variable of a quantifier.
  int var() const { return a_; }
  const std::vector<Formula>& children() const { return kids_; }
  /// Sole child of Not / Exists / Forall.
  const Formula& body() const { return kids_.front(); }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Kind kind, int a, int b, std::vector<Formula> kids)
      : kind_(kind), a_(a), b_(b), kids_(std::move(kids)) {}

  Kind kind_ = Kind::And;
  int a_ = -1;
  int b_ = -1;
  std::vector<Formula> kids_;
};

int quantifier_rank(const Formula& f);
std::set<QuantSeq> nest_sequences(const Formula& f);
/// Number of adjacent unequal letters in a quantifier word.
int alternations(const QuantSeq& s);
int alternation_number(const Formula& f);

std::set<int> free_variables(const Formula& f);
std::set<int> bound_variables(const Formula& f);
std::size_t node_count(const Formula& f);

/// Truth of a closed formula on g; throws std::invalid_argument when open.
bool evaluate(const Formula& f, const Graph& g);
/// Truth under a partial assignment (entry -1 = unassigned). Free variables
/// must all be assigned.
bool evaluate(const Formula& f, const Graph& g, std::span<const int> assignment);

/// Pushes negations down to atoms using De Morgan and quantifier duality.
Formula negation_normal_form(const Formula& f);

/// Existential description of g up to isomorphism among graphs of its order:
/// n nested existentials, pairwise distinctness, and the exact edge pattern.
Formula canonical_distinguishing_formula(const Graph& g);
/// The description above plus one universal quantifier pinning the order.
Formula canonical_defining_formula(const Graph& g);

/// Renames bound variables so that a formula of rank k uses only k bound
/// names, chosen as the k smallest indices that are not free in f.
Formula reduce_variables(const Formula& f);

/// Prefix syntax, e.g. (exists x1 (and (not (= x1 x2)) (E x1 x2))).
std::string to_string(const Formula& f);
Formula parse_formula(std::string_view text);

}  // namespace fodist

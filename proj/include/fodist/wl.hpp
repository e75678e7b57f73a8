#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fodist/graph.hpp"

namespace fodist {

enum class WlVariant { Set, Multiset };

const char* variant_name(WlVariant v);

/// Isomorphism type of a k-tuple: f[i] numbers the distinct entries in order
/// of first occurrence (1-based); pattern is the s x s adjacency matrix of the
/// distinct entries in that order, row-major.
struct IsoType {
  int s = 0;
  std::vector<int> f;
  std::vector<bool> pattern;

  bool edge(int i, int j) const { return pattern[static_cast<std::size_t>(i * s + j)]; }
  /// f followed by the upper triangle of pattern; isotypes order by this key.
  std::vector<int> key() const;
};

IsoType isotype(const Graph& g, std::span<const int> tuple);

/// A k-tuple's pre-renaming color: the old id followed by the sorted
/// k-vectors of old ids, one per vertex w (deduplicated in the set variant).
/// Vectors are packed into one word each.
using ColorSignature = std::vector<std::uint64_t>;

/// Joint coloring of all k-tuples of g and h. Tuple (u_1..u_k) sits at index
/// sum u_i * n^(k-i). Ids are dense and shared by both graphs.
struct Coloring {
  int k = 0;
  int step = 0;
  std::vector<std::uint32_t> g;
  std::vector<std::uint32_t> h;
  std::uint32_t classes = 0;
  /// Sorted distinct signatures of this step; id = position. Filled only when
  /// requested.
  std::vector<ColorSignature> table;
};

/// Total tuples allowed in one coloring (both graphs).
inline constexpr std::size_t kWlMaxTuples = std::size_t{1} << 22;

/// Step-0 coloring by isomorphism type. Throws ResourceLimitError past
/// kWlMaxTuples; std::invalid_argument for k < 1.
Coloring wl_initial(const Graph& g, const Graph& h, int k, bool keep_table = false);

/// One refinement step with lexicographic renaming common to both graphs.
/// Throws std::invalid_argument when the coloring does not fit the graphs.
Coloring wl_refine_step(const Graph& g, const Graph& h, const Coloring& c, WlVariant variant,
                        bool keep_table = false);

struct WlStable {
  Coloring coloring;  // after steps + 1 refinements
  int steps = 0;      // least R with partition(R + 1) == partition(R)
};

/// Refines until the joint partition stops changing. Throws std::logic_error
/// if R reaches |g|^k + |h|^k.
WlStable wl_stabilize(const Graph& g, const Graph& h, int k, WlVariant variant = WlVariant::Set);

enum class WlVerdict { Isomorphic, NonIsomorphic };

/// Compares the sets of diagonal colors after R + 1 steps. Requires equal
/// orders.
WlVerdict wl_iso_test(const Graph& g, const Graph& h, int k, WlVariant variant = WlVariant::Set);

struct WlCertificate {
  int k = 0;
  WlVariant variant = WlVariant::Set;
  int order = 0;
  int steps = 0;  // 2 * order^k - 1
  /// Renaming tables for steps 0.. (step 0 holds isotype keys). Once a step
  /// leaves every id unchanged all later tables equal the last one, which is
  /// stored once.
  std::vector<std::vector<ColorSignature>> tables;
  std::vector<std::uint32_t> diagonal;  // sorted distinct diagonal ids at the last step

  std::string serialize() const;
  friend bool operator==(const WlCertificate&, const WlCertificate&) = default;
};

WlCertificate wl_canonical_form(const Graph& g, int k, WlVariant variant = WlVariant::Set);

/// Raised when no k up to the search cap separates the pair.
class WlCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// floor((n + 1) / 2) + 1
int wl_dimension_cap(int n);

/// Least k with wl_iso_test non-isomorphic. Throws IsomorphicInputError when
/// the inputs are isomorphic (checked exactly for order <= 10),
/// std::invalid_argument on order mismatch, WlCapExceeded past the cap and
/// ResourceLimitError when a dimension below the cap is too large to run.
int wl_optimal_dimension(const Graph& g, const Graph& h, WlVariant variant = WlVariant::Set);

}  // namespace fodist

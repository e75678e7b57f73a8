#include <stdexcept>

#include "fodist/similarity.hpp"
#include "fodist/solver.hpp"

namespace fodist {

DefiningRankReport defining_rank_report(const Graph& g) {
  const int n = g.order();
  if (n == 0) throw std::invalid_argument("defining_rank_report: graph has no vertices");
  ClassReport cls = classify(g);
  DefiningRankReport r;
  r.membership = cls.membership;
  if (cls.membership == Membership::S1 || cls.membership == Membership::S2) {
    r.exact = true;
    r.lower = r.upper = cls.sigma + (cls.membership == Membership::S1 ? 1 : 2);
    return r;
  }
  r.upper = (n + 5) / 2;
  if (n <= 6) {
    r.lower = identification_rank(g);
    r.lower_from_search = true;
  } else {
    r.lower = 1;
  }
  return r;
}

SpecialPairRank exact_pair_rank_special(const Graph& g, int v, int l) {
  const int n = g.order();
  if (v < 0 || v >= n) throw std::invalid_argument("exact_pair_rank_special: vertex out of range");
  if (l < 1) throw std::invalid_argument("exact_pair_rank_special: extension must add a vertex");
  SimilarityPartition p = similarity_partition(g);
  const int s = p.graph_sigma;
  if (2 * s < n || p.sigma_of(v) != s)
    throw std::invalid_argument("exact_pair_rank_special: needs sigma >= n/2 with v in a largest class");
  SpecialPairRank out;
  out.extended = oplus(g, v, l);
  out.pebbles = s + 1;
  if (is_maximal_homogeneous(g, p.classes[static_cast<std::size_t>(p.class_of[v])])) {
    out.rank = s + 1;
    out.kind = RankKind::NoAlternation;
  } else {
    out.rank = s + 2;
    out.kind = RankKind::Unrestricted;
  }
  return out;
}

}  // namespace fodist

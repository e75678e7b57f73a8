#include "fodist/strategy.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "fodist/similarity.hpp"

namespace fodist {

namespace {

// Groups the vertices of `domain` by their neighbourhood inside `within`,
// classes ordered by smallest member.
std::vector<VertexSet> group_by_pattern(const Graph& g, const VertexSet& domain, const VertexSet& within) {
  std::map<DynBitset, std::size_t> index;
  std::vector<VertexSet> out;
  for (int v : domain.members()) {
    DynBitset key = g.row(v) & within;
    auto [it, fresh] = index.try_emplace(key, out.size());
    if (fresh) out.push_back(g.empty_set());
    out[it->second].set(static_cast<std::size_t>(v));
  }
  return out;
}

std::size_t class_count(const Graph& g, const VertexSet& x) {
  return group_by_pattern(g, x.complemented(), x).size();
}

VertexSet set_of(const Graph& g, std::span<const int> vs) {
  VertexSet s = g.empty_set();
  for (int v : vs) s.set(static_cast<std::size_t>(v));
  return s;
}

// Adjacency of v to each vertex of `list`, in list order.
std::vector<bool> pattern(const Graph& g, int v, std::span<const int> list) {
  std::vector<bool> out;
  out.reserve(list.size());
  for (int w : list) out.push_back(g.adjacent(v, w));
  return out;
}

}  // namespace

PartitionState cx_partition(const Graph& g, const VertexSet& x) {
  if (x.size() != static_cast<std::size_t>(g.order())) throw std::invalid_argument("cx_partition: set width differs from graph order");
  PartitionState st;
  st.x = x;
  st.classes = group_by_pattern(g, x.complemented(), x);
  st.y = g.empty_set();
  st.z = g.empty_set();
  for (const auto& c : st.classes) {
    if (c.count() == 1) {
      st.y |= c;
    } else {
      st.z |= c;
    }
  }
  st.d_classes = group_by_pattern(g, st.z, x | st.y);
  return st;
}

CMaximalSet c_maximal_set(const Graph& g) {
  CMaximalSet out;
  VertexSet x = g.empty_set();
  std::size_t current = class_count(g, x);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int u = 0; u < g.order(); ++u) {
      if (x.test(static_cast<std::size_t>(u))) continue;
      VertexSet bigger = x;
      bigger.set(static_cast<std::size_t>(u));
      std::size_t c = class_count(g, bigger);
      if (c > current) {
        x = bigger;
        current = c;
        out.order.push_back(u);
        grew = true;
        break;
      }
    }
  }
  out.state = cx_partition(g, x);
  return out;
}

PhiMatch phi_match(const Graph& g, const PartitionState& sg, const Graph& h, const PartitionState& sh,
                   std::span<const PebblePair> phi) {
  if (!is_alive(g, h, phi)) throw std::invalid_argument("phi_match: phi is not a partial isomorphism");
  std::vector<int> xg, xh;
  for (auto [a, b] : phi) {
    xg.push_back(a);
    xh.push_back(b);
  }
  if (!(set_of(g, xg) == sg.x) || !(set_of(h, xh) == sh.x))
    throw std::invalid_argument("phi_match: phi does not cover the partition sets");

  PhiMatch m;
  m.counterpart.assign(sg.classes.size(), -1);
  m.counterpart_reverse.assign(sh.classes.size(), -1);
  std::map<std::vector<bool>, int> by_pattern;
  for (std::size_t j = 0; j < sh.classes.size(); ++j)
    by_pattern.emplace(pattern(h, static_cast<int>(sh.classes[j].first()), xh), static_cast<int>(j));
  for (std::size_t i = 0; i < sg.classes.size(); ++i) {
    auto it = by_pattern.find(pattern(g, static_cast<int>(sg.classes[i].first()), xg));
    if (it == by_pattern.end()) continue;
    m.counterpart[i] = it->second;
    m.counterpart_reverse[it->second] = static_cast<int>(i);
  }

  auto flag = [&](PhiMatch::Defect d, Side side, int cls) {
    if (m.defect != PhiMatch::Defect::None) return;
    m.defect = d;
    m.defect_side = side;
    m.defect_class = cls;
  };
  for (std::size_t i = 0; i < m.counterpart.size(); ++i)
    if (m.counterpart[i] < 0) flag(PhiMatch::Defect::Unmatched, Side::G, static_cast<int>(i));
  for (std::size_t j = 0; j < m.counterpart_reverse.size(); ++j)
    if (m.counterpart_reverse[j] < 0) flag(PhiMatch::Defect::Unmatched, Side::H, static_cast<int>(j));
  for (std::size_t i = 0; i < m.counterpart.size(); ++i) {
    if (m.counterpart[i] < 0) continue;
    const std::size_t a = sg.classes[i].count();
    const std::size_t b = sh.classes[static_cast<std::size_t>(m.counterpart[i])].count();
    if (a != b) m.unequal_sizes.push_back(static_cast<int>(i));
    if (a == 1 && b >= 2) flag(PhiMatch::Defect::SingletonVsLarger, Side::H, m.counterpart[i]);
    if (b == 1 && a >= 2) flag(PhiMatch::Defect::SingletonVsLarger, Side::G, static_cast<int>(i));
  }
  return m;
}

// ------------------------------------------------------------------ plan

namespace {

// Phase-2 line: moves in one structure. When `punishable`, a reply that is
// alive but lands in the wrong class of the finer partition is answered by
// pebbling the separating singleton-class vertex on the same side.
struct Line {
  Side side = Side::None;
  std::vector<int> moves;
  bool punishable = false;
};

struct Phase2 {
  const Graph* graph[2];
  std::vector<int> xs[2];
  std::vector<int> ys[2];  // matched singleton classes, same order on both sides
  std::optional<Line> line;

  // Adjacency pattern to X followed by Y.
  std::vector<bool> star_pattern(int side, int v) const {
    std::vector<bool> p = pattern(*graph[side], v, xs[side]);
    for (bool b : pattern(*graph[side], v, ys[side])) p.push_back(b);
    return p;
  }
};

int idx(Side s) { return s == Side::G ? 0 : 1; }

Phase2 analyse(const Graph& g, const Graph& h, Side side_a, std::span<const PebblePair> phi) {
  Phase2 st;
  st.graph[0] = &g;
  st.graph[1] = &h;
  for (auto [a, b] : phi) {
    st.xs[0].push_back(a);
    st.xs[1].push_back(b);
  }
  PartitionState part[2] = {cx_partition(g, set_of(g, st.xs[0])), cx_partition(h, set_of(h, st.xs[1]))};
  PhiMatch pm = phi_match(g, part[0], h, part[1], phi);

  auto make = [](Side side, std::vector<int> moves, bool punishable) {
    return Line{side, std::move(moves), punishable};
  };

  // A class with no counterpart: any reply breaks the partial isomorphism.
  // A singleton facing a larger class: two picks in the larger one.
  if (pm.defect != PhiMatch::Defect::None) {
    const auto& cls = part[idx(pm.defect_side)].classes[static_cast<std::size_t>(pm.defect_class)];
    std::vector<int> mem = cls.members();
    mem.resize(pm.defect == PhiMatch::Defect::Unmatched ? 1 : 2);
    st.line = make(pm.defect_side, mem, false);
    return st;
  }

  const int a = idx(side_a);
  const int b = 1 - a;
  auto counterpart = [&](int side, std::size_t cls) {
    return side == 0 ? static_cast<std::size_t>(pm.counterpart[cls]) : static_cast<std::size_t>(pm.counterpart_reverse[cls]);
  };

  // Singleton classes, paired through the matching.
  for (std::size_t i = 0; i < part[0].classes.size(); ++i) {
    if (part[0].classes[i].count() != 1) continue;
    st.ys[0].push_back(static_cast<int>(part[0].classes[i].first()));
    st.ys[1].push_back(static_cast<int>(part[1].classes[counterpart(0, i)].first()));
  }
  for (std::size_t i = 0; i < st.ys[0].size(); ++i) {
    for (std::size_t j = i + 1; j < st.ys[0].size(); ++j) {
      if (g.adjacent(st.ys[0][i], st.ys[0][j]) != h.adjacent(st.ys[1][i], st.ys[1][j])) {
        st.line = make(side_a, {st.ys[a][i], st.ys[a][j]}, false);
        return st;
      }
    }
  }

  // Refined classes on Z, matched by their pattern to X and Y.
  std::vector<VertexSet> d[2];
  std::map<std::vector<bool>, std::size_t> d_index[2];
  for (int side = 0; side < 2; ++side) {
    for (const auto& dc : part[side].d_classes) {
      d_index[side].emplace(st.star_pattern(side, static_cast<int>(dc.first())), d[side].size());
      d[side].push_back(dc);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> matched;  // (index on a, index on b)
  for (int side : {a, b}) {
    for (std::size_t i = 0; i < d[side].size(); ++i) {
      auto it = d_index[1 - side].find(st.star_pattern(side, static_cast<int>(d[side][i].first())));
      if (it == d_index[1 - side].end()) {
        st.line = make(side == 0 ? Side::G : Side::H, {static_cast<int>(d[side][i].first())}, true);
        return st;
      }
      if (side == a) matched.emplace_back(i, it->second);
    }
  }

  const Graph& ga = *st.graph[a];
  const Graph& gb = *st.graph[b];
  const Side side_b = other(side_a);
  // Each refined class on the b side must be homogeneous of the same kind as
  // the coarse class holding its partner.
  for (auto [i, j] : matched) {
    const int u = static_cast<int>(d[a][i].first());
    const VertexSet* coarse = nullptr;
    for (const auto& c : part[a].classes)
      if (c.test(static_cast<std::size_t>(u))) coarse = &c;
    std::vector<int> cm = coarse->members();
    const bool clique = ga.adjacent(cm[0], cm[1]);
    std::vector<int> bm = d[b][j].members();
    for (std::size_t p = 0; p < bm.size(); ++p)
      for (std::size_t q = p + 1; q < bm.size(); ++q)
        if (gb.adjacent(bm[p], bm[q]) != clique) {
          st.line = make(side_b, {bm[p], bm[q]}, false);
          return st;
        }
  }
  // Pairs of refined classes must be joined the same way on both sides.
  for (std::size_t p = 0; p < matched.size(); ++p) {
    for (std::size_t q = p + 1; q < matched.size(); ++q) {
      const bool joined =
          ga.adjacent(static_cast<int>(d[a][matched[p].first].first()), static_cast<int>(d[a][matched[q].first].first()));
      for (int x : d[b][matched[p].second].members())
        for (int y : d[b][matched[q].second].members())
          if (gb.adjacent(x, y) != joined) {
            st.line = make(side_b, {x, y}, false);
            return st;
          }
    }
  }

  // A class whose size differs across the sides: flood the larger copy.
  std::optional<std::size_t> best;
  std::size_t best_min = 0;
  for (std::size_t k = 0; k < matched.size(); ++k) {
    const std::size_t na = d[a][matched[k].first].count();
    const std::size_t nb = d[b][matched[k].second].count();
    if (na == nb) continue;
    const std::size_t lo = std::min(na, nb);
    if (!best || lo < best_min) {
      best = k;
      best_min = lo;
    }
  }
  if (best) {
    const std::size_t na = d[a][matched[*best].first].count();
    const std::size_t nb = d[b][matched[*best].second].count();
    const bool on_a = na > nb;
    std::vector<int> mem = on_a ? d[a][matched[*best].first].members() : d[b][matched[*best].second].members();
    mem.resize(best_min + 1);
    st.line = make(on_a ? side_a : side_b, mem, true);
  }
  return st;
}

}  // namespace

SpoilerPlan::SpoilerPlan(const Graph& g, const Graph& h, bool check_inputs)
    : g_(g), h_(h), side_a_(g.order() <= h.order() ? Side::G : Side::H) {
  const Graph& small = side_a_ == Side::G ? g_ : h_;
  const Graph& large = side_a_ == Side::G ? h_ : g_;
  if (check_inputs) {
    if (g.order() == h.order() && is_isomorphic(g, h)) throw IsomorphicInputError("strategy: inputs are isomorphic");
    if (small.order() < large.order()) {
      SimilarityPartition p = similarity_partition(small);
      for (const auto& cls : p.classes) {
        if (cls.count() < 2) continue;
        if (is_isomorphic(oplus(small, static_cast<int>(cls.first()), large.order() - small.order()), large))
          throw std::invalid_argument("strategy: larger graph inflates a similarity class of the smaller one");
      }
    }
  }
  x_ = c_maximal_set(small);
  int max_sigma = 0;
  SimilarityPartition p = similarity_partition(small);
  for (int v = 0; v < small.order(); ++v)
    if (!x_.state.x.test(static_cast<std::size_t>(v))) max_sigma = std::max(max_sigma, p.sigma_of(v));
  predicted_ = static_cast<int>(x_.order.size()) + max_sigma + 2;
}

SpoilerMove SpoilerPlan::next_move(std::span<const PebblePair> history) const {
  if (!is_alive(g_, h_, history)) return SpoilerMove{SpoilerMove::Kind::ClaimWin, Side::None, -1};
  const std::size_t s = x_.order.size();
  if (history.size() < s) return SpoilerMove{SpoilerMove::Kind::Place, side_a_, x_.order[history.size()]};

  Phase2 st = analyse(g_, h_, side_a_, history.first(s));
  if (!st.line) return SpoilerMove{SpoilerMove::Kind::Resign, Side::None, -1};
  const Line& line = *st.line;
  const int ls = idx(line.side);

  // Replay phase 2 to find where the line stands.
  std::size_t next = 0;
  std::optional<int> punish;
  bool punished = false;
  for (std::size_t k = s; k < history.size(); ++k) {
    if (punished) return SpoilerMove{SpoilerMove::Kind::Resign, Side::None, -1};
    if (punish) {
      punish.reset();
      punished = true;
      continue;
    }
    ++next;
    if (!line.punishable) continue;
    const int v = ls == 0 ? history[k].first : history[k].second;
    const int u = ls == 0 ? history[k].second : history[k].first;
    auto pv = st.star_pattern(ls, v);
    auto pu = st.star_pattern(1 - ls, u);
    for (std::size_t i = st.xs[0].size(); i < pv.size(); ++i) {
      if (pv[i] != pu[i]) {
        punish = st.ys[ls][i - st.xs[0].size()];
        break;
      }
    }
  }
  if (punish) return SpoilerMove{SpoilerMove::Kind::Place, line.side, *punish};
  if (punished || next >= line.moves.size()) return SpoilerMove{SpoilerMove::Kind::Resign, Side::None, -1};
  return SpoilerMove{SpoilerMove::Kind::Place, line.side, line.moves[next]};
}

Transcript simulate_match(const Graph& g, const Graph& h, const DuplicatorFn& duplicator, int round_cap) {
  SpoilerPlan plan(g, h, false);
  Transcript t;
  std::vector<PebblePair> history;
  Side last = Side::None;
  for (int round = 1; round <= round_cap; ++round) {
    SpoilerMove mv = plan.next_move(history);
    if (mv.kind == SpoilerMove::Kind::ClaimWin) {
      t.spoiler_won = true;
      break;
    }
    if (mv.kind == SpoilerMove::Kind::Resign) break;
    if (last != Side::None && mv.side != last) ++t.alternations;
    last = mv.side;
    const int reply = duplicator(history, mv.side, mv.vertex);
    const Graph& target = mv.side == Side::G ? h : g;
    MatchRound rec{round, mv.side, mv.vertex, reply, false};
    t.rounds = round;
    if (reply >= 0 && reply < target.order()) {
      history.push_back(mv.side == Side::G ? PebblePair{mv.vertex, reply} : PebblePair{reply, mv.vertex});
      rec.alive = is_alive(g, h, history);
    }
    t.moves.push_back(rec);
    if (!rec.alive) {
      t.spoiler_won = true;
      break;
    }
  }
  return t;
}

}  // namespace fodist

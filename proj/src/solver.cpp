#include "fodist/solver.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <string>

#include "fodist/similarity.hpp"

namespace fodist {

namespace {

using Mask = std::uint32_t;

// Pebble pairs as parallel vertex arrays; v[0] holds g vertices, v[1] h vertices.
struct State {
  std::array<std::uint8_t, kSolverMaxOrder> v[2]{};
  int m = 0;
};

struct Key {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint32_t meta = 0;

  friend bool operator==(const Key&, const Key&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const Key& k) {
    return H::combine(std::move(h), k.lo, k.hi, k.meta);
  }
};

// last: -1 none, 0 g, 1 h. alt: -1 unlimited.
Key make_key(const State& s, int last, int alt) {
  Key k;
  for (int i = 0; i < s.m; ++i) {
    std::uint64_t byte = static_cast<std::uint64_t>((s.v[0][i] << 4) | s.v[1][i]);
    if (i < 8) {
      k.lo |= byte << (8 * i);
    } else {
      k.hi |= byte << (8 * (i - 8));
    }
  }
  k.meta = static_cast<std::uint32_t>(s.m) | static_cast<std::uint32_t>(last + 1) << 5 |
           static_cast<std::uint32_t>(alt + 1) << 8;
  return k;
}

int side_index(Side s) { return s == Side::G ? 0 : s == Side::H ? 1 : -1; }

template <typename F>
void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    int b = std::countr_zero(m);
    m &= m - 1;
    f(b);
  }
}

void check_order(const Graph& g) {
  if (g.order() > kSolverMaxOrder)
    throw ResourceLimitError("game solver supports graphs of order at most " + std::to_string(kSolverMaxOrder));
}

}  // namespace

bool is_alive(const Graph& g, const Graph& h, std::span<const PebblePair> pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if ((a == c) != (b == d)) return false;
      if (a != c && g.adjacent(a, c) != h.adjacent(b, d)) return false;
    }
  }
  return true;
}

struct GameSolver::Impl {
  struct Entry {
    std::uint8_t win_from = 255;
    std::uint8_t lose_upto = 0;
  };

  Graph graphs[2];
  int n[2] = {0, 0};
  Mask adj[2][kSolverMaxOrder] = {};
  Mask full[2] = {0, 0};
  std::uint8_t cls[2][kSolverMaxOrder] = {};
  std::vector<std::vector<std::uint8_t>> members[2];
  int deg[2][kSolverMaxOrder] = {};
  absl::flat_hash_map<Key, Entry> memo;
  std::uint64_t nodes = 0;

  Impl(const Graph& g, const Graph& h) {
    check_order(g);
    check_order(h);
    graphs[0] = g;
    graphs[1] = h;
    for (int s = 0; s < 2; ++s) {
      const Graph& x = graphs[s];
      n[s] = x.order();
      full[s] = n[s] == 32 ? ~Mask{0} : (Mask{1} << n[s]) - 1;
      for (int v = 0; v < n[s]; ++v) {
        for (int u = 0; u < n[s]; ++u)
          if (x.adjacent(v, u)) adj[s][v] |= Mask{1} << u;
        deg[s][v] = x.degree(v);
      }
      SimilarityPartition p = similarity_partition(x);
      for (const auto& c : p.classes) {
        std::vector<std::uint8_t> mem;
        for (int v : c.members()) {
          mem.push_back(static_cast<std::uint8_t>(v));
          cls[s][v] = static_cast<std::uint8_t>(members[s].size());
        }
        members[s].push_back(std::move(mem));
      }
    }
  }

  Mask pebbled(const State& s, int side) const {
    Mask m = 0;
    for (int i = 0; i < s.m; ++i) m |= Mask{1} << s.v[side][i];
    return m;
  }

  // Replies to x (unpebbled, in `side`) that keep the pairing alive.
  Mask candidates(const State& s, int side, int x) const {
    const int o = 1 - side;
    Mask cand = full[o] & ~pebbled(s, o);
    for (int i = 0; i < s.m; ++i) {
      const bool e = (adj[side][x] >> s.v[side][i]) & 1U;
      cand &= e ? adj[o][s.v[o][i]] : ~adj[o][s.v[o][i]];
    }
    return cand;
  }

  // Lowest member of each twin class present in avail.
  Mask class_reps(int side, Mask avail) const {
    Mask seen = 0, out = 0;
    for_each_bit(avail, [&](int v) {
      Mask c = Mask{1} << cls[side][v];
      if (!(seen & c)) {
        seen |= c;
        out |= Mask{1} << v;
      }
    });
    return out;
  }

  // Relabels pebbled twins onto the lowest class members. The result depends
  // only on how many pairs join each (g class, h class) block, so it is a
  // canonical form under twin swaps on both sides.
  void canonicalize(State& s) const {
    const int m = s.m;
    std::array<int, kSolverMaxOrder> idx{};
    std::iota(idx.begin(), idx.begin() + m, 0);
    auto cg = [&](int i) { return cls[0][s.v[0][i]]; };
    auto ch = [&](int i) { return cls[1][s.v[1][i]]; };
    std::stable_sort(idx.begin(), idx.begin() + m,
                     [&](int a, int b) { return cg(a) != cg(b) ? cg(a) < cg(b) : ch(a) < ch(b); });
    std::array<std::uint8_t, kSolverMaxOrder> new0{}, new1{}, used{};
    for (int j = 0; j < m; ++j) {
      int i = idx[j];
      new0[i] = members[0][cg(i)][used[cg(i)]++];
    }
    used.fill(0);
    std::stable_sort(idx.begin(), idx.begin() + m,
                     [&](int a, int b) { return ch(a) != ch(b) ? ch(a) < ch(b) : cg(a) < cg(b); });
    for (int j = 0; j < m; ++j) {
      int i = idx[j];
      new1[i] = members[1][ch(i)][used[ch(i)]++];
    }
    std::iota(idx.begin(), idx.begin() + m, 0);
    std::sort(idx.begin(), idx.begin() + m, [&](int a, int b) { return new0[a] < new0[b]; });
    for (int j = 0; j < m; ++j) {
      s.v[0][j] = new0[idx[j]];
      s.v[1][j] = new1[idx[j]];
    }
  }

  State with_pair(const State& s, int side, int x, int y) const {
    State c = s;
    c.v[side][c.m] = static_cast<std::uint8_t>(x);
    c.v[1 - side][c.m] = static_cast<std::uint8_t>(y);
    ++c.m;
    canonicalize(c);
    return c;
  }

  struct Move {
    int side;
    int x;
    Mask replies;
    int count;
  };

  bool solve(const State& s, int last, int alt, int r) {
    if (r <= 0) return false;
    // A budget that covers every remaining switch is no constraint.
    if (alt >= 0 && alt >= (last < 0 ? r - 1 : r)) alt = -1;
    if (alt < 0) last = -1;
    ++nodes;

    std::array<Move, 2 * kSolverMaxOrder> moves;
    int nm = 0;
    for (int side = 0; side < 2; ++side) {
      if (alt == 0 && last >= 0 && side != last) continue;
      Mask reps = class_reps(side, full[side] & ~pebbled(s, side));
      bool immediate = false;
      for_each_bit(reps, [&](int x) {
        if (immediate) return;
        Mask cand = candidates(s, side, x);
        if (cand == 0) {
          immediate = true;
          return;
        }
        Mask rr = class_reps(1 - side, cand);
        moves[nm++] = Move{side, x, rr, std::popcount(rr)};
      });
      if (immediate) return true;
    }
    if (r == 1) return false;

    const Key key = make_key(s, last, alt);
    if (auto it = memo.find(key); it != memo.end()) {
      if (r >= it->second.win_from) return true;
      if (r <= it->second.lose_upto) return false;
    }

    std::sort(moves.begin(), moves.begin() + nm, [](const Move& a, const Move& b) { return a.count < b.count; });
    bool win = false;
    for (int k = 0; k < nm && !win; ++k) {
      const Move& mv = moves[k];
      const int next_alt = (alt < 0 || last < 0 || mv.side == last) ? alt : alt - 1;
      std::array<int, kSolverMaxOrder> replies{};
      int nr = 0;
      for_each_bit(mv.replies, [&](int y) { replies[nr++] = y; });
      const int dx = deg[mv.side][mv.x];
      const int o = 1 - mv.side;
      std::sort(replies.begin(), replies.begin() + nr,
                [&](int a, int b) { return std::abs(deg[o][a] - dx) < std::abs(deg[o][b] - dx); });
      bool all = true;
      for (int j = 0; j < nr && all; ++j) {
        State c = with_pair(s, mv.side, mv.x, replies[j]);
        all = solve(c, mv.side, next_alt, r - 1);
      }
      win = all;
    }

    Entry& e = memo[key];
    if (win) {
      e.win_from = static_cast<std::uint8_t>(std::min<int>(e.win_from, r));
    } else {
      e.lose_upto = static_cast<std::uint8_t>(std::max<int>(e.lose_upto, r));
    }
    return win;
  }

  // Pairs in placement order; returns false when they are not alive.
  bool load(std::span<const PebblePair> pairs, State& out) const {
    std::vector<PebblePair> dedup(pairs.begin(), pairs.end());
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    for (auto [a, b] : dedup) {
      if (a < 0 || a >= n[0] || b < 0 || b >= n[1]) throw std::invalid_argument("pebble pair out of range");
    }
    if (!is_alive(graphs[0], graphs[1], dedup)) return false;
    out = State{};
    for (auto [a, b] : dedup) {
      out.v[0][out.m] = static_cast<std::uint8_t>(a);
      out.v[1][out.m] = static_cast<std::uint8_t>(b);
      ++out.m;
    }
    return true;
  }

  bool pebble_game(int l);
};

GameSolver::GameSolver(const Graph& g, const Graph& h) : impl_(std::make_unique<Impl>(g, h)) {}
GameSolver::~GameSolver() = default;
GameSolver::GameSolver(GameSolver&&) noexcept = default;
GameSolver& GameSolver::operator=(GameSolver&&) noexcept = default;

const Graph& GameSolver::g() const { return impl_->graphs[0]; }
const Graph& GameSolver::h() const { return impl_->graphs[1]; }

bool GameSolver::spoiler_wins(const GameConfig& cfg, int rounds) {
  State s;
  if (!impl_->load(cfg.pairs, s)) return true;
  impl_->canonicalize(s);
  return impl_->solve(s, side_index(cfg.side_last), cfg.alternations_left < 0 ? -1 : cfg.alternations_left, rounds);
}

std::vector<int> GameSolver::spoiler_moves(std::span<const PebblePair> pairs, Side side) const {
  State s;
  if (!impl_->load(pairs, s)) return {};
  const int si = side_index(side);
  std::vector<int> out;
  for_each_bit(impl_->class_reps(si, impl_->full[si] & ~impl_->pebbled(s, si)), [&](int x) { out.push_back(x); });
  return out;
}

std::vector<int> GameSolver::alive_replies(std::span<const PebblePair> pairs, Side side, int vertex,
                                           bool one_per_class) const {
  State s;
  if (!impl_->load(pairs, s)) return {};
  const int si = side_index(side);
  for (int i = 0; i < s.m; ++i)
    if (s.v[si][i] == vertex) return {s.v[1 - si][i]};
  Mask cand = impl_->candidates(s, si, vertex);
  if (one_per_class) cand = impl_->class_reps(1 - si, cand);
  std::vector<int> out;
  for_each_bit(cand, [&](int y) { out.push_back(y); });
  return out;
}

int GameSolver::spoiler_rounds_needed(std::span<const PebblePair> pairs, int cap) {
  State s;
  if (!impl_->load(pairs, s)) return 0;
  impl_->canonicalize(s);
  for (int r = 1; r <= cap; ++r)
    if (impl_->solve(s, -1, -1, r)) return r;
  return cap + 1;
}

bool GameSolver::Impl::pebble_game(int l) {
  // All alive configurations with at most l pairs, up to twin swaps.
  absl::flat_hash_map<Key, int> index;
  std::vector<State> states;
  auto intern = [&](const State& c) {
    auto [it, fresh] = index.try_emplace(make_key(c, -1, -1), static_cast<int>(states.size()));
    if (fresh) states.push_back(c);
    return it->second;
  };
  intern(State{});
  for (std::size_t i = 0; i < states.size(); ++i) {
    const State s = states[i];
    if (s.m >= l) continue;
    for (int side = 0; side < 2; ++side) {
      for_each_bit(class_reps(side, full[side] & ~pebbled(s, side)), [&](int x) {
        for_each_bit(class_reps(1 - side, candidates(s, side, x)), [&](int y) { intern(with_pair(s, side, x, y)); });
      });
    }
  }

  // Greatest fixpoint: drop positions where some Spoiler placement has no
  // answer leading to a surviving position.
  std::vector<char> alive(states.size(), 1);
  auto answerable = [&](const State& base) {
    for (int side = 0; side < 2; ++side) {
      bool ok = true;
      for_each_bit(class_reps(side, full[side] & ~pebbled(base, side)), [&](int x) {
        if (!ok) return;
        bool found = false;
        for_each_bit(class_reps(1 - side, candidates(base, side, x)), [&](int y) {
          if (found) return;
          auto it = index.find(make_key(with_pair(base, side, x, y), -1, -1));
          if (it == index.end()) throw std::logic_error("pebble game: position missing from enumeration");
          found = alive[it->second] != 0;
        });
        ok = found;
      });
      if (!ok) return false;
    }
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (!alive[i]) continue;
      ++nodes;
      const State& s = states[i];
      bool ok = true;
      if (s.m < l) {
        ok = answerable(s);
      } else {
        for (int drop = 0; drop < s.m && ok; ++drop) {
          State base = s;
          for (int j = drop; j + 1 < s.m; ++j) {
            base.v[0][j] = base.v[0][j + 1];
            base.v[1][j] = base.v[1][j + 1];
          }
          --base.m;
          ok = answerable(base);
        }
      }
      if (!ok) {
        alive[i] = 0;
        changed = true;
      }
    }
  }
  return alive[0] == 0;
}

bool GameSolver::spoiler_wins_pebble_game(int pebbles) { return impl_->pebble_game(pebbles); }

SolveStats GameSolver::stats() const {
  SolveStats st;
  st.nodes = impl_->nodes;
  st.memo_entries = impl_->memo.size();
  return st;
}

bool spoiler_wins(const Graph& g, const Graph& h, const GameConfig& cfg, int rounds) {
  GameSolver solver(g, h);
  return solver.spoiler_wins(cfg, rounds);
}

namespace {

void require_non_isomorphic(const Graph& g, const Graph& h) {
  check_order(g);
  check_order(h);
  if (g.order() == h.order() && is_isomorphic(g, h)) throw IsomorphicInputError("inputs are isomorphic");
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

SolveResult solve_rank(const Graph& g, const Graph& h, int k, bool with_formula, bool check_same_order_bound) {
  const auto start = std::chrono::steady_clock::now();
  require_non_isomorphic(g, h);
  GameSolver solver(g, h);
  const int limit = std::max(g.order(), h.order()) + 1;
  SolveResult res;
  for (int r = 1; r <= limit && res.rank == 0; ++r)
    if (solver.spoiler_wins(GameConfig{{}, Side::None, k}, r)) res.rank = r;
  if (res.rank == 0) throw std::logic_error("rank search exhausted without a Spoiler win");
  if (check_same_order_bound && g.order() == h.order() && res.rank > (g.order() + 3) / 2)
    throw std::logic_error("same-order rank exceeds floor((n+3)/2)");
  const int top = k < 0 ? res.rank - 1 : std::min(k, res.rank - 1);
  for (int a = 0; a <= top; ++a) {
    if (solver.spoiler_wins(GameConfig{{}, Side::None, a}, res.rank)) {
      res.alternations_used = a;
      break;
    }
  }
  if (with_formula) res.formula = extract_formula(solver, res.rank, res.alternations_used);
  res.stats = solver.stats();
  res.stats.millis = elapsed_ms(start);
  return res;
}

Formula type_literals(const Graph& x, std::span<const PebblePair> pairs, Side side, int vertex, bool negated) {
  const int var = static_cast<int>(pairs.size());
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int other = side == Side::G ? pairs[i].first : pairs[i].second;
    const int vi = static_cast<int>(i);
    Formula eq = Formula::eq(var, vi);
    Formula adj = Formula::adj(var, vi);
    const bool e = x.adjacent(vertex, other);
    lits.push_back(negated ? eq : Formula::negate(eq));
    lits.push_back(e != negated ? adj : Formula::negate(adj));
  }
  return negated ? Formula::disj(std::move(lits)) : Formula::conj(std::move(lits));
}

Formula extract_rec(GameSolver& solver, std::vector<PebblePair>& hist, Side last, int alt, int r) {
  for (Side side : {Side::G, Side::H}) {
    if (alt == 0 && last != Side::None && side != last) continue;
    const int next_alt = (alt < 0 || last == Side::None || side == last) ? alt : alt - 1;
    for (int x : solver.spoiler_moves(hist, side)) {
      const auto replies = solver.alive_replies(hist, side, x, true);
      auto pair_for = [&](int y) { return side == Side::G ? PebblePair{x, y} : PebblePair{y, x}; };
      bool wins = true;
      for (int y : replies) {
        hist.push_back(pair_for(y));
        wins = solver.spoiler_wins(GameConfig{hist, side, next_alt}, r - 1);
        hist.pop_back();
        if (!wins) break;
      }
      if (!wins) continue;

      const Graph& x_graph = side == Side::G ? solver.g() : solver.h();
      std::vector<Formula> parts;
      parts.push_back(type_literals(x_graph, hist, side, x, side == Side::H));
      for (int y : replies) {
        hist.push_back(pair_for(y));
        Formula sub = extract_rec(solver, hist, side, next_alt, r - 1);
        hist.pop_back();
        if (std::find(parts.begin(), parts.end(), sub) == parts.end()) parts.push_back(std::move(sub));
      }
      // Flatten the literal block into the connective.
      std::vector<Formula> flat = parts.front().children();
      for (std::size_t i = 1; i < parts.size(); ++i) flat.push_back(std::move(parts[i]));
      const int var = static_cast<int>(hist.size());
      return side == Side::G ? Formula::exists(var, Formula::conj(std::move(flat)))
                             : Formula::forall(var, Formula::disj(std::move(flat)));
    }
  }
  throw std::logic_error("extraction: no winning move in a won position");
}

}  // namespace

SolveResult rank_D(const Graph& g, const Graph& h, bool with_formula) {
  return solve_rank(g, h, kUnlimited, with_formula, true);
}

SolveResult rank_Dk(const Graph& g, const Graph& h, int k, bool with_formula) {
  if (k < kUnlimited) throw std::invalid_argument("rank_Dk: negative alternation budget");
  return solve_rank(g, h, k, with_formula, false);
}

int pebble_V(const Graph& g, const Graph& h) {
  require_non_isomorphic(g, h);
  GameSolver solver(g, h);
  const int limit = std::min(g.order(), h.order()) + 1;
  for (int l = 1; l <= limit; ++l)
    if (solver.spoiler_wins_pebble_game(l)) return l;
  throw std::logic_error("pebble search exhausted without a Spoiler win");
}

int identification_rank(const Graph& g) {
  if (g.order() > 6) throw ResourceLimitError("identification_rank: exhaustive search supports order at most 6");
  int best = 0;
  for (const Graph& h : graph_catalogue(g.order())) {
    if (is_isomorphic(g, h)) continue;
    best = std::max(best, rank_D(g, h).rank);
  }
  return best;
}

Formula extract_formula(GameSolver& solver, int rounds, int alternations) {
  if (!solver.spoiler_wins(GameConfig{{}, Side::None, alternations}, rounds))
    throw std::invalid_argument("extract_formula: budget insufficient for a Spoiler win");
  std::vector<PebblePair> hist;
  return extract_rec(solver, hist, Side::None, alternations, rounds);
}

Formula extract_formula(const Graph& g, const Graph& h, int rounds, int alternations) {
  GameSolver solver(g, h);
  return extract_formula(solver, rounds, alternations);
}

OptimalDuplicator::OptimalDuplicator(const Graph& g, const Graph& h, int rounds) : solver_(g, h), rounds_(rounds) {
  if (g.order() == h.order()) {
    iso_ = find_isomorphism(g, h);
    if (iso_) {
      inverse_.assign(iso_->size(), 0);
      for (std::size_t v = 0; v < iso_->size(); ++v) inverse_[(*iso_)[v]] = static_cast<int>(v);
    }
  }
}

int OptimalDuplicator::reply(std::span<const PebblePair> pairs, Side side, int vertex) {
  for (auto [a, b] : pairs) {
    if (side == Side::G && a == vertex) return b;
    if (side == Side::H && b == vertex) return a;
  }
  if (iso_) {
    bool follows = std::all_of(pairs.begin(), pairs.end(), [&](const PebblePair& p) { return (*iso_)[p.first] == p.second; });
    if (follows) return side == Side::G ? (*iso_)[vertex] : inverse_[vertex];
  }
  const Graph& target = side == Side::G ? solver_.h() : solver_.g();
  const auto candidates = solver_.alive_replies(pairs, side, vertex, true);
  if (candidates.empty()) {
    // Every reply loses; pick any unpebbled vertex.
    for (int y = 0; y < target.order(); ++y) {
      bool used = std::any_of(pairs.begin(), pairs.end(),
                              [&](const PebblePair& p) { return (side == Side::G ? p.second : p.first) == y; });
      if (!used) return y;
    }
    return target.order() > 0 ? 0 : -1;
  }
  const int remaining = rounds_ - static_cast<int>(pairs.size()) - 1;
  if (remaining <= 0) return candidates.front();
  int best = candidates.front();
  int best_depth = -1;
  std::vector<PebblePair> next(pairs.begin(), pairs.end());
  for (int y : candidates) {
    next.push_back(side == Side::G ? PebblePair{vertex, y} : PebblePair{y, vertex});
    const int depth = solver_.spoiler_rounds_needed(next, remaining);
    next.pop_back();
    if (depth > best_depth) {
      best_depth = depth;
      best = y;
    }
    if (depth > remaining) break;
  }
  return best;
}

}  // namespace fodist

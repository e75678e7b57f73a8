#include "fodist/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace fodist {

Graph::Graph(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("negative graph order");
  rows_.assign(static_cast<std::size_t>(order), DynBitset(static_cast<std::size_t>(order)));
}

Graph Graph::from_edges(int order, std::span<const std::pair<int, int>> edges) {
  Graph g(order);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= order_ || v >= order_) throw std::out_of_range("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("loops are not allowed");
  rows_[u].set(v);
  rows_[v].set(u);
}

void Graph::remove_edge(int u, int v) {
  rows_[u].reset(v);
  rows_[v].reset(u);
}

int Graph::max_degree() const {
  int m = 0;
  for (int v = 0; v < order_; ++v) m = std::max(m, degree(v));
  return m;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& r : rows_) twice += r.count();
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < order_; ++u)
    for (int v = u + 1; v < order_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

void Graph::check_invariants() const {
  for (int u = 0; u < order_; ++u) {
    if (rows_[u].test(u)) throw std::logic_error("adjacency diagonal must be zero");
    for (int v = u + 1; v < order_; ++v)
      if (rows_[u].test(v) != rows_[v].test(u)) throw std::logic_error("adjacency must be symmetric");
  }
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

Graph complement(const Graph& g) {
  const int n = g.order();
  Graph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) out.add_edge(u, v);
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out(g.order() + h.order());
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(g.order() + u, g.order() + v);
  return out;
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  auto members = s.members();
  Graph out(static_cast<int>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.adjacent(members[i], members[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
  return out;
}

Graph permute(const Graph& g, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != g.order()) throw std::invalid_argument("permutation size mismatch");
  Graph out(g.order());
  for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
  return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  const int n = g.order();
  std::vector<VertexSet> out;
  VertexSet seen = g.empty_set();
  for (int s = 0; s < n; ++s) {
    if (seen.test(s)) continue;
    VertexSet comp = g.empty_set();
    std::vector<int> stack{s};
    seen.set(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.set(v);
      VertexSet fresh = g.row(v);
      fresh.subtract(seen);
      for (int w : fresh.members()) {
        seen.set(w);
        stack.push_back(w);
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::optional<int> distance(const Graph& g, int u, int v) {
  if (u < 0 || v < 0 || u >= g.order() || v >= g.order()) throw std::out_of_range("vertex out of range");
  if (u == v) return 0;
  VertexSet seen = g.empty_set();
  VertexSet frontier = g.empty_set();
  frontier.set(u);
  seen.set(u);
  for (int d = 1; frontier.any(); ++d) {
    VertexSet next = g.empty_set();
    for (int w : frontier.members()) next |= g.row(w);
    next.subtract(seen);
    if (next.test(v)) return d;
    seen |= next;
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::optional<int> regular_degree(const Graph& g) {
  if (g.order() == 0) return 0;
  int d = g.degree(0);
  for (int v = 1; v < g.order(); ++v)
    if (g.degree(v) != d) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------- graph6

namespace {

constexpr int kMaxGraph6Order = 62;

}  // namespace

Graph parse_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
  if (line.empty()) throw ParseError("graph6: empty input");
  for (char c : line)
    if (static_cast<unsigned char>(c) < 63 || static_cast<unsigned char>(c) > 126)
      throw ParseError("graph6: byte outside [63,126]");
  const int n = static_cast<unsigned char>(line[0]) - 63;
  if (n > kMaxGraph6Order) throw ParseError("graph6: order beyond the supported short form (n <= 62)");
  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t groups = (bits + 5) / 6;
  if (line.size() != 1 + groups) throw ParseError("graph6: malformed length");
  Graph g(n);
  std::size_t k = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++k) {
      int byte = static_cast<unsigned char>(line[1 + k / 6]) - 63;
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(u, v);
    }
  }
  // Padding bits must be zero.
  for (; k < groups * 6; ++k) {
    int byte = static_cast<unsigned char>(line[1 + k / 6]) - 63;
    if ((byte >> (5 - k % 6)) & 1) throw ParseError("graph6: nonzero padding");
  }
  return g;
}

std::string write_graph6(const Graph& g) {
  const int n = g.order();
  if (n > kMaxGraph6Order) throw ResourceLimitError("graph6: order beyond the supported short form (n <= 62)");
  std::string out(1, static_cast<char>(n + 63));
  int acc = 0;
  int filled = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n) || n < 0) throw ParseError("edge list: bad order on line " + std::to_string(lineno));
    } else {
      int u = 0;
      int v = 0;
      if (!(ls >> u >> v)) throw ParseError("edge list: expected 'u v' on line " + std::to_string(lineno));
      if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        throw ParseError("edge list: invalid edge on line " + std::to_string(lineno));
      edges.emplace_back(u, v);
    }
    std::string rest;
    if (ls >> rest) throw ParseError("edge list: trailing tokens on line " + std::to_string(lineno));
  }
  if (n < 0) throw ParseError("edge list: empty input");
  return Graph::from_edges(n, edges);
}

std::string write_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

// ---------------------------------------------------------- isomorphism

namespace {

// Joint colour refinement over both graphs; returns per-vertex colours with
// ids shared between g and h.
std::pair<std::vector<int>, std::vector<int>> joint_refined_colors(const Graph& g, const Graph& h) {
  const int n = g.order();
  std::vector<int> cg(n), ch(n);
  for (int v = 0; v < n; ++v) {
    cg[v] = g.degree(v);
    ch[v] = h.degree(v);
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<int>, int> ids;
    auto signature = [](const Graph& gr, const std::vector<int>& col, int v) {
      std::vector<int> sig{col[v]};
      std::vector<int> nb;
      for (int w : gr.row(v).members()) nb.push_back(col[w]);
      std::sort(nb.begin(), nb.end());
      sig.insert(sig.end(), nb.begin(), nb.end());
      return sig;
    };
    std::vector<std::vector<int>> sg(n), sh(n);
    for (int v = 0; v < n; ++v) {
      sg[v] = signature(g, cg, v);
      sh[v] = signature(h, ch, v);
      ids.emplace(sg[v], 0);
      ids.emplace(sh[v], 0);
    }
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (int v = 0; v < n; ++v) {
      cg[v] = ids[sg[v]];
      ch[v] = ids[sh[v]];
    }
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {cg, ch};
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
  const int n = g.order();
  if (h.order() != n || g.edge_count() != h.edge_count()) return std::nullopt;
  if (n == 0) return std::vector<int>{};
  auto [cg, ch] = joint_refined_colors(g, h);
  {
    auto sg = cg;
    auto sh = ch;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  // Visit order: start from the rarest colour, then keep choosing the vertex
  // with the most already-ordered neighbours.
  std::vector<int> color_count(static_cast<std::size_t>(2 * n + 2), 0);
  for (int c : cg) ++color_count[c];
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    std::tuple<int, int, int> best_key{-1, 0, 0};
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      int links = 0;
      for (int w : order) links += g.adjacent(v, w) ? 1 : 0;
      std::tuple<int, int, int> key{links, -color_count[cg[v]], g.degree(v)};
      if (best < 0 || key > best_key) {
        best = v;
        best_key = key;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  auto consistent = [&](int depth, int target) {
    int v = order[depth];
    for (int i = 0; i < depth; ++i) {
      int u = order[i];
      if (g.adjacent(v, u) != h.adjacent(target, map[u])) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    int v = order[depth];
    for (int t = 0; t < n; ++t) {
      if (used[t] || ch[t] != cg[v] || !consistent(depth, t)) continue;
      map[v] = t;
      used[t] = 1;
      if (self(self, depth + 1)) return true;
      used[t] = 0;
      map[v] = -1;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  for (auto [u, v] : g.edges())
    if (!h.adjacent(map[u], map[v])) throw std::logic_error("isomorphism witness failed verification");
  return map;
}

// ------------------------------------------------------- canonical form

namespace {

struct CanonSearch {
  const Graph& g;
  int n;
  std::vector<int> target_degree;  // degree required at each position
  std::vector<int> perm;           // position -> vertex
  std::vector<char> used;
  std::vector<std::uint64_t> cols;
  std::vector<std::uint64_t> best_cols;
  std::vector<int> best_perm;
  bool have_best = false;

  explicit CanonSearch(const Graph& graph) : g(graph), n(graph.order()) {
    for (int v = 0; v < n; ++v) target_degree.push_back(g.degree(v));
    std::sort(target_degree.begin(), target_degree.end(), std::greater<>());
    perm.assign(n, -1);
    used.assign(n, 0);
    cols.assign(n, 0);
    best_cols.assign(n, 0);
  }

  // -1, 0, +1 comparing cols[0..pos] with best_cols[0..pos].
  int compare_prefix(int pos) const {
    for (int i = 0; i <= pos; ++i) {
      if (cols[i] != best_cols[i]) return cols[i] < best_cols[i] ? -1 : 1;
    }
    return 0;
  }

  void run(int pos) {
    if (pos == n) {
      if (!have_best || (n > 0 && compare_prefix(n - 1) < 0)) {
        best_cols = cols;
        best_perm = perm;
        have_best = true;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || g.degree(v) != target_degree[pos]) continue;
      std::uint64_t col = 0;
      for (int i = 0; i < pos; ++i) col = (col << 1) | (g.adjacent(perm[i], v) ? 1U : 0U);
      cols[pos] = col;
      if (have_best && compare_prefix(pos) > 0) continue;
      perm[pos] = v;
      used[v] = 1;
      run(pos + 1);
      used[v] = 0;
    }
  }
};

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const int n = g.order();
  if (n > 11) throw ResourceLimitError("canonical_code supports order <= 11");
  CanonSearch s(g);
  s.run(0);
  std::uint64_t code = 0;
  for (int j = 1; j < n; ++j) code = (code << j) | s.best_cols[j];
  return code;
}

Graph canonical_form(const Graph& g) {
  const int n = g.order();
  if (n > 11) throw ResourceLimitError("canonical_form supports order <= 11");
  CanonSearch s(g);
  s.run(0);
  std::vector<int> inverse(n);
  for (int pos = 0; pos < n; ++pos) inverse[s.best_perm[pos]] = pos;
  return permute(g, inverse);
}

namespace {

std::vector<Graph> extend_catalogue(const std::vector<Graph>& smaller, int n) {
  std::map<std::uint64_t, Graph> seen;
  for (const Graph& base : smaller) {
    for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
      Graph g(n);
      for (auto [u, v] : base.edges()) g.add_edge(u, v);
      for (int u = 0; u < n - 1; ++u)
        if ((mask >> u) & 1U) g.add_edge(u, n - 1);
      std::uint64_t code = canonical_code(g);
      if (!seen.contains(code)) seen.emplace(code, canonical_form(g));
    }
  }
  std::vector<Graph> out;
  for (auto& [code, g] : seen) out.push_back(std::move(g));
  return out;
}

}  // namespace

const std::vector<Graph>& graph_catalogue(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Graph>> cache;
  if (n < 0 || n > 8) throw ResourceLimitError("graph catalogue supports orders 0..8");
  std::lock_guard lock(mu);
  if (cache.empty()) cache.emplace(0, std::vector<Graph>{Graph(0)});
  for (int m = 1; m <= n; ++m)
    if (!cache.contains(m)) cache.emplace(m, extend_catalogue(cache.at(m - 1), m));
  return cache.at(n);
}

}  // namespace fodist

#include "fodist/similarity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fodist {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Union all vertices whose rows are identical.
void merge_equal_rows(const std::vector<DynBitset>& rows, std::vector<int>& parent) {
  std::vector<int> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rows[a] < rows[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (rows[order[i]] == rows[order[i - 1]]) {
      parent[find_root(parent, order[i])] = find_root(parent, order[i - 1]);
    }
  }
}

}  // namespace

SimilarityPartition similarity_partition(const Graph& g) {
  const int n = g.order();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);

  // Non-adjacent twins have equal open neighbourhoods; adjacent twins have
  // equal closed neighbourhoods, i.e. equal rows in the complement.
  std::vector<DynBitset> rows, co_rows;
  for (int v = 0; v < n; ++v) {
    rows.push_back(g.row(v));
    DynBitset c = g.row(v).complemented();
    c.reset(static_cast<std::size_t>(v));
    co_rows.push_back(std::move(c));
  }
  merge_equal_rows(rows, parent);
  merge_equal_rows(co_rows, parent);

  SimilarityPartition p;
  p.class_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> root_class(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    int r = find_root(parent, v);
    if (root_class[r] < 0) {
      root_class[r] = static_cast<int>(p.classes.size());
      p.classes.push_back(g.empty_set());
    }
    p.class_of[v] = root_class[r];
    p.classes[static_cast<std::size_t>(root_class[r])].set(static_cast<std::size_t>(v));
  }
  for (const auto& cls : p.classes) {
    int first = static_cast<int>(cls.first());
    std::size_t second = cls.next(static_cast<std::size_t>(first) + 1);
    p.clique.push_back(second < cls.size() && g.adjacent(first, static_cast<int>(second)));
    p.graph_sigma = std::max(p.graph_sigma, static_cast<int>(cls.count()));
  }
  return p;
}

bool transposition_is_automorphism(const Graph& g, int u, int v) {
  auto image = [&](int x) { return x == u ? v : x == v ? u : x; };
  for (int a = 0; a < g.order(); ++a)
    for (int b = a + 1; b < g.order(); ++b)
      if (g.adjacent(a, b) != g.adjacent(image(a), image(b))) return false;
  return true;
}

int sigma(const Graph& g) {
  if (g.order() == 0) throw std::invalid_argument("sigma: graph has no vertices");
  return similarity_partition(g).graph_sigma;
}

int sigma_of(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) throw std::invalid_argument("sigma_of: vertex out of range");
  return similarity_partition(g).sigma_of(v);
}

bool is_clique(const Graph& g, const VertexSet& s) {
  for (int v : s.members()) {
    VertexSet others = s;
    others.reset(static_cast<std::size_t>(v));
    if (!others.is_subset_of(g.row(v))) return false;
  }
  return true;
}

bool is_independent(const Graph& g, const VertexSet& s) {
  for (int v : s.members())
    if (g.row(v).intersects(s)) return false;
  return true;
}

bool is_maximal_homogeneous(const Graph& g, const VertexSet& s) {
  const bool clique = s.count() >= 2 && is_clique(g, s);
  if (!clique && !is_independent(g, s)) return false;
  for (int w = 0; w < g.order(); ++w) {
    if (s.test(static_cast<std::size_t>(w))) continue;
    if (clique ? s.is_subset_of(g.row(w)) : !g.row(w).intersects(s)) return false;
  }
  return true;
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::None:
      return "none";
    case Membership::S1:
      return "S1";
    case Membership::S2:
      return "S2";
  }
  return "none";
}

ClassReport classify(const Graph& g) {
  const int n = g.order();
  if (n == 0) throw std::invalid_argument("classify: graph has no vertices");
  SimilarityPartition p = similarity_partition(g);
  ClassReport r;
  r.sigma = p.graph_sigma;
  for (const auto& cls : p.classes)
    if (static_cast<int>(cls.count()) == r.sigma) r.largest_classes.push_back(cls);

  // Integer forms of the strict thresholds sigma > (n+3)/2 and sigma > (n+1)/2.
  r.in_s = 2 * r.sigma > n + 3;
  const bool s2_size = 2 * r.sigma > n + 1;
  r.largest_class = r.largest_classes.front();
  r.maximal_homogeneous = is_maximal_homogeneous(g, r.largest_class);
  for (const auto& cls : r.largest_classes) {
    if (r.in_s && is_maximal_homogeneous(g, cls)) {
      r.membership = Membership::S1;
      r.largest_class = cls;
      r.maximal_homogeneous = true;
      return r;
    }
  }
  for (const auto& cls : r.largest_classes) {
    if (s2_size && !is_maximal_homogeneous(g, cls)) {
      r.membership = Membership::S2;
      r.largest_class = cls;
      r.maximal_homogeneous = false;
      return r;
    }
  }
  return r;
}

Graph oplus(const Graph& g, int v, int l) {
  const int n = g.order();
  if (v < 0 || v >= n) throw std::invalid_argument("oplus: vertex out of range");
  if (l < 0) throw std::invalid_argument("oplus: negative extension");
  if (l == 0) return g;
  SimilarityPartition p = similarity_partition(g);
  const int cls = p.class_of[v];
  if (p.sigma_of(v) < 2) throw std::invalid_argument("oplus: vertex " + std::to_string(v) + " has no similar partner");
  const VertexSet& members = p.classes[static_cast<std::size_t>(cls)];
  const bool clique = p.clique[static_cast<std::size_t>(cls)];

  std::vector<std::pair<int, int>> edges = g.edges();
  VertexSet outside = g.row(v);
  outside.subtract(members);
  for (int k = 0; k < l; ++k) {
    const int w = n + k;
    for (int x : outside.members()) edges.emplace_back(x, w);
    if (clique) {
      for (int x : members.members()) edges.emplace_back(x, w);
      for (int j = 0; j < k; ++j) edges.emplace_back(n + j, w);
    }
  }
  return Graph::from_edges(n + l, edges);
}

}  // namespace fodist

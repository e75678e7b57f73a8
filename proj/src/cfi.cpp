#include "fodist/cfi.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "fodist/wl.hpp"

namespace fodist {

std::string CfiLabel::to_string() const {
  auto edge_str = [](std::pair<int, int> e) { return std::to_string(e.first) + "-" + std::to_string(e.second); };
  if (kind == Kind::EdgePair) return "edgepair(" + edge_str(edge) + "," + std::to_string(bit) + ")";
  std::string out = "middle(" + std::to_string(seed_vertex) + ",{";
  for (std::size_t i = 0; i < subset.size(); ++i) out += (i ? "," : "") + edge_str(subset[i]);
  return out + "})";
}

CfiInstance cfi_pair(const Graph& seed) {
  auto d = regular_degree(seed);
  if (!d) throw std::invalid_argument("cfi_pair: seed is not regular");
  if (*d < 2) throw std::invalid_argument("cfi_pair: seed degree below 2");
  if (!is_connected(seed)) throw std::invalid_argument("cfi_pair: seed is not connected");
  if (*d > 20) throw ResourceLimitError("cfi_pair: seed degree too large");

  const auto edges = seed.edges();
  const int n = seed.order();
  const int deg = *d;
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));  // edge indices, lexicographic
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[static_cast<std::size_t>(edges[e].first)].push_back(static_cast<int>(e));
    incident[static_cast<std::size_t>(edges[e].second)].push_back(static_cast<int>(e));
  }

  CfiInstance inst;
  inst.seed = seed;
  inst.degree = deg;
  inst.twist = edges.front();

  struct Middle {
    int v;
    unsigned mask;
  };
  std::vector<Middle> middles;
  for (int v = 0; v < n; ++v) {
    for (unsigned mask = 0; mask < (1U << deg); ++mask) {
      if (std::popcount(mask) % 2 != 0) continue;
      middles.push_back({v, mask});
      CfiLabel l;
      l.kind = CfiLabel::Kind::Middle;
      l.seed_vertex = v;
      for (int i = 0; i < deg; ++i)
        if (mask >> i & 1U) l.subset.push_back(edges[static_cast<std::size_t>(incident[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)])]);
      inst.labels.push_back(std::move(l));
    }
  }
  const int base = static_cast<int>(middles.size());
  for (const auto& e : edges) {
    for (int bit = 0; bit < 2; ++bit) {
      CfiLabel l;
      l.kind = CfiLabel::Kind::EdgePair;
      l.edge = e;
      l.bit = bit;
      inst.labels.push_back(std::move(l));
    }
  }
  const int order = static_cast<int>(inst.labels.size());

  auto build = [&](bool twisted) {
    Graph out(order);
    for (std::size_t m = 0; m < middles.size(); ++m) {
      const auto [v, mask] = middles[m];
      for (int i = 0; i < deg; ++i) {
        const int e = incident[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
        int bit = (mask >> i & 1U) ? 1 : 0;
        if (twisted && e == 0 && v == edges[0].first) bit ^= 1;
        out.add_edge(static_cast<int>(m), base + 2 * e + bit);
      }
    }
    return out;
  };
  inst.g = build(false);
  inst.h = build(true);

  const int pow2 = 1 << (deg - 1);
  if (order != (deg + pow2) * n) throw std::logic_error("cfi_pair: order formula fails");
  if (inst.g.max_degree() != pow2 || inst.h.max_degree() != pow2) throw std::logic_error("cfi_pair: degree formula fails");
  if (deg >= 3 && (!is_connected(inst.g) || !is_connected(inst.h))) throw std::logic_error("cfi_pair: output disconnected");
  if (order <= 10) {
    if (is_isomorphic(inst.g, inst.h)) throw std::logic_error("cfi_pair: outputs are isomorphic");
  } else {
    for (int k = 1; k <= 3 && inst.certificate_k == 0; ++k)
      if (wl_iso_test(inst.g, inst.h, k, WlVariant::Multiset) == WlVerdict::NonIsomorphic) inst.certificate_k = k;
    if (inst.certificate_k == 0) throw std::logic_error("cfi_pair: non-isomorphism not certified up to dimension 3");
  }
  return inst;
}

namespace {

constexpr int kBruteForceOrder = 16;

std::vector<std::uint32_t> masks_of(const Graph& h, const char* what) {
  if (h.order() > kBruteForceOrder) throw ResourceLimitError(std::string(what) + ": order above 16");
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(h.order()), 0);
  for (auto [u, v] : h.edges()) {
    adj[static_cast<std::size_t>(u)] |= 1U << v;
    adj[static_cast<std::size_t>(v)] |= 1U << u;
  }
  return adj;
}

VertexSet to_set(int n, std::uint32_t mask) {
  VertexSet s(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1U) s.set(static_cast<std::size_t>(v));
  return s;
}

int largest_component(const std::vector<std::uint32_t>& adj, std::uint32_t alive) {
  int best = 0;
  while (alive) {
    std::uint32_t comp = alive & (~alive + 1);
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      next &= alive & ~comp;
      comp |= next;
      frontier = next;
    }
    best = std::max(best, std::popcount(comp));
    alive &= ~comp;
  }
  return best;
}

template <typename Measure>
ExpansionResult minimise_over_small_sets(const Graph& h, const char* what, Measure measure) {
  if (h.order() < 2) throw std::invalid_argument(std::string(what) + ": order below 2");
  auto adj = masks_of(h, what);
  const int n = h.order();
  ExpansionResult best;
  bool have = false;
  for (std::uint32_t a = 1; a < (1U << n); ++a) {
    const int size = std::popcount(a);
    if (2 * size > n) continue;
    Ratio r(measure(adj, a), size);
    if (!have || r < best.value) {
      best.value = r;
      best.witness = to_set(n, a);
      have = true;
    }
  }
  return best;
}

}  // namespace

SeparatorResult separator_size(const Graph& h) {
  auto adj = masks_of(h, "separator_size");
  const int n = h.order();
  const std::uint32_t full = (1U << n) - 1;
  SeparatorResult best{n + 1, VertexSet(static_cast<std::size_t>(n))};
  for (std::uint32_t x = 0; x <= full; ++x) {
    const int size = std::popcount(x);
    if (size >= best.size) continue;
    if (2 * largest_component(adj, full & ~x) <= n) best = {size, to_set(n, x)};
  }
  return best;
}

ExpansionResult vertex_expansion(const Graph& h) {
  return minimise_over_small_sets(h, "vertex_expansion", [](const std::vector<std::uint32_t>& adj, std::uint32_t a) {
    std::uint32_t nb = 0;
    for (std::uint32_t f = a; f; f &= f - 1) nb |= adj[static_cast<std::size_t>(std::countr_zero(f))];
    return static_cast<long long>(std::popcount(nb & ~a));
  });
}

ExpansionResult edge_expansion(const Graph& h) {
  return minimise_over_small_sets(h, "edge_expansion", [](const std::vector<std::uint32_t>& adj, std::uint32_t a) {
    long long cut = 0;
    for (std::uint32_t f = a; f; f &= f - 1) cut += std::popcount(adj[static_cast<std::size_t>(std::countr_zero(f))] & ~a);
    return cut;
  });
}

ExpansionReport lower_bound_certificate(const Graph& h) {
  ExpansionReport r;
  r.i_v = vertex_expansion(h).value;
  r.i_e = edge_expansion(h).value;
  auto sep = separator_size(h);
  r.s = sep.size;
  r.separator = sep.witness;
  r.certified_lower = r.i_v / (Ratio(3) + r.i_v) * Ratio(h.order());
  if (auto d = regular_degree(h)) r.degree = *d;
  if (Ratio(r.s) < r.certified_lower) throw std::logic_error("lower_bound_certificate: separator below i_v/(3+i_v)*n");
  if (r.degree > 0 && r.i_v < r.i_e / Ratio(r.degree))
    throw std::logic_error("lower_bound_certificate: vertex expansion below i_e/d");
  return r;
}

Graph random_regular(int d, int m, std::uint64_t seed) {
  if (d < 0 || m <= d) throw std::invalid_argument("random_regular: need 0 <= d < m");
  if ((static_cast<long long>(d) * m) % 2 != 0) throw std::invalid_argument("random_regular: d * m must be even");
  std::mt19937_64 rng(seed);
  std::vector<int> points;
  for (int v = 0; v < m; ++v)
    for (int i = 0; i < d; ++i) points.push_back(v);
  constexpr int kAttempts = 100000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::shuffle(points.begin(), points.end(), rng);
    Graph g(m);
    bool ok = true;
    for (std::size_t i = 0; ok && i < points.size(); i += 2) {
      const int u = points[i];
      const int v = points[i + 1];
      if (u == v || g.adjacent(u, v)) {
        ok = false;
      } else {
        g.add_edge(u, v);
      }
    }
    if (ok) return g;
  }
  throw std::runtime_error("random_regular: rejection cap exceeded");
}

}  // namespace fodist

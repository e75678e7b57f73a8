#include "fodist/wl.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "fodist/solver.hpp"

namespace fodist {

const char* variant_name(WlVariant v) { return v == WlVariant::Set ? "set" : "multiset"; }

std::vector<int> IsoType::key() const {
  std::vector<int> out = f;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) out.push_back(edge(i, j) ? 1 : 0);
  return out;
}

IsoType isotype(const Graph& g, std::span<const int> tuple) {
  IsoType t;
  std::vector<int> distinct;
  for (int u : tuple) {
    if (u < 0 || u >= g.order()) throw std::out_of_range("isotype: vertex out of range");
    auto it = std::find(distinct.begin(), distinct.end(), u);
    if (it == distinct.end()) {
      distinct.push_back(u);
      t.f.push_back(static_cast<int>(distinct.size()));
    } else {
      t.f.push_back(static_cast<int>(it - distinct.begin()) + 1);
    }
  }
  t.s = static_cast<int>(distinct.size());
  t.pattern.assign(static_cast<std::size_t>(t.s * t.s), false);
  for (int i = 0; i < t.s; ++i)
    for (int j = 0; j < t.s; ++j)
      if (i != j) t.pattern[static_cast<std::size_t>(i * t.s + j)] = g.adjacent(distinct[i], distinct[j]);
  return t;
}

namespace {

std::size_t tuple_count(int n, int k) {
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && total > kWlMaxTuples / static_cast<std::size_t>(n) + 1) return kWlMaxTuples + 1;
    total *= static_cast<std::size_t>(n);
  }
  return total;
}

void check_size(const Graph& g, const Graph& h, int k) {
  if (k < 1) throw std::invalid_argument("wl: dimension must be at least 1");
  const std::size_t a = tuple_count(g.order(), k);
  const std::size_t b = tuple_count(h.order(), k);
  if (a > kWlMaxTuples || b > kWlMaxTuples || a + b > kWlMaxTuples)
    throw ResourceLimitError("wl: too many tuples for dimension " + std::to_string(k));
}

std::vector<int> digits_of(std::size_t idx, int n, int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(n));
    idx /= static_cast<std::size_t>(n);
  }
  return d;
}

// Replaces each value by its rank among the sorted distinct values of both
// lists; returns the sorted distinct values.
template <typename T>
std::vector<T> rename_jointly(std::vector<T>& a, std::vector<T>& b, std::vector<std::uint32_t>& ida,
                              std::vector<std::uint32_t>& idb) {
  std::vector<T> table;
  table.reserve(a.size() + b.size());
  table.insert(table.end(), a.begin(), a.end());
  table.insert(table.end(), b.begin(), b.end());
  std::sort(table.begin(), table.end());
  table.erase(std::unique(table.begin(), table.end()), table.end());
  auto assign = [&](const std::vector<T>& src, std::vector<std::uint32_t>& dst) {
    dst.resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
      dst[i] = static_cast<std::uint32_t>(std::lower_bound(table.begin(), table.end(), src[i]) - table.begin());
  };
  assign(a, ida);
  assign(b, idb);
  return table;
}

std::vector<ColorSignature> signatures(const Graph& gr, const std::vector<std::uint32_t>& col, int k, unsigned bits,
                                       WlVariant variant) {
  const int n = gr.order();
  std::vector<std::size_t> stride(static_cast<std::size_t>(k));
  std::size_t p = 1;
  for (int i = k - 1; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] = p;
    p *= static_cast<std::size_t>(n);
  }
  std::vector<ColorSignature> out(col.size());
  std::vector<std::uint64_t> buf(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < col.size(); ++idx) {
    auto d = digits_of(idx, n, k);
    for (int w = 0; w < n; ++w) {
      std::uint64_t packed = 0;
      for (int i = 0; i < k; ++i) {
        const std::size_t j = idx - static_cast<std::size_t>(d[static_cast<std::size_t>(i)]) * stride[static_cast<std::size_t>(i)] +
                              static_cast<std::size_t>(w) * stride[static_cast<std::size_t>(i)];
        packed = (packed << bits) | col[j];
      }
      buf[static_cast<std::size_t>(w)] = packed;
    }
    std::sort(buf.begin(), buf.end());
    auto end = variant == WlVariant::Set ? std::unique(buf.begin(), buf.end()) : buf.end();
    ColorSignature& sig = out[idx];
    sig.reserve(static_cast<std::size_t>(end - buf.begin()) + 1);
    sig.push_back(col[idx]);
    sig.insert(sig.end(), buf.begin(), end);
  }
  return out;
}

std::vector<std::uint32_t> diagonal_colors(const std::vector<std::uint32_t>& col, int n, int k) {
  std::size_t step = 0;
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) {
    step += p;
    p *= static_cast<std::size_t>(n);
  }
  std::vector<std::uint32_t> out;
  for (int u = 0; u < n; ++u) out.push_back(col[static_cast<std::size_t>(u) * step]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Coloring wl_initial(const Graph& g, const Graph& h, int k, bool keep_table) {
  check_size(g, h, k);
  auto keys = [k](const Graph& gr) {
    const std::size_t total = tuple_count(gr.order(), k);
    std::vector<std::vector<int>> out(total);
    for (std::size_t idx = 0; idx < total; ++idx) out[idx] = isotype(gr, digits_of(idx, gr.order(), k)).key();
    return out;
  };
  auto kg = keys(g);
  auto kh = keys(h);
  Coloring c;
  c.k = k;
  auto table = rename_jointly(kg, kh, c.g, c.h);
  c.classes = static_cast<std::uint32_t>(table.size());
  if (keep_table) {
    for (const auto& key : table) c.table.emplace_back(key.begin(), key.end());
  }
  return c;
}

Coloring wl_refine_step(const Graph& g, const Graph& h, const Coloring& c, WlVariant variant, bool keep_table) {
  if (c.k < 1 || c.g.size() != tuple_count(g.order(), c.k) || c.h.size() != tuple_count(h.order(), c.k))
    throw std::invalid_argument("wl_refine_step: coloring does not match the graphs");
  const unsigned bits = std::max(1U, static_cast<unsigned>(std::bit_width(c.classes)));
  if (bits * static_cast<unsigned>(c.k) > 64) throw ResourceLimitError("wl_refine_step: color vector does not fit a word");
  auto sg = signatures(g, c.g, c.k, bits, variant);
  auto sh = signatures(h, c.h, c.k, bits, variant);
  Coloring next;
  next.k = c.k;
  next.step = c.step + 1;
  auto table = rename_jointly(sg, sh, next.g, next.h);
  next.classes = static_cast<std::uint32_t>(table.size());
  // Each new class sits inside one old class because the old id leads the
  // signature.
  if (next.classes < c.classes) throw std::logic_error("wl_refine_step: partition got coarser");
  if (keep_table) next.table = std::move(table);
  return next;
}

WlStable wl_stabilize(const Graph& g, const Graph& h, int k, WlVariant variant) {
  const std::size_t bound = tuple_count(g.order(), k) + tuple_count(h.order(), k);
  Coloring c = wl_initial(g, h, k);
  for (int r = 0;; ++r) {
    Coloring next = wl_refine_step(g, h, c, variant);
    if (next.classes == c.classes) {
      if (static_cast<std::size_t>(r) >= bound) throw std::logic_error("wl_stabilize: step bound violated");
      return WlStable{std::move(next), r};
    }
    c = std::move(next);
  }
}

WlVerdict wl_iso_test(const Graph& g, const Graph& h, int k, WlVariant variant) {
  if (g.order() != h.order()) throw std::invalid_argument("wl_iso_test: orders differ");
  auto st = wl_stabilize(g, h, k, variant);
  const int n = g.order();
  return diagonal_colors(st.coloring.g, n, k) == diagonal_colors(st.coloring.h, n, k) ? WlVerdict::Isomorphic
                                                                                      : WlVerdict::NonIsomorphic;
}

std::string WlCertificate::serialize() const {
  std::ostringstream os;
  os << "wl k=" << k << " variant=" << variant_name(variant) << " order=" << order << " steps=" << steps << '\n';
  for (const auto& table : tables) {
    os << table.size() << ':';
    for (const auto& sig : table) {
      os << sig.size() << '[';
      for (std::size_t i = 0; i < sig.size(); ++i) os << (i ? "," : "") << std::hex << sig[i] << std::dec;
      os << ']';
    }
    os << '\n';
  }
  os << diagonal.size() << ':';
  for (std::size_t i = 0; i < diagonal.size(); ++i) os << (i ? "," : "") << diagonal[i];
  os << '\n';
  return os.str();
}

WlCertificate wl_canonical_form(const Graph& g, int k, WlVariant variant) {
  const Graph none(0);
  WlCertificate cert;
  cert.k = k;
  cert.variant = variant;
  cert.order = g.order();
  cert.steps = std::max<long long>(0, 2 * static_cast<long long>(tuple_count(g.order(), k)) - 1);
  Coloring c = wl_initial(g, none, k, true);
  cert.tables.push_back(std::move(c.table));
  for (int step = 1; step <= cert.steps; ++step) {
    Coloring next = wl_refine_step(g, none, c, variant, true);
    cert.tables.push_back(std::move(next.table));
    const bool fixed = next.g == c.g;
    c = std::move(next);
    if (fixed) break;
  }
  cert.diagonal = diagonal_colors(c.g, g.order(), k);
  return cert;
}

int wl_dimension_cap(int n) { return (n + 1) / 2 + 1; }

int wl_optimal_dimension(const Graph& g, const Graph& h, WlVariant variant) {
  if (g.order() != h.order()) throw std::invalid_argument("wl_optimal_dimension: orders differ");
  if (g.order() <= 10 && is_isomorphic(g, h)) throw IsomorphicInputError("wl_optimal_dimension: inputs are isomorphic");
  const int cap = wl_dimension_cap(g.order());
  for (int k = 1; k <= cap; ++k)
    if (wl_iso_test(g, h, k, variant) == WlVerdict::NonIsomorphic) return k;
  throw WlCapExceeded("wl_optimal_dimension: no dimension up to " + std::to_string(cap) + " separates the pair");
}

}  // namespace fodist

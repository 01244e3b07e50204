#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "obk/rng.hpp"

namespace obk {

struct Arc {
  int u = 0;
  int v = 0;
  friend bool operator==(const Arc& a, const Arc& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator<(const Arc& a, const Arc& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; }
};

// Simple digraph: no loops, at most one arc per ordered pair.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0), out_(n), in_(n) {}

  int n() const { return n_; }
  std::size_t num_arcs() const { return m_; }

  bool has_arc(int u, int v) const { return adj_[idx(u, v)] != 0; }

  bool add_arc(int u, int v) {
    if (u == v) throw std::invalid_argument("Digraph: loops are not allowed");
    auto& a = adj_[idx(u, v)];
    if (a) return false;
    a = 1;
    out_[u].push_back(v);
    in_[v].push_back(u);
    ++m_;
    return true;
  }

  bool remove_arc(int u, int v) {
    auto& a = adj_[idx(u, v)];
    if (!a) return false;
    a = 0;
    erase_one(out_[u], v);
    erase_one(in_[v], u);
    --m_;
    return true;
  }

  const std::vector<int>& out(int v) const { return out_[v]; }
  const std::vector<int>& in(int v) const { return in_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_[v].size()); }

  std::vector<Arc> arcs() const {
    std::vector<Arc> a;
    a.reserve(m_);
    for (int u = 0; u < n_; ++u)
      for (int v : out_[u]) a.push_back({u, v});
    std::sort(a.begin(), a.end());
    return a;
  }

  // Returns r if every in- and out-degree equals r, otherwise -1.
  int regularity() const {
    if (n_ == 0) return 0;
    int r = out_degree(0);
    for (int v = 0; v < n_; ++v)
      if (out_degree(v) != r || in_degree(v) != r) return -1;
    return r;
  }

  double density() const { return n_ < 2 ? 0.0 : static_cast<double>(m_) / (static_cast<double>(n_) * (n_ - 1)); }

 private:
  std::size_t idx(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("Digraph: vertex out of range");
    return static_cast<std::size_t>(u) * n_ + v;
  }
  static void erase_one(std::vector<int>& vec, int x) {
    auto it = std::find(vec.begin(), vec.end(), x);
    *it = vec.back();
    vec.pop_back();
  }
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> out_, in_;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0), nb_(n) {}

  int n() const { return n_; }
  std::size_t num_edges() const { return m_; }
  bool has_edge(int u, int v) const { return adj_[idx(u, v)] != 0; }

  bool add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("Graph: loops are not allowed");
    if (adj_[idx(u, v)]) return false;
    adj_[idx(u, v)] = adj_[idx(v, u)] = 1;
    nb_[u].push_back(v);
    nb_[v].push_back(u);
    ++m_;
    return true;
  }

  bool remove_edge(int u, int v) {
    if (!adj_[idx(u, v)]) return false;
    adj_[idx(u, v)] = adj_[idx(v, u)] = 0;
    erase_one(nb_[u], v);
    erase_one(nb_[v], u);
    --m_;
    return true;
  }

  const std::vector<int>& neighbours(int v) const { return nb_[v]; }
  int degree(int v) const { return static_cast<int>(nb_[v].size()); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n_; ++u)
      for (int v : nb_[u])
        if (u < v) e.push_back({u, v});
    std::sort(e.begin(), e.end());
    return e;
  }

  int regularity() const {
    if (n_ == 0) return 0;
    int r = degree(0);
    for (int v = 0; v < n_; ++v)
      if (degree(v) != r) return -1;
    return r;
  }

  double density() const {
    return n_ < 2 ? 0.0 : 2.0 * static_cast<double>(m_) / (static_cast<double>(n_) * (n_ - 1));
  }

 private:
  std::size_t idx(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("Graph: vertex out of range");
    return static_cast<std::size_t>(u) * n_ + v;
  }
  static void erase_one(std::vector<int>& vec, int x) {
    auto it = std::find(vec.begin(), vec.end(), x);
    *it = vec.back();
    vec.pop_back();
  }
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> nb_;
};

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Digraph complete_digraph(int n) {
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) g.add_arc(u, v);
  return g;
}

inline Digraph relabel(const Digraph& g, const std::vector<int>& perm) {
  Digraph h(g.n());
  for (const Arc& a : g.arcs()) h.add_arc(perm[a.u], perm[a.v]);
  return h;
}

// Circulant digraph with arcs v -> v + s for s in offsets.
inline Digraph circulant_digraph(int n, const std::vector<int>& offsets) {
  Digraph g(n);
  for (int v = 0; v < n; ++v)
    for (int s : offsets) {
      int w = ((v + s) % n + n) % n;
      if (w == v || !g.add_arc(v, w)) throw std::invalid_argument("circulant_digraph: bad offset set");
    }
  return g;
}

// Degree-preserving random switches (a,b),(c,d) -> (a,d),(c,b).
inline void randomize_by_switches(Digraph& g, long long switches, Rng& rng) {
  auto arcs = g.arcs();
  if (arcs.size() < 2) return;
  for (long long s = 0; s < switches; ++s) {
    std::size_t i = rng.index(arcs.size()), j = rng.index(arcs.size());
    Arc x = arcs[i], y = arcs[j];
    if (x.u == y.u || x.v == y.v || x.u == y.v || y.u == x.v) continue;
    if (g.has_arc(x.u, y.v) || g.has_arc(y.u, x.v)) continue;
    g.remove_arc(x.u, x.v);
    g.remove_arc(y.u, y.v);
    g.add_arc(x.u, y.v);
    g.add_arc(y.u, x.v);
    arcs[i] = {x.u, y.v};
    arcs[j] = {y.u, x.v};
  }
}

// r-regular random digraph: random circulant followed by switch mixing.
inline Digraph random_regular_digraph(int n, int r, std::uint64_t seed) {
  if (r < 0 || r >= n) throw std::invalid_argument("random_regular_digraph: need 0 <= r < n");
  Rng rng(seed);
  std::vector<int> pool;
  for (int s = 1; s < n; ++s) pool.push_back(s);
  rng.shuffle(pool);
  pool.resize(r);
  Digraph g = circulant_digraph(n, pool);
  randomize_by_switches(g, 10LL * static_cast<long long>(g.num_arcs()), rng);
  return g;
}

// Random 2r-regular graph on n vertices via a circulant and switch mixing.
inline Graph random_regular_graph(int n, int degree, std::uint64_t seed) {
  if (degree % 2 != 0 || degree >= n) throw std::invalid_argument("random_regular_graph: need even degree < n");
  Rng rng(seed);
  std::vector<int> pool;
  for (int s = 1; s <= (n - 1) / 2; ++s) pool.push_back(s);
  rng.shuffle(pool);
  Graph g(n);
  for (int k = 0; k < degree / 2; ++k)
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + pool[k]) % n);
  auto edges = g.edges();
  for (long long s = 0; s < 10LL * static_cast<long long>(edges.size()); ++s) {
    std::size_t i = rng.index(edges.size()), j = rng.index(edges.size());
    auto [a, b] = edges[i];
    auto [c, d] = edges[j];
    if (rng.bernoulli(0.5)) std::swap(c, d);
    if (a == c || a == d || b == c || b == d) continue;
    if (g.has_edge(a, d) || g.has_edge(c, b)) continue;
    g.remove_edge(a, b);
    g.remove_edge(c, d);
    g.add_edge(a, d);
    g.add_edge(c, b);
    edges[i] = {a, d};
    edges[j] = {c, b};
  }
  return g;
}

}  // namespace obk

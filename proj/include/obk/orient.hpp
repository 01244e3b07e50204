#pragma once

// Orient an undirected 2r-regular graph into an r-regular digraph: random
// orientation, then reverse directed paths from surplus to deficit vertices.

#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/digraph.hpp"
#include "obk/rng.hpp"
#include "obk/typicality.hpp"

namespace obk {

struct OrientOptions {
  bool audit = false;  // run a typicality audit on input and output
  double eps = 0.2;
  int t = 2;
};

struct OrientResult {
  Digraph digraph;
  long long flipped_paths = 0;
  std::vector<std::string> warnings;
  double input_required_eps = 0;
  double output_required_eps = 0;
};

inline OrientResult orient_regular_full(const Graph& g, std::uint64_t seed, const OrientOptions& opt = {}) {
  int n = g.n();
  int deg = g.regularity();
  if (deg < 0) throw std::invalid_argument("orient_regular: input graph is not regular");
  if (deg % 2 != 0) throw std::invalid_argument("orient_regular: degree must be even");
  OrientResult res;
  if (opt.audit && n > 1 && deg > 0) {
    auto rep = typicality_check(g, opt.eps, opt.t, 2'000'000, seed);
    res.input_required_eps = rep.required_epsilon;
    if (!rep.pass) res.warnings.push_back("input graph is not typical at the requested eps");
  }
  Rng rng(seed, {tag(Stream::Orient)});
  Digraph d(n);
  for (auto [u, v] : g.edges()) {
    if (rng.bernoulli(0.5)) d.add_arc(u, v);
    else d.add_arc(v, u);
  }
  int r = deg / 2;
  auto excess = [&](int v) { return d.out_degree(v) - d.in_degree(v); };
  std::vector<int> parent(n);
  for (int u = 0; u < n; ++u) {
    while (excess(u) > 0) {
      // BFS along arcs from u until a vertex with negative excess.
      std::fill(parent.begin(), parent.end(), -1);
      parent[u] = u;
      std::queue<int> q;
      q.push(u);
      int target = -1;
      while (!q.empty() && target < 0) {
        int x = q.front();
        q.pop();
        for (int y : d.out(x)) {
          if (parent[y] != -1) continue;
          parent[y] = x;
          if (excess(y) < 0) {
            target = y;
            break;
          }
          q.push(y);
        }
      }
      if (target < 0) throw std::logic_error("orient_regular: no deficit vertex reachable");
      for (int y = target; y != u; y = parent[y]) {
        int x = parent[y];
        d.remove_arc(x, y);
        d.add_arc(y, x);
      }
      ++res.flipped_paths;
    }
  }
  if (d.regularity() != r) throw std::logic_error("orient_regular: repair did not reach regularity");
  if (opt.audit && n > 1 && r > 0) {
    auto rep = typicality_check(d, opt.eps, opt.t, 2'000'000, seed);
    res.output_required_eps = rep.required_epsilon;
    if (!rep.pass) res.warnings.push_back("oriented digraph is not typical at the requested eps");
  }
  res.digraph = std::move(d);
  return res;
}

inline Digraph orient_regular(const Graph& g, std::uint64_t seed) { return orient_regular_full(g, seed).digraph; }

}  // namespace obk

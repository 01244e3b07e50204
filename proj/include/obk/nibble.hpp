#pragma once

// Weighted hypergraph matching by repeated nibbles.  Vertices are arcs of an
// auxiliary digraph, edges are wheel copies.  Each round keeps the sampled
// edges that meet no other sampled edge; a greedy pass and a few rounds of
// one-for-two exchanges finish the matching.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "obk/rng.hpp"
#include "obk/weights.hpp"
#include "obk/wheel.hpp"
#include "obk/wheel_search.hpp"

namespace obk {

struct HyperEdge {
  std::vector<int> verts;
  double weight = 1;
  std::optional<WheelCopy> wheel;
};

struct ProtectedFamily {
  std::string name;
  std::vector<int> members;
};

struct WheelHypergraph {
  int num_vertices = 0;
  std::vector<ColouredArc> arcs;  // vertex id -> arc, empty for abstract hypergraphs
  std::vector<HyperEdge> edges;
  std::vector<ProtectedFamily> families;

  std::vector<double> vertex_weights() const {
    std::vector<double> s(num_vertices, 0.0);
    for (const auto& e : edges)
      for (int v : e.verts) s[v] += e.weight;
    return s;
  }
};

struct HypergraphOptions {
  double eps = 0.0;          // edge weights are scaled by 1 - 5 eps
  std::size_t edge_cap = 2'000'000;
};

// Every colour-correct wheel of J (K-wheels s.d-separated scaled by 3), with
// its scheme weight.  Families F_v, F^K_v, F'_v are attached.
inline WheelHypergraph build_wheel_hypergraph(const AuxiliaryDigraph& j, const WeightScheme& s,
                                              const HypergraphOptions& opt = {}) {
  if (j.nv() != s.n || j.nw() != s.num_hubs()) throw std::invalid_argument("build_wheel_hypergraph: scheme mismatch");
  WheelHypergraph h;
  std::map<std::tuple<int, int, int>, int> id;
  for (const auto& a : j.sorted_arcs()) {
    if (id.try_emplace({a.u, a.v, a.colour}, h.num_vertices).second) {
      h.arcs.push_back(a);
      ++h.num_vertices;
    }
  }
  std::vector<std::pair<WheelTemplate, int>> temps;
  for (int c = 3; c < s.K; ++c) {
    bool any = false;
    for (int w = 0; w < s.num_hubs(); ++w) any = any || s.p_wc[w][c] > 0;
    if (any) temps.push_back({WheelTemplate::plain(c), c});
  }
  bool anyK = false;
  for (int w = 0; w < s.num_hubs(); ++w) anyK = anyK || s.p_wK[w] > 0;
  if (anyK) temps.push_back({WheelTemplate::special(8), s.K});

  for (const auto& [t, len] : temps) {
    int sep = t.kind == WheelKind::Special ? 3 * s.d : 0;
    std::size_t room = opt.edge_cap > h.edges.size() ? opt.edge_cap - h.edges.size() : 0;
    for (auto& w : enumerate_wheels(j, t, sep, room)) {
      auto wt = wheel_weight(s, w.hub - j.nv(), len);
      if (!wt) continue;
      HyperEdge e;
      for (const auto& a : w.arcs()) e.verts.push_back(id.at({a.u, a.v, a.colour}));
      std::sort(e.verts.begin(), e.verts.end());
      e.weight = (1 - 5 * opt.eps) * *wt;
      e.wheel = std::move(w);
      h.edges.push_back(std::move(e));
    }
  }

  std::vector<std::vector<int>> fv(j.size()), fk(j.size()), fr(j.size());
  for (int i = 0; i < h.num_vertices; ++i) {
    const auto& a = h.arcs[i];
    if (j.is_hub(a.v)) {
      fv[a.u].push_back(i);
      fv[a.v].push_back(i);
      if (a.colour == kColourK) {
        fk[a.u].push_back(i);
        fk[a.v].push_back(i);
      }
    } else {
      fr[a.u].push_back(i);
      fr[a.v].push_back(i);
    }
  }
  for (int v = 0; v < j.size(); ++v) {
    if (!fv[v].empty()) h.families.push_back({"F_" + std::to_string(v), fv[v]});
    if (!fk[v].empty()) h.families.push_back({"FK_" + std::to_string(v), fk[v]});
    if (!j.is_hub(v) && !fr[v].empty()) h.families.push_back({"F'_" + std::to_string(v), fr[v]});
  }
  return h;
}

struct NibbleOptions {
  double theta = 0.1;       // fraction of a unit of vertex weight sampled per round
  int family_floor = 1;     // smaller families are reported but not targeted
  int swap_passes = 30;     // rounds of exchanges after the greedy pass
};

struct MatchingResult {
  std::vector<int> edges;                  // indices into H.edges
  std::vector<double> family_uncovered;    // parallel to H.families
  double max_family_uncovered = 0;         // over families at or above the floor
  double uncovered_fraction = 0;           // over all vertices
  int rounds_run = 0;
  int greedy_added = 0;
  int swaps = 0;
};

inline bool is_matching(const WheelHypergraph& h, const std::vector<int>& m) {
  std::vector<char> seen(h.num_vertices, 0);
  for (int e : m)
    for (int v : h.edges[e].verts) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  return true;
}

inline MatchingResult nibble_matching(const WheelHypergraph& h, double leave_target, int rounds, std::uint64_t seed,
                                      const NibbleOptions& opt = {}) {
  for (const auto& e : h.edges)
    if (!(e.weight > 0)) throw std::invalid_argument("nibble_matching: edge weights must be positive");
  Rng rng(seed, {tag(Stream::Nibble)});
  MatchingResult res;
  std::vector<char> covered(h.num_vertices, 0), alive(h.edges.size(), 1);
  std::vector<std::vector<int>> on(h.num_vertices);
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    for (int v : h.edges[e].verts) on[v].push_back(static_cast<int>(e));

  auto take = [&](int e) {
    res.edges.push_back(e);
    for (int v : h.edges[e].verts) {
      covered[v] = 1;
      for (int f : on[v]) alive[f] = 0;
    }
  };
  auto account = [&]() {
    res.family_uncovered.assign(h.families.size(), 0.0);
    res.max_family_uncovered = 0;
    for (std::size_t f = 0; f < h.families.size(); ++f) {
      const auto& m = h.families[f].members;
      int u = 0;
      for (int v : m) u += !covered[v];
      res.family_uncovered[f] = m.empty() ? 0.0 : static_cast<double>(u) / static_cast<double>(m.size());
      if (static_cast<int>(m.size()) >= opt.family_floor)
        res.max_family_uncovered = std::max(res.max_family_uncovered, res.family_uncovered[f]);
    }
    int u = 0;
    for (char c : covered) u += !c;
    res.uncovered_fraction = h.num_vertices ? static_cast<double>(u) / h.num_vertices : 0.0;
  };

  std::vector<int> mark(h.num_vertices, -1);
  for (int r = 0; r < rounds; ++r) {
    // Normalize by the largest live vertex weight.
    std::vector<double> load(h.num_vertices, 0.0);
    bool any = false;
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
      if (!alive[e]) continue;
      any = true;
      for (int v : h.edges[e].verts) load[v] += h.edges[e].weight;
    }
    if (!any) break;
    double top = *std::max_element(load.begin(), load.end());
    std::vector<int> picked;
    for (std::size_t e = 0; e < h.edges.size(); ++e)
      if (alive[e] && rng.bernoulli(std::min(1.0, opt.theta * h.edges[e].weight / top)))
        picked.push_back(static_cast<int>(e));
    // An edge survives if no other picked edge meets it.
    std::fill(mark.begin(), mark.end(), -1);
    std::vector<char> clash(picked.size(), 0);
    for (std::size_t i = 0; i < picked.size(); ++i)
      for (int v : h.edges[picked[i]].verts) {
        if (mark[v] >= 0) {
          clash[i] = 1;
          clash[mark[v]] = 1;
        } else {
          mark[v] = static_cast<int>(i);
        }
      }
    for (std::size_t i = 0; i < picked.size(); ++i)
      if (!clash[i]) take(picked[i]);
    ++res.rounds_run;
    account();
    if (res.max_family_uncovered <= leave_target && !h.families.empty()) break;
  }

  std::vector<int> rest;
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    if (alive[e]) rest.push_back(static_cast<int>(e));
  rng.shuffle(rest);
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) { return h.edges[a].weight > h.edges[b].weight; });
  for (int e : rest) {
    if (!alive[e]) continue;
    ++res.greedy_added;
    take(e);
  }

  // Exchange one matched edge f for two edges e, g: e meets f only and covers
  // an uncovered vertex, g fits into what f and e leave free.  When no such g
  // exists the exchange of f for e alone is sometimes made, which moves the
  // uncovered vertices around without shrinking the matching.
  std::vector<int> owner(h.num_vertices, -1);
  std::vector<char> in_m(h.edges.size(), 0);
  for (int e : res.edges) {
    in_m[e] = 1;
    for (int v : h.edges[e].verts) owner[v] = e;
  }
  auto blockers = [&](int e, std::vector<int>& out) {
    out.clear();
    for (int v : h.edges[e].verts)
      if (owner[v] >= 0 && std::find(out.begin(), out.end(), owner[v]) == out.end()) out.push_back(owner[v]);
  };
  auto set_owner = [&](int e, int who) {
    for (int v : h.edges[e].verts) owner[v] = who;
  };
  std::vector<int> bl, bl2, order(h.num_vertices);
  for (int v = 0; v < h.num_vertices; ++v) order[v] = v;
  for (int pass = 0; pass < opt.swap_passes; ++pass) {
    int before = res.swaps, moved = 0;
    rng.shuffle(order);
    for (int u : order) {
      if (owner[u] >= 0) continue;
      int neutral_e = -1, neutral_f = -1;
      for (int e : on[u]) {
        if (owner[u] >= 0) break;
        blockers(e, bl);
        if (bl.size() != 1) continue;
        int f = bl[0];
        set_owner(f, -1);
        set_owner(e, e);
        int gpick = -1;
        for (int v : h.edges[f].verts) {
          if (owner[v] >= 0) continue;
          for (int g : on[v]) {
            if (g == f || in_m[g]) continue;
            blockers(g, bl2);
            if (bl2.empty()) {
              gpick = g;
              break;
            }
          }
          if (gpick >= 0) break;
        }
        if (gpick < 0) {
          set_owner(e, -1);
          set_owner(f, f);
          if (neutral_e < 0 || rng.bernoulli(0.5)) {
            neutral_e = e;
            neutral_f = f;
          }
          continue;
        }
        set_owner(gpick, gpick);
        in_m[f] = 0;
        in_m[e] = in_m[gpick] = 1;
        ++res.swaps;
      }
      if (owner[u] < 0 && neutral_e >= 0 && pass > 0 && rng.bernoulli(0.5)) {
        set_owner(neutral_f, -1);
        set_owner(neutral_e, neutral_e);
        in_m[neutral_f] = 0;
        in_m[neutral_e] = 1;
        ++moved;
      }
    }
    if (res.swaps == before && moved == 0) break;
  }
  res.edges.clear();
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    if (in_m[e]) res.edges.push_back(static_cast<int>(e));
  std::fill(covered.begin(), covered.end(), 0);
  for (int e : res.edges)
    for (int v : h.edges[e].verts) covered[v] = 1;
  account();
  return res;
}

}  // namespace obk

#pragma once

// Toy states for the exact-step perturbation.  Each hub gets intervals of
// length one and a planted 8-path a -> ... -> a^+ per interval, drawn
// arc-disjointly over all hubs with 3d+2 separated rims.  J_1 is the union of
// the corresponding K-wheels; G'_1 is the union of the paths.

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/digraph.hpp"
#include "obk/rng.hpp"
#include "obk/wheel.hpp"

namespace obk::testing {

struct KToyState {
  int n = 0, d = 0, t1 = 0;
  AuxiliaryDigraph J1;
  Digraph G1p;
  std::vector<std::vector<int>> Z;
  std::vector<std::vector<Interval>> Y1;
  std::vector<WheelCopy> planted;
  int injected = 0;
};

// Hub w starts intervals at the vertices congruent to w mod `spacing`; with
// hubs = t1 * spacing every vertex starts t1 intervals and succeeds t1.
// rim_sep < 0 means 3d + 2.
inline std::optional<KToyState> k_toy_state(int n, int spacing, int t1, int d, std::uint64_t seed, int rim_sep = -1) {
  KToyState st;
  st.n = n;
  st.d = d;
  st.t1 = t1;
  int W = spacing * t1;
  int sep = rim_sep < 0 ? 3 * d + 2 : rim_sep;
  Rng rng(seed);
  Digraph used(n);
  st.G1p = Digraph(n);
  st.J1 = AuxiliaryDigraph(n, W);
  st.Z.assign(W, {});
  st.Y1.assign(W, {});
  for (int w = 0; w < W; ++w) {
    std::vector<int> starts;
    for (int a = w % spacing; a < n; a += spacing) starts.push_back(a);
    std::vector<char> taken(n, 0);
    for (int a : starts) {
      taken[a] = 1;
      taken[(a + 1) % n] = 1;
      st.Y1[w].push_back({a, 1});
    }
    bool hub_done = false;
    for (int attempt = 0; attempt < 200 && !hub_done; ++attempt) {
      std::vector<char> tk = taken;
      std::vector<std::vector<int>> paths;
      bool ok = true;
      for (int a : starts) {
        std::vector<int> path;
        bool found = false;
        for (int tries = 0; tries < 200 && !found; ++tries) {
          path.assign(1, a);
          for (int step = 0; step < 7; ++step) {
            std::vector<int> cand;
            for (int x = 0; x < n; ++x) {
              if (tk[x] || used.has_arc(path.back(), x)) continue;
              bool far = true;
              for (int y : path) far = far && cyclic_distance(n, x, y) >= sep;
              if (step == 6 && (used.has_arc(x, (a + 1) % n) || x == (a + 1) % n)) far = false;
              if (std::find(path.begin(), path.end(), x) != path.end()) far = false;
              if (far) cand.push_back(x);
            }
            if (cand.empty()) break;
            path.push_back(cand[rng.index(cand.size())]);
          }
          found = path.size() == 8;
        }
        if (!found) {
          ok = false;
          break;
        }
        for (std::size_t i = 1; i < path.size(); ++i) tk[path[i]] = 1;
        path.push_back((a + 1) % n);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) used.add_arc(path[i], path[i + 1]);
        paths.push_back(path);
      }
      if (!ok) {
        for (const auto& p : paths)
          for (std::size_t i = 0; i + 1 < p.size(); ++i) used.remove_arc(p[i], p[i + 1]);
        continue;
      }
      hub_done = true;
      for (int x = 0; x < n; ++x)
        if (!tk[x]) st.Z[w].push_back(x);
      for (const auto& p : paths) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) st.G1p.add_arc(p[i], p[i + 1]);
        WheelCopy wc{WheelTemplate::special(8), {p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[0]}, n + w};
        for (const auto& e : wc.arcs()) st.J1.add(e);
        st.planted.push_back(wc);
      }
    }
    if (!hub_done) return std::nullopt;
  }
  return st;
}

// Perturbs a toy state without touching G'_1: colours of V-arcs move between
// 0 and K, spokes are dropped or recoloured and a stray arc is added.
inline void inject_imbalance(KToyState& st, int count, Rng& rng) {
  int n = st.n;
  auto& arcs = st.J1.mutable_arcs();
  for (int i = 0; i < count; ++i) {
    std::size_t k = rng.index(arcs.size());
    ColouredArc& a = arcs[k];
    if (st.J1.is_hub(a.v)) {
      if (rng.bernoulli(0.5)) {
        a = arcs.back();
        arcs.pop_back();
      } else {
        a.colour = a.colour == kColourK ? kColour0 : kColourK;
      }
    } else if (a.colour == kColourK) {
      a = {a.u, succ_pos(n, a.v), kColour0};
    } else {
      int y = pred_pos(n, a.v);
      if (y != a.u && cyclic_distance(n, a.u, y) >= 3 * st.d) a = {a.u, y, kColourK};
    }
    ++st.injected;
  }
  for (int tries = 0; tries < 100; ++tries) {
    int u = rng.range(0, n - 1), v = rng.range(0, n - 1);
    if (u != v && !st.G1p.has_arc(u, v)) {
      st.J1.add(u, v, kColour0);
      break;
    }
  }
}

}  // namespace obk::testing

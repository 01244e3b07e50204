#pragma once

// Indexed coloured arcs and a backtracking embedder for wheel templates with
// one template arc pinned to a given arc.

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/rng.hpp"
#include "obk/wheel.hpp"

namespace obk {

namespace detail {

class ArcIndex {
 public:
  explicit ArcIndex(const AuxiliaryDigraph& j) : nv_(j.nv()) {
    for (const auto& a : j.arcs()) insert(a);
  }
  void insert(const ColouredArc& a) {
    if (!set_.insert(key(a.u, a.v, a.colour)).second) return;
    out_[okey(a.u, a.colour)].push_back(a.v);
  }
  bool has(int u, int v, int c) const { return set_.count(key(u, v, c)) > 0; }
  const std::vector<int>& out(int u, int c) const {
    auto it = out_.find(okey(u, c));
    return it == out_.end() ? empty_ : it->second;
  }
  int nv() const { return nv_; }

 private:
  static std::uint64_t key(int u, int v, int c) {
    return (static_cast<std::uint64_t>(u) << 40) ^ (static_cast<std::uint64_t>(v) << 12) ^ static_cast<std::uint64_t>(c);
  }
  static std::uint64_t okey(int u, int c) { return (static_cast<std::uint64_t>(u) << 12) ^ static_cast<std::uint64_t>(c); }
  int nv_;
  std::unordered_set<std::uint64_t> set_;
  std::unordered_map<std::uint64_t, std::vector<int>> out_;
  std::vector<int> empty_;
};

// Embeddings of one wheel template with a fixed template arc mapped onto the
// given arc.  Rim vertices are added in cyclic order after the mapped ones.
struct WheelSearch {
  const ArcIndex& ix;
  const WheelTemplate& t;
  int sep;  // minimum cyclic distance between rim images, 0 for none
  std::vector<int> map;
  bool stop = false;  // set by a leaf to end enumerate early
  std::vector<int> order;
  std::vector<int> rim_colour, spoke_colour;  // rim_colour[k]: colour of k -> k+1

  WheelSearch(const ArcIndex& ix_, const WheelTemplate& t_, int sep_) : ix(ix_), t(t_), sep(sep_) {
    rim_colour.assign(t.c, -1);
    spoke_colour.assign(t.c, -1);
    for (const auto& e : t.arcs()) {
      if (e.v == t.c) spoke_colour[e.u] = e.colour;
      else rim_colour[e.u] = e.colour;
    }
  }

  // Returns false when the seed arc does not fit the chosen template arc.
  bool start(const ColouredArc& tarc, const ColouredArc& arc) {
    map.assign(t.c + 1, -1);
    order.clear();
    int c = t.c;
    if (tarc.v == c) {
      map[tarc.u] = arc.u;
      map[c] = arc.v;
      for (int k = 1; k < c; ++k) order.push_back((tarc.u + k) % c);
    } else {
      if (arc.u == arc.v) return false;
      map[tarc.u] = arc.u;
      map[tarc.v] = arc.v;
      if (sep && cyclic_distance(ix.nv(), arc.u, arc.v) < sep) return false;
      order.push_back(c);
      for (int k = 2; k < c; ++k) order.push_back((tarc.u + k) % c);
    }
    return true;
  }

  bool used(int x) const {
    for (int k = 0; k < t.c; ++k)
      if (map[k] == x) return true;
    return false;
  }

  void candidates(int tv, std::vector<int>& out) const {
    out.clear();
    int c = t.c;
    if (tv == c) {
      // Hub: a spoke of the right colour from every mapped rim vertex.
      int k0 = -1;
      for (int k = 0; k < c; ++k)
        if (map[k] >= 0) {
          k0 = k;
          break;
        }
      for (int w : ix.out(map[k0], spoke_colour[k0])) {
        if (w < ix.nv()) continue;
        bool ok = true;
        for (int k = 0; k < c && ok; ++k)
          if (map[k] >= 0 && !ix.has(map[k], w, spoke_colour[k])) ok = false;
        if (ok) out.push_back(w);
      }
      return;
    }
    int prev = (tv + c - 1) % c, next = (tv + 1) % c;
    int hub = map[c];
    for (int x : ix.out(map[prev], rim_colour[prev])) {
      if (x >= ix.nv() || used(x)) continue;
      if (!ix.has(x, hub, spoke_colour[tv])) continue;
      if (map[next] >= 0 && !ix.has(x, map[next], rim_colour[tv])) continue;
      if (sep) {
        bool far = true;
        for (int k = 0; k < c && far; ++k)
          if (map[k] >= 0 && cyclic_distance(ix.nv(), map[k], x) < sep) far = false;
        if (!far) continue;
      }
      out.push_back(x);
    }
  }

  template <class Leaf>
  void enumerate(std::size_t level, Leaf&& leaf) {
    if (level == order.size()) {
      leaf(map[t.c]);
      return;
    }
    int tv = order[level];
    std::vector<int> cand;
    candidates(tv, cand);
    for (int x : cand) {
      if (stop) break;
      map[tv] = x;
      enumerate(level + 1, leaf);
      map[tv] = -1;
    }
  }

  // One random root-to-leaf descent; returns (product of branching) * leaf value.
  template <class LeafValue>
  double descend(Rng& rng, LeafValue&& value) {
    double prod = 1;
    std::vector<int> cand;
    for (int tv : order) {
      candidates(tv, cand);
      if (cand.empty()) return 0;
      prod *= static_cast<double>(cand.size());
      map[tv] = cand[rng.index(cand.size())];
    }
    return prod * value(map[t.c]);
  }
};

}  // namespace detail

// Every copy of the template in J, each listed once: the pinned template arc
// is the coloured spoke, which is unique in both wheel kinds.  sep > 0 keeps
// only rims whose vertices are pairwise at cyclic distance >= sep.
inline std::vector<WheelCopy> enumerate_wheels(const AuxiliaryDigraph& j, const WheelTemplate& t, int sep = 0,
                                               std::size_t cap = SIZE_MAX) {
  detail::ArcIndex ix(j);
  std::vector<WheelCopy> out;
  ColouredArc pin{};
  for (const auto& e : t.arcs())
    if (e.v == t.c && e.colour == t.spoke_colour()) pin = e;
  detail::WheelSearch ws(ix, t, sep);
  std::unordered_set<std::uint64_t> seen;
  for (const auto& a : j.arcs()) {
    if (a.colour != pin.colour || !j.is_hub(a.v) || j.is_hub(a.u)) continue;
    std::uint64_t k = (static_cast<std::uint64_t>(a.u) << 32) | static_cast<std::uint64_t>(a.v);
    if (!seen.insert(k).second) continue;
    if (!ws.start(pin, a)) continue;
    ws.enumerate(0, [&](int) {
      out.push_back({t, std::vector<int>(ws.map.begin(), ws.map.begin() + t.c), ws.map[t.c]});
      if (out.size() >= cap) ws.stop = true;
    });
    if (out.size() >= cap) break;
  }
  return out;
}

}  // namespace obk

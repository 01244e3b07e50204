#pragma once

// Divisibility by integer spans of degree vectors.  For every partial map psi
// with |domain| <= 2 into V u W, the degree vector of J at psi must lie in the
// integer span of the template's degree vectors at maps theta of the same
// type.  Spokes (arcs into the hub or into W) carry primed colours.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/hnf.hpp"
#include "obk/wheel.hpp"

namespace obk {

struct LatticeReport {
  bool ok = true;
  bool zero_ok = true;
  std::vector<int> failing_vertices;
  std::vector<std::pair<int, int>> failing_pairs;
};

namespace detail {

struct ColourIndex {
  std::vector<int> colours;
  int index(int c) const {
    auto it = std::lower_bound(colours.begin(), colours.end(), c);
    return it != colours.end() && *it == c ? static_cast<int>(it - colours.begin()) : -1;
  }
  int size() const { return static_cast<int>(colours.size()); }
};

inline int primed(int colour, bool to_hub) { return to_hub ? (colour | kPrime) : colour; }

}  // namespace detail

// Degree vector of the template at the single vertex a, ordered by the colour
// list and then (out, in).  With colours {0, K, 0', K'} this is the row order
// (d+_0, d-_0, d+_K, d-_K, d+_0', d-_0', d+_K', d-_K').
inline std::vector<std::int64_t> template_vertex_vector(const WheelTemplate& t, int a,
                                                        const std::vector<int>& colour_list) {
  std::vector<std::int64_t> v(2 * colour_list.size(), 0);
  for (const auto& e : t.arcs()) {
    int col = detail::primed(e.colour, e.v == t.c);
    auto it = std::find(colour_list.begin(), colour_list.end(), col);
    if (it == colour_list.end()) continue;
    std::size_t k = static_cast<std::size_t>(it - colour_list.begin());
    if (e.u == a) ++v[2 * k];
    if (e.v == a) ++v[2 * k + 1];
  }
  return v;
}

// dsep > 0 restricts the checked maps to images whose V-part is dsep-separated.
inline LatticeReport divisibility_lattice_oracle(const AuxiliaryDigraph& j, const WheelTemplate& t,
                                                 std::optional<int> dsep = std::nullopt) {
  LatticeReport rep;
  const int hubv = t.c;
  std::vector<ColouredArc> h;
  for (const auto& e : t.arcs()) h.push_back({e.u, e.v, detail::primed(e.colour, e.v == hubv)});
  std::vector<ColouredArc> ja;
  for (const auto& e : j.arcs()) ja.push_back({e.u, e.v, detail::primed(e.colour, j.is_hub(e.v))});

  std::set<int> cs;
  for (const auto& e : h) cs.insert(e.colour);
  for (const auto& e : ja) cs.insert(e.colour);
  detail::ColourIndex ci{{cs.begin(), cs.end()}};
  const int C = ci.size();

  // 0-divisibility: (|J^l|)_l in the span of (|H^l|)_l.
  {
    std::vector<std::int64_t> hv(C, 0), jv(C, 0);
    for (const auto& e : h) ++hv[ci.index(e.colour)];
    for (const auto& e : ja) ++jv[ci.index(e.colour)];
    IntLattice lat({hv}, C);
    if (!lat.contains(jv)) {
      rep.ok = false;
      rep.zero_ok = false;
    }
  }

  // 1-divisibility.  Template vertices of the rim part (type (1,0)) and hub (0,1).
  auto vertex_vec_h = [&](int a) {
    std::vector<std::int64_t> v(2 * C, 0);
    for (const auto& e : h) {
      int k = ci.index(e.colour);
      if (e.u == a) ++v[2 * k];
      if (e.v == a) ++v[2 * k + 1];
    }
    return v;
  };
  std::vector<std::vector<std::int64_t>> rim_gens, hub_gens;
  for (int a = 0; a < t.c; ++a) rim_gens.push_back(vertex_vec_h(a));
  hub_gens.push_back(vertex_vec_h(hubv));
  IntLattice rim_lat(rim_gens, 2 * C), hub_lat(hub_gens, 2 * C);
  std::vector<std::vector<std::int64_t>> jvec(j.size(), std::vector<std::int64_t>(2 * C, 0));
  for (const auto& e : ja) {
    int k = ci.index(e.colour);
    ++jvec[e.u][2 * k];
    ++jvec[e.v][2 * k + 1];
  }
  for (int v = 0; v < j.size(); ++v) {
    const IntLattice& lat = j.is_hub(v) ? hub_lat : rim_lat;
    if (!lat.contains(jvec[v])) {
      rep.ok = false;
      rep.failing_vertices.push_back(v);
    }
  }

  // 2-divisibility.  theta ranges over ordered pairs of distinct template
  // vertices; the vector at psi = (1 -> a, 2 -> b) has coordinates
  // (l, id) = #arcs a -> b of colour l and (l, (12)) = #arcs b -> a.
  auto pair_type = [&](bool a_hub, bool b_hub) { return static_cast<int>(a_hub) + static_cast<int>(b_hub); };
  std::vector<std::vector<std::int64_t>> pair_gens[3];
  for (int a = 0; a <= t.c; ++a)
    for (int b = 0; b <= t.c; ++b) {
      if (a == b) continue;
      std::vector<std::int64_t> v(2 * C, 0);
      for (const auto& e : h) {
        int k = ci.index(e.colour);
        if (e.u == a && e.v == b) ++v[2 * k];
        if (e.u == b && e.v == a) ++v[2 * k + 1];
      }
      pair_gens[pair_type(a == hubv, b == hubv)].push_back(v);
    }
  std::vector<IntLattice> pair_lat;
  for (int k = 0; k < 3; ++k) pair_lat.emplace_back(pair_gens[k], 2 * C);
  std::map<std::pair<int, int>, std::vector<std::int64_t>> pv;
  for (const auto& e : ja) {
    int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
    auto& v = pv[{a, b}];
    if (v.empty()) v.assign(2 * C, 0);
    int k = ci.index(e.colour);
    if (e.u == a) ++v[2 * k];
    else ++v[2 * k + 1];
  }
  for (const auto& [ab, v] : pv) {
    auto [a, b] = ab;
    if (dsep && !j.is_hub(a) && !j.is_hub(b) && cyclic_distance(j.nv(), a, b) < *dsep) continue;
    if (!pair_lat[pair_type(j.is_hub(a), j.is_hub(b))].contains(v)) {
      rep.ok = false;
      rep.failing_pairs.push_back(ab);
    }
  }
  return rep;
}

}  // namespace obk

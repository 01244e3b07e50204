#pragma once

// Random compatible families of special c-cycles and the twisting round trip
// over them, as used by the encode demo.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/rng.hpp"
#include "obk/wheel.hpp"

namespace obk {

// Up to three runs of consecutive end positions; each end gets a cycle whose
// other vertices are drawn from positions away from every run.
inline std::vector<ColouredCycle> random_compatible_family(Rng& rng, const CyclicOrder& ord, int c) {
  int n = ord.n();
  std::vector<char> used(n, 0);
  std::vector<int> ends;
  int runs = rng.range(1, 3);
  for (int r = 0; r < runs; ++r) {
    int start = rng.range(0, n - 1), len = rng.range(1, 3);
    bool ok = true;
    for (int t = -1; t <= len; ++t)
      if (used[(start + t + n) % n]) ok = false;
    if (!ok || (static_cast<int>(ends.size()) + len) * c + runs > n - 2) continue;
    for (int t = 0; t < len; ++t) {
      used[(start + t) % n] = 1;
      ends.push_back((start + t) % n);
    }
    used[(start + len) % n] = 1;  // successor of the run stays free of cycles
  }
  std::vector<int> pool;
  for (int q = 0; q < n; ++q)
    if (!used[q]) pool.push_back(q);
  rng.shuffle(pool);
  std::vector<ColouredCycle> fam;
  std::size_t k = 0;
  for (int e : ends) {
    ColouredCycle cyc;
    for (int i = 0; i < c - 1; ++i) cyc.verts.push_back(ord.vertex_at(pool[k++]));
    cyc.verts.push_back(ord.vertex_at(e));
    cyc.colours.assign(c, kColour0);
    cyc.colours[c - 2] = kColourK;
    int rot = rng.range(0, c - 1);
    std::rotate(cyc.verts.begin(), cyc.verts.begin() + rot, cyc.verts.end());
    std::rotate(cyc.colours.begin(), cyc.colours.begin() + rot, cyc.colours.end());
    fam.push_back(cyc);
  }
  return fam;
}

inline std::multiset<std::tuple<int, int, int>> coloured_arc_set(const std::vector<ColouredCycle>& fam) {
  std::multiset<std::tuple<int, int, int>> s;
  for (const auto& cy : fam)
    for (std::size_t i = 0; i < cy.verts.size(); ++i)
      s.insert({cy.verts[i], cy.verts[(i + 1) % cy.verts.size()], cy.colours[i]});
  return s;
}

// Decodes the family and re-encodes it; returns what went wrong, or "".
inline std::string twist_round_trip(const std::vector<ColouredCycle>& fam, const CyclicOrder& ord, int c) {
  std::vector<HostPath> paths;
  try {
    paths = twist_decode(fam, ord);
  } catch (const std::exception& e) {
    return std::string("decode: ") + e.what();
  }
  std::set<int> seen;
  int count = 0;
  for (const auto& p : paths) {
    if (p.num_arcs() == 0 || p.num_arcs() % c) return "path length is not a multiple of c";
    count += p.num_arcs() / c;
    if (ord.position(p.verts.back()) != (ord.position(p.verts.front()) + p.num_arcs() / c) % ord.n())
      return "path does not end at the successor of its run of ends";
    for (int v : p.verts)
      if (!seen.insert(v).second) return "paths share a vertex";
  }
  if (count != static_cast<int>(fam.size())) return "cycle count changed";
  if (coloured_arc_set(twist_encode_paths(paths, c, ord)) != coloured_arc_set(fam)) return "re-encoding differs";
  return "";
}

}  // namespace obk

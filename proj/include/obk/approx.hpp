#pragma once

// Approximate decomposition of the second part: match wheels of J_2 by the
// nibble, read off the host subgraphs G^2_w they cover, and draw each G^2_w
// into the F^2 part of the factor's template.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/digraph.hpp"
#include "obk/factor.hpp"
#include "obk/nibble.hpp"
#include "obk/rng.hpp"
#include "obk/skeleton.hpp"
#include "obk/weights.hpp"
#include "obk/wheel.hpp"

namespace obk {

struct ApproxOptions {
  double eps = 0.0;
  std::optional<double> bad_c;  // defaults to n^-0.1
  std::optional<double> bad_k;  // defaults to d^-1/3
  int rounds = 100;
  double leave_target = 0.0;
  NibbleOptions nibble;
  std::size_t edge_cap = 2'000'000;
  bool drop_stuck = false;  // unplaceable pieces go back to the leftovers instead of failing
};

// A host cycle (closing arc implied) or host path.
struct HostPiece {
  bool path = false;
  std::vector<int> verts;
  std::vector<int> wheels;  // indices into ApproxResult::wheels
};

struct StuckPiece {
  int hub = 0;
  HostPiece piece;
};

struct ApproxResult {
  std::vector<WheelCopy> wheels;              // matched wheels that were kept
  std::vector<std::vector<HostPiece>> G2w;    // per hub
  std::vector<char> valid;                    // per hub, the template part is a valid subfactor
  Digraph G2_minus;
  AuxiliaryDigraph J2_minus;
  int max_deg_G2_minus = 0, max_deg_J2_minus = 0;
  int bad_arcs = 0, close_k_dropped = 0;
  std::size_t hyperedges = 0;
  MatchingResult matching;
  int dropped_cycles = 0;                     // c-cycles with no free c-cycle left in F^2_w
  std::vector<StuckPiece> stuck;
  bool ok() const { return stuck.empty(); }
};

namespace detail {

inline std::vector<Arc> piece_arcs(const HostPiece& p) {
  std::vector<Arc> out;
  for (std::size_t i = 0; i + 1 < p.verts.size(); ++i) out.push_back({p.verts[i], p.verts[i + 1]});
  if (!p.path) out.push_back({p.verts.back(), p.verts.front()});
  return out;
}

inline int max_degree(const Digraph& g) {
  int m = 0;
  for (int v = 0; v < g.n(); ++v) m = std::max({m, g.out_degree(v), g.in_degree(v)});
  return m;
}

// Template coordinates of F'_w and F^2_w for the validity test.
inline bool skeleton_valid(const FactorSkeleton& sk) {
  std::vector<Arc> fprime;
  for (int a = 0; a < sk.n(); ++a)
    if (!sk.in_f1(a) && sk.phase(a) == Phase::Approx) fprime.push_back({a, sk.next(a)});
  RealizedPiece f2;
  for (const auto& r : sk.runs([&](int a) { return !sk.in_f1(a); })) {
    if (r.closed) f2.cycles.push_back(r.verts);
    else f2.paths.push_back(r.verts);
  }
  return is_valid_subfactor(fprime, f2);
}

// Draws one host piece into the free F^2 arcs of the template.
inline bool allocate_piece(FactorSkeleton& sk, const HostPiece& p) {
  auto free2 = [&](int a) { return !sk.in_f1(a) && sk.phase(a) == Phase::Unassigned; };
  auto runs = sk.runs(free2);
  if (!p.path) {
    int c = static_cast<int>(p.verts.size());
    for (const auto& r : runs) {
      if (!r.closed || static_cast<int>(r.verts.size()) != c) continue;
      for (int i = 0; i < c; ++i) sk.map(r.verts[i], p.verts[i]);
      sk.claim(r.verts, true, Phase::Approx);
      return true;
    }
    return false;
  }
  int arcs = static_cast<int>(p.verts.size()) - 1;
  // Ends of F^2 paths first: the first free arc after an F^1 arc (or the last before one).
  auto is_f2_end_start = [&](const TemplateRun& r) { return !r.closed && sk.in_f1(sk.prev(r.verts.front())); };
  auto is_f2_end_end = [&](const TemplateRun& r) { return !r.closed && sk.in_f1(r.verts.back()); };
  std::optional<std::vector<int>> spot;
  for (const auto& r : runs) {
    if (is_f2_end_start(r) && (spot = place_in_run(r, arcs, Placement::AtStart))) break;
    if (is_f2_end_end(r) && (spot = place_in_run(r, arcs, Placement::AtEnd))) break;
  }
  if (!spot) {
    // Best fit among the remaining room.
    int best = -1;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (!place_in_run(runs[i], arcs, Placement::Interior)) continue;
      if (best < 0 || runs[i].num_arcs() < runs[best].num_arcs()) best = static_cast<int>(i);
    }
    if (best >= 0) spot = place_in_run(runs[best], arcs, Placement::Interior);
  }
  if (!spot) return false;
  for (int i = 0; i <= arcs; ++i)
    if (!sk.can_map((*spot)[i], p.verts[i])) return false;
  for (int i = 0; i <= arcs; ++i) sk.map((*spot)[i], p.verts[i]);
  sk.claim(*spot, false, Phase::Approx);
  return true;
}

}  // namespace detail

// J2 and G2 are the second auxiliary digraph and host part; scheme is the
// part-2 weight scheme.  With skeletons (one per hub) every G^2_w is drawn
// into F^2_w; without them the pieces are reported as matched.
inline ApproxResult approx_decompose(const AuxiliaryDigraph& J2, const Digraph& G2, const WeightScheme& scheme,
                                     std::vector<FactorSkeleton>* skeletons, std::uint64_t seed,
                                     const ApproxOptions& opt = {}) {
  const int n = J2.nv(), W = J2.nw();
  if (G2.n() != n) throw std::invalid_argument("approx_decompose: J_2 and G_2 disagree on n");
  if (skeletons && static_cast<int>(skeletons->size()) != W)
    throw std::invalid_argument("approx_decompose: one skeleton per hub is required");
  ApproxResult res;
  res.G2w.assign(W, {});
  res.valid.assign(W, 1);
  if (W == 0) {
    res.G2_minus = G2;
    res.J2_minus = J2;
    res.max_deg_G2_minus = detail::max_degree(G2);
    return res;
  }
  double bad_c = opt.bad_c.value_or(std::pow(static_cast<double>(n), -0.1));
  double bad_k = opt.bad_k.value_or(scheme.d > 0 ? std::pow(static_cast<double>(scheme.d), -1.0 / 3) : 0.0);

  AuxiliaryDigraph jf(n, W);
  for (const auto& a : J2.arcs()) {
    if (J2.is_hub(a.v)) {
      int w = a.v - n;
      bool bad = (a.colour >= 3 && scheme.p_wc[w][a.colour] < bad_c) || (a.colour == kColourK && scheme.p_wK[w] < bad_k);
      if (bad) {
        ++res.bad_arcs;
        continue;
      }
    } else if (a.colour == kColourK && scheme.d > 0 && cyclic_distance(n, a.u, a.v) < 3 * scheme.d) {
      ++res.close_k_dropped;
      continue;
    }
    jf.add(a);
  }

  auto h = build_wheel_hypergraph(jf, scheme, {opt.eps, opt.edge_cap});
  res.hyperedges = h.edges.size();
  std::vector<int> matched;
  if (!h.edges.empty()) {
    res.matching = nibble_matching(h, opt.leave_target, opt.rounds, derive_seed(seed, {tag(Stream::Approx), 1}), opt.nibble);
    matched = res.matching.edges;
  }

  // Per hub: plain wheels give host cycles, K-wheels decode into paths.
  CyclicOrder ord(n);
  std::vector<std::vector<int>> plain_at(W), special_at(W);
  for (int e : matched) {
    const auto& wc = *h.edges[e].wheel;
    (wc.tmpl.kind == WheelKind::Special ? special_at : plain_at)[wc.hub - n].push_back(e);
  }
  std::vector<char> keep(h.edges.size(), 0);
  for (int w = 0; w < W; ++w) {
    std::vector<HostPiece> pieces;
    for (int e : plain_at[w]) pieces.push_back({false, h.edges[e].wheel->rim, {e}});
    if (!special_at[w].empty()) {
      std::vector<ColouredCycle> fam;
      std::vector<int> end_owner(n, -1);
      for (int e : special_at[w]) {
        const auto& wc = *h.edges[e].wheel;
        ColouredCycle cyc{wc.rim, std::vector<int>(wc.rim.size(), kColour0)};
        cyc.colours[wc.tmpl.c - 2] = kColourK;
        end_owner[wc.rim.back()] = e;
        fam.push_back(std::move(cyc));
      }
      for (auto& p : twist_decode(fam, ord)) {
        HostPiece hp{true, p.verts, {}};
        for (int s = 0; s + 8 <= p.num_arcs(); s += 8) hp.wheels.push_back(end_owner[p.verts[s]]);
        pieces.push_back(std::move(hp));
      }
    }
    // Cycles first, then longer paths first.
    std::stable_sort(pieces.begin(), pieces.end(), [](const HostPiece& a, const HostPiece& b) {
      if (a.path != b.path) return !a.path;
      return a.verts.size() > b.verts.size();
    });
    for (auto& p : pieces) {
      bool placed = !skeletons || detail::allocate_piece((*skeletons)[w], p);
      if (!placed) {
        if (!p.path) {
          ++res.dropped_cycles;
          continue;
        }
        if (!opt.drop_stuck) res.stuck.push_back({w, p});
        continue;
      }
      for (int e : p.wheels) keep[e] = 1;
      res.G2w[w].push_back(p);
    }
    if (skeletons) res.valid[w] = detail::skeleton_valid((*skeletons)[w]);
  }

  // Leftovers: arcs of G_2 and of J_2 not covered by a kept wheel.
  std::multiset<std::tuple<int, int, int>> used;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (!keep[e]) continue;
    res.wheels.push_back(*h.edges[e].wheel);
    for (const auto& a : h.edges[e].wheel->arcs()) used.insert({a.u, a.v, a.colour});
  }
  std::map<int, int> renumber;
  for (std::size_t e = 0, k = 0; e < h.edges.size(); ++e)
    if (keep[e]) renumber[static_cast<int>(e)] = static_cast<int>(k++);
  for (auto& ps : res.G2w)
    for (auto& p : ps)
      for (int& e : p.wheels) e = renumber.at(e);

  res.G2_minus = G2;
  for (const auto& ps : res.G2w)
    for (const auto& p : ps)
      for (const Arc& a : detail::piece_arcs(p)) res.G2_minus.remove_arc(a.u, a.v);
  res.J2_minus = AuxiliaryDigraph(n, W);
  for (const auto& a : J2.arcs()) {
    auto it = used.find({a.u, a.v, a.colour});
    if (it != used.end()) {
      used.erase(it);
      continue;
    }
    res.J2_minus.add(a);
  }
  res.max_deg_G2_minus = detail::max_degree(res.G2_minus);
  std::vector<int> out(J2.size(), 0), in(J2.size(), 0);
  for (const auto& a : res.J2_minus.arcs()) {
    ++out[a.u];
    ++in[a.v];
  }
  for (int v = 0; v < J2.size(); ++v) res.max_deg_J2_minus = std::max({res.max_deg_J2_minus, out[v], in[v]});
  return res;
}

}  // namespace obk

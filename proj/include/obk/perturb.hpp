#pragma once

// Perturbing J_1 before the exact step.  The V-part is aligned with the host
// G'_1 left after the earlier phases, spokes are made to match the vertex sets
// the exact step must cover, and colours are shuffled until the wheel
// divisibility conditions hold.  In the long-cycle case this takes
// recolourings, two kinds of three-vertex swaps and a cover of the remaining
// close arcs by K-wheels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/digraph.hpp"
#include "obk/factor.hpp"
#include "obk/rng.hpp"
#include "obk/wheel.hpp"
#include "obk/wheel_search.hpp"

namespace obk {

struct PerturbOptions {
  int d = 0;                // close arcs have cyclic distance < 3d
  int recolour_cap = -1;    // S: vertices recoloured more often are avoided; -1 disables
  int swap_cap = -1;        // S': times a vertex may serve as z
  int cover_cap = -1;       // rim uses of a vertex in the cover E
  int change_cap = -1;      // per-vertex bound on logged changes, checked at the end
  long long cover_budget = 200'000;  // search nodes per close arc
  long long neutral_moves = 10'000;  // swaps that move a surplus without meeting a deficit
  std::uint64_t seed = 0;
};

struct ArcChange {
  enum Kind { Added, Deleted, Recoloured } kind = Added;
  ColouredArc arc;      // the arc after the change (before it for deletions)
  ColouredArc before;   // recolourings: the arc it replaced
  std::string step;
};

struct PerturbationState {
  CaseTag tag;
  AuxiliaryDigraph P;        // after balancing
  AuxiliaryDigraph P_prime;  // P minus the cover E
  std::vector<WheelCopy> E;
  std::vector<ArcChange> log;
  std::vector<int> changes;  // per vertex of V: log entries with an end there
  std::vector<int> recoloured, z_used, cover_used;
  long long delta_initial = 0, delta = 0;
  int swaps_i = 0, swaps_ii = 0, neutral_swaps = 0, recolourings = 0;
  std::vector<ColouredArc> uncovered;  // close arcs the cover could not reach
  DivisibilityReport divisibility;
  bool ok = false;
  std::string stage;  // failing step, empty on success
  std::string error;

  int max_change() const { return changes.empty() ? 0 : *std::max_element(changes.begin(), changes.end()); }
};

// Sum over v of |d+_K(v,V) - d+_K(v,W)| + |d-_K(v,V) - d+_K(v,W)|.
inline long long delta_prime(const AuxiliaryDigraph& j) {
  std::vector<int> a(j.nv(), 0), b(j.nv(), 0), k(j.nv(), 0);
  for (const auto& e : j.arcs()) {
    if (e.colour != kColourK || j.is_hub(e.u)) continue;
    if (j.is_hub(e.v)) {
      ++k[e.u];
    } else {
      ++a[e.u];
      ++b[e.v];
    }
  }
  long long s = 0;
  for (int v = 0; v < j.nv(); ++v) s += std::abs(a[v] - k[v]) + std::abs(b[v] - k[v]);
  return s;
}

namespace detail {

// A set of coloured arcs with per-colour neighbour lists.
class ArcStore {
 public:
  ArcStore(int nv, int nw) : nv_(nv), nw_(nw), out_(nv + nw), in_(nv + nw) {}
  explicit ArcStore(const AuxiliaryDigraph& j) : ArcStore(j.nv(), j.nw()) {
    for (const auto& a : j.arcs()) insert(a);
  }

  bool has(int u, int v, int c) const { return set_.count({u, v, c}) > 0; }
  bool insert(const ColouredArc& a) {
    if (!set_.insert({a.u, a.v, a.colour}).second) return false;
    out_[a.u][a.colour].insert(a.v);
    in_[a.v][a.colour].insert(a.u);
    return true;
  }
  bool erase(const ColouredArc& a) {
    if (!set_.erase({a.u, a.v, a.colour})) return false;
    out_[a.u][a.colour].erase(a.v);
    in_[a.v][a.colour].erase(a.u);
    return true;
  }
  const std::set<int>& out(int u, int c) const {
    auto it = out_[u].find(c);
    return it == out_[u].end() ? empty_ : it->second;
  }
  const std::set<int>& in(int v, int c) const {
    auto it = in_[v].find(c);
    return it == in_[v].end() ? empty_ : it->second;
  }
  std::vector<ColouredArc> arcs() const {
    std::vector<ColouredArc> v;
    for (const auto& [u, w, c] : set_) v.push_back({u, w, c});
    return v;
  }
  AuxiliaryDigraph digraph() const {
    AuxiliaryDigraph j(nv_, nw_);
    for (const auto& [u, w, c] : set_) j.add(u, w, c);
    return j;
  }
  int nv() const { return nv_; }
  bool is_hub(int x) const { return x >= nv_; }

 private:
  int nv_, nw_;
  std::set<std::tuple<int, int, int>> set_;
  std::vector<std::map<int, std::set<int>>> out_, in_;
  std::set<int> empty_;
};

class Perturber {
 public:
  Perturber(const AuxiliaryDigraph& j, const PerturbOptions& opt)
      : n_(j.nv()), W_(j.nw()), opt_(opt), P_(j), ord_(j.nv()) {
    st_.changes.assign(n_, 0);
    st_.recoloured.assign(n_, 0);
    st_.z_used.assign(n_, 0);
    st_.cover_used.assign(n_, 0);
  }

  int succ(int x) const { return succ_pos(n_, x); }
  int pred(int x) const { return pred_pos(n_, x); }
  int dist(int x, int y) const { return cyclic_distance(n_, x, y); }

  void touch(const ColouredArc& a) {
    if (!P_.is_hub(a.u)) ++st_.changes[a.u];
    if (!P_.is_hub(a.v)) ++st_.changes[a.v];
  }
  void add(const ColouredArc& a, const char* step) {
    if (!P_.insert(a)) return;
    touch(a);
    st_.log.push_back({ArcChange::Added, a, a, step});
  }
  void del(const ColouredArc& a, const char* step) {
    if (!P_.erase(a)) return;
    touch(a);
    st_.log.push_back({ArcChange::Deleted, a, a, step});
  }
  void recolour(const ColouredArc& from, const ColouredArc& to, const char* step) {
    P_.erase(from);
    P_.insert(to);
    touch(from);
    if (to.u != from.u || to.v != from.v) touch(to);
    st_.log.push_back({ArcChange::Recoloured, to, from, step});
  }

  // J'_1[V] becomes G'_1 under twisting; surplus arcs go, missing ones come in colour 0.
  void align(const Digraph& g) {
    std::set<std::pair<int, int>> seen;
    for (const auto& a : P_.arcs()) {
      if (P_.is_hub(a.u) || P_.is_hub(a.v)) continue;
      Arc h = a.colour == kColour0 || a.colour == kColourK ? twist_decode_arc(a, ord_) : Arc{-1, -1};
      if (h.u < 0 || !g.has_arc(h.u, h.v) || !seen.insert({h.u, h.v}).second) del(a, "align");
    }
    for (const Arc& h : g.arcs())
      if (!seen.count({h.u, h.v})) add({h.u, h.v, kColour0}, "align");
  }

  // Spokes into w come from exactly `from`; those in `k_from` carry colour K.
  void set_spokes(int w, const std::vector<char>& from, const std::vector<char>* k_from) {
    int hub = n_ + w;
    std::vector<char> have(n_, 0);
    std::vector<ColouredArc> spokes;
    for (const auto& [c, us] : in_lists(hub))
      for (int u : us) spokes.push_back({u, hub, c});
    for (const auto& a : spokes) {
      if (!from[a.u] || have[a.u]) {
        del(a, "spokes");
        continue;
      }
      have[a.u] = 1;
      if (k_from) {
        bool want_k = (*k_from)[a.u];
        if (want_k && a.colour != kColourK) recolour(a, {a.u, hub, kColourK}, "spokes");
        if (!want_k && a.colour == kColourK) recolour(a, {a.u, hub, kColour0}, "spokes");
      }
    }
    for (int x = 0; x < n_; ++x)
      if (from[x] && !have[x]) add({x, hub, k_from && (*k_from)[x] ? kColourK : kColour0}, "spokes");
  }

  std::vector<std::pair<int, std::vector<int>>> in_lists(int v) const {
    std::vector<std::pair<int, std::vector<int>>> out;
    std::set<int> colours;
    for (const auto& a : P_.arcs())
      if (a.v == v) colours.insert(a.colour);
    for (int c : colours) {
      const auto& s = P_.in(v, c);
      out.push_back({c, std::vector<int>(s.begin(), s.end())});
    }
    return out;
  }

  // K V-arcs (x, y) with d(x, y) < 3d become (x, y^+) in colour 0.
  void detwist_close() {
    for (const auto& a : P_.arcs())
      if (!P_.is_hub(a.v) && a.colour == kColourK && dist(a.u, a.v) < 3 * opt_.d)
        recolour(a, {a.u, succ(a.v), kColour0}, "detwist");
  }

  bool in_S(int x) const { return opt_.recolour_cap >= 0 && st_.recoloured[x] >= opt_.recolour_cap; }

  void degrees(std::vector<int>& a, std::vector<int>& b, std::vector<int>& k) const {
    a.assign(n_, 0);
    b.assign(n_, 0);
    k.assign(n_, 0);
    for (const auto& e : P_.arcs()) {
      if (e.colour != kColourK) continue;
      if (P_.is_hub(e.v)) {
        ++k[e.u];
      } else {
        ++a[e.u];
        ++b[e.v];
      }
    }
  }

  // |P^0[V]| = |P^0[V,W]| by moving single V-arcs between colours 0 and K.
  bool equalize() {
    for (;;) {
      long long zv = 0, zw = 0;
      for (const auto& e : P_.arcs())
        if (e.colour == kColour0) (P_.is_hub(e.v) ? zw : zv) += 1;
      if (zv == zw) return true;
      std::vector<int> a, b, k;
      degrees(a, b, k);
      ColouredArc best{}, to{};
      int best_score = 1 << 30;
      for (const auto& e : P_.arcs()) {
        if (P_.is_hub(e.v) || in_S(e.u)) continue;
        if (zv > zw && e.colour == kColour0) {
          int y = pred(e.v);
          if (y == e.u || dist(e.u, y) < 3 * opt_.d || in_S(y)) continue;
          // Raises d+_K at e.u and d-_K at y.
          int score = (a[e.u] >= k[e.u]) + (b[y] >= k[y]);
          if (score < best_score) {
            best_score = score;
            best = e;
            to = {e.u, y, kColourK};
          }
        } else if (zv < zw && e.colour == kColourK) {
          if (in_S(e.v)) continue;
          int score = (a[e.u] <= k[e.u]) + (b[e.v] <= k[e.v]);
          if (score < best_score) {
            best_score = score;
            best = e;
            to = {e.u, succ(e.v), kColour0};
          }
        }
      }
      if (best_score == 1 << 30) return false;
      recolour(best, to, "equalize");
      ++st_.recolourings;
      ++st_.recoloured[best.u];
      ++st_.recoloured[to.v];
      if (best.v != to.v) ++st_.recoloured[best.v];
    }
  }

  bool z_ok(int z, int x, int y) const {
    int far = 3 * opt_.d + 2;
    if (dist(x, z) < far || dist(y, z) < far) return false;
    return opt_.swap_cap < 0 || st_.z_used[z] < opt_.swap_cap;
  }

  // Type (i): zx in P^K and zy^+ in P^0 become zx^+ in P^0 and zy in P^K.
  bool swap_in(int x, int y) {
    for (int z : P_.in(x, kColourK)) {
      if (P_.is_hub(z) || !P_.has(z, succ(y), kColour0) || !z_ok(z, x, y)) continue;
      recolour({z, x, kColourK}, {z, succ(x), kColour0}, "swap-i");
      recolour({z, succ(y), kColour0}, {z, y, kColourK}, "swap-i");
      ++st_.z_used[z];
      ++st_.swaps_i;
      return true;
    }
    return false;
  }

  // Type (ii): xz in P^K and yz^+ in P^0 become yz in P^K and xz^+ in P^0.
  bool swap_out(int x, int y) {
    for (int z : P_.out(x, kColourK)) {
      if (P_.is_hub(z) || !P_.has(y, succ(z), kColour0) || !z_ok(z, x, y)) continue;
      recolour({x, z, kColourK}, {x, succ(z), kColour0}, "swap-ii");
      recolour({y, succ(z), kColour0}, {y, z, kColourK}, "swap-ii");
      ++st_.z_used[z];
      ++st_.swaps_ii;
      return true;
    }
    return false;
  }

  // Repeats swaps until Delta' = 0.  When no swap meets a deficit, a swap
  // onto a balanced vertex moves the surplus instead (at most neutral_moves
  // times); false when neither applies.
  bool balance() {
    Rng rng(opt_.seed, {tag(Stream::Perturb), 1});
    long long neutral = 0;
    for (;;) {
      std::vector<int> a, b, k;
      degrees(a, b, k);
      bool fixed_one = false, any = false;
      std::vector<int> stuck_x[2];
      for (int pass = 0; pass < 2 && !fixed_one; ++pass) {
        const auto& deg = pass == 0 ? b : a;
        std::vector<int> xs, ys;
        for (int v = 0; v < n_; ++v) {
          if (deg[v] > k[v]) xs.push_back(v);
          if (deg[v] < k[v]) ys.push_back(v);
        }
        if (xs.empty() && ys.empty()) continue;
        any = true;
        std::stable_sort(xs.begin(), xs.end(), [&](int p, int q) { return deg[p] - k[p] > deg[q] - k[q]; });
        std::stable_sort(ys.begin(), ys.end(), [&](int p, int q) { return deg[p] - k[p] < deg[q] - k[q]; });
        for (int x : xs) {
          for (int y : ys)
            if (pass == 0 ? swap_in(x, y) : swap_out(x, y)) {
              fixed_one = true;
              break;
            }
          if (fixed_one) break;
        }
        stuck_x[pass] = xs;
      }
      if (!any) return true;
      if (fixed_one) continue;
      if (neutral >= opt_.neutral_moves) return false;
      bool moved = false;
      for (int pass = 0; pass < 2 && !moved; ++pass) {
        const auto& deg = pass == 0 ? b : a;
        auto xs = stuck_x[pass];
        rng.shuffle(xs);
        std::vector<int> ys;
        for (int v = 0; v < n_; ++v)
          if (deg[v] == k[v]) ys.push_back(v);
        rng.shuffle(ys);
        for (int x : xs) {
          for (int y : ys)
            if (pass == 0 ? swap_in(x, y) : swap_out(x, y)) {
              moved = true;
              break;
            }
          if (moved) break;
        }
      }
      if (!moved) return false;
      ++neutral;
      ++st_.neutral_swaps;
    }
  }

  // Greedy K-wheel cover of colour-0 V-arcs between close vertices.
  void cover_close() {
    ArcStore rest = P_;
    st_.P_prime = rest.digraph();
    if (opt_.d <= 0) return;
    auto t = WheelTemplate::special(8);
    std::vector<ColouredArc> pins;
    for (const auto& e : t.arcs())
      if (e.v != t.c && e.colour == kColour0) pins.push_back(e);
    for (const auto& a : P_.arcs()) {
      if (P_.is_hub(a.v) || a.colour != kColour0 || dist(a.u, a.v) >= 3 * opt_.d) continue;
      if (!rest.has(a.u, a.v, a.colour)) continue;  // covered by an earlier wheel
      AuxiliaryDigraph rj = rest.digraph();
      ArcIndex ix(rj);
      WheelSearch ws(ix, t, 0);
      bool found = false;
      long long nodes = 0;
      for (const auto& pin : pins) {
        if (!ws.start(pin, a)) continue;
        if (!cap_ok(a.u) || !cap_ok(a.v)) break;
        if (dfs(ws, 0, nodes)) {
          found = true;
          break;
        }
      }
      if (!found) {
        st_.uncovered.push_back(a);
        continue;
      }
      WheelCopy wc{t, std::vector<int>(ws.map.begin(), ws.map.begin() + t.c), ws.map[t.c]};
      for (const auto& e : wc.arcs()) rest.erase(e);
      for (int x : wc.rim) ++st_.cover_used[x];
      st_.E.push_back(wc);
    }
    st_.P_prime = rest.digraph();
  }

  bool cap_ok(int x) const { return opt_.cover_cap < 0 || st_.cover_used[x] < opt_.cover_cap; }

  bool dfs(WheelSearch& ws, std::size_t level, long long& nodes) {
    if (++nodes > opt_.cover_budget) return false;
    if (level == ws.order.size()) return true;
    int tv = ws.order[level];
    std::vector<int> cand;
    ws.candidates(tv, cand);
    for (int x : cand) {
      if (tv != ws.t.c && !cap_ok(x)) continue;
      ws.map[tv] = x;
      if (dfs(ws, level + 1, nodes)) return true;
      ws.map[tv] = -1;
      if (nodes > opt_.cover_budget) return false;
    }
    return false;
  }

  int n_, W_;
  PerturbOptions opt_;
  ArcStore P_;
  CyclicOrder ord_;
  PerturbationState st_;
};

inline std::string degree_premise(const Digraph& g, const std::vector<std::vector<int>>& Z, int shift) {
  int n = g.n(), W = static_cast<int>(Z.size());
  std::vector<int> zc(n, 0);
  for (const auto& z : Z)
    for (int x : z) ++zc[x];
  for (int x = 0; x < n; ++x) {
    int want = W - shift - zc[x];
    if (g.out_degree(x) != want || g.in_degree(x) != want)
      return "degree premise fails at vertex " + std::to_string(x) + ": d+ = " + std::to_string(g.out_degree(x)) +
             ", d- = " + std::to_string(g.in_degree(x)) + ", expected " + std::to_string(want);
  }
  return {};
}

inline void finish(PerturbationState& st, const WheelTemplate& t, const PerturbOptions& opt) {
  st.divisibility = divisibility_closed_form(st.P_prime, std::vector<WheelTemplate>{t});
  if (!st.divisibility.ok) {
    st.stage = "divisibility";
    st.error = st.divisibility.summary();
    return;
  }
  if (opt.change_cap >= 0 && st.max_change() > opt.change_cap) {
    st.stage = "change-cap";
    st.error = "a vertex takes " + std::to_string(st.max_change()) + " changes, cap " + std::to_string(opt.change_cap);
    return;
  }
  st.ok = true;
}

}  // namespace detail

// Short-cycle case: ell-wheels with N^-(w) = V \ Z_w.
inline PerturbationState build_perturbation_ell(const AuxiliaryDigraph& J1, const Digraph& G1p,
                                                const std::vector<std::vector<int>>& Z, int ell,
                                                const PerturbOptions& opt = {}) {
  const int n = J1.nv(), W = J1.nw();
  detail::Perturber pb(J1, opt);
  auto& st = pb.st_;
  st.tag = CaseTag::case_ell(ell);
  if (static_cast<int>(Z.size()) != W || G1p.n() != n) throw std::invalid_argument("build_perturbation: size mismatch");
  for (int w = 0; w < W; ++w)
    if ((n - static_cast<int>(Z[w].size())) % ell != 0) {
      st.stage = "premise";
      st.error = "ell does not divide n - |Z_w| for hub " + std::to_string(w);
      return st;
    }
  if (auto e = detail::degree_premise(G1p, Z, 0); !e.empty()) {
    st.stage = "premise";
    st.error = e;
    return st;
  }
  pb.align(G1p);
  for (int w = 0; w < W; ++w) {
    std::vector<char> from(n, 1);
    for (int x : Z[w]) from[x] = 0;
    pb.set_spokes(w, from, nullptr);
  }
  // Only colours 0 and ell survive; K arcs go back to their host arcs.
  for (const auto& a : pb.P_.arcs()) {
    if (J1.is_hub(a.v)) {
      if (a.colour != kColour0 && a.colour != ell) pb.recolour(a, {a.u, a.v, kColour0}, "strip");
    } else if (a.colour == kColourK) {
      pb.recolour(a, {a.u, succ_pos(n, a.v), kColour0}, "strip");
    }
  }
  st.delta_initial = st.delta = 0;
  for (int w = 0; w < W; ++w) {
    int hub = n + w;
    const auto& zero = pb.P_.in(hub, kColour0);
    const auto& col = pb.P_.in(hub, ell);
    int total = static_cast<int>(zero.size() + col.size());
    int want = total / ell, have = static_cast<int>(col.size());
    std::vector<int> pool;
    if (have > want) pool.assign(col.begin(), col.end());
    else pool.assign(zero.begin(), zero.end());
    std::stable_sort(pool.begin(), pool.end(), [&](int p, int q) { return st.changes[p] < st.changes[q]; });
    for (int i = 0; i < std::abs(have - want); ++i) {
      int x = pool[i];
      if (have > want) pb.recolour({x, hub, ell}, {x, hub, kColour0}, "recolour");
      else pb.recolour({x, hub, kColour0}, {x, hub, ell}, "recolour");
      ++st.recolourings;
    }
  }
  st.P = pb.P_.digraph();
  st.P_prime = st.P;
  detail::finish(st, WheelTemplate::plain(ell), opt);
  return st;
}

// Long-cycle case.  Y1[w] lists the intervals of Y^1_w, t1 = t_1.
inline PerturbationState build_perturbation_k(const AuxiliaryDigraph& J1, const Digraph& G1p,
                                              const std::vector<std::vector<int>>& Z,
                                              const std::vector<std::vector<Interval>>& Y1, int t1,
                                              const PerturbOptions& opt = {}) {
  const int n = J1.nv(), W = J1.nw();
  detail::Perturber pb(J1, opt);
  auto& st = pb.st_;
  st.tag = CaseTag::case_k();
  if (static_cast<int>(Z.size()) != W || static_cast<int>(Y1.size()) != W || G1p.n() != n)
    throw std::invalid_argument("build_perturbation: size mismatch");
  std::vector<std::vector<char>> from(W, std::vector<char>(n, 1)), kfrom(W, std::vector<char>(n, 0));
  for (int w = 0; w < W; ++w) {
    std::vector<char> z(n, 0);
    for (int x : Z[w]) z[x] = 1;
    long long ylen = 0;
    for (const auto& iv : Y1[w]) {
      int s = interval_successor(n, iv);
      for (int q = 0; q < iv.length; ++q) {
        int x = (iv.start + q) % n;
        if (z[x]) {
          st.stage = "premise";
          st.error = "Z_w meets Y^1_w for hub " + std::to_string(w);
          return st;
        }
        kfrom[w][x] = 1;
      }
      if (z[s]) {
        st.stage = "premise";
        st.error = "Z_w meets (Y^1_w)^+ for hub " + std::to_string(w);
        return st;
      }
      from[w][s] = 0;
      ylen += iv.length;
    }
    for (int x : Z[w]) from[w][x] = 0;
    if (8 * ylen != n - static_cast<long long>(Z[w].size()) - static_cast<long long>(Y1[w].size())) {
      st.stage = "premise";
      st.error = "8|Y^1_w| != n - |Z_w| - |(Y^1_w)^+| for hub " + std::to_string(w);
      return st;
    }
  }
  if (auto e = detail::degree_premise(G1p, Z, t1); !e.empty()) {
    st.stage = "premise";
    st.error = e;
    return st;
  }
  pb.align(G1p);
  for (int w = 0; w < W; ++w) pb.set_spokes(w, from[w], &kfrom[w]);
  pb.detwist_close();
  if (!pb.equalize()) {
    st.stage = "equalize";
    st.error = "no admissible recolouring left";
    st.P = st.P_prime = pb.P_.digraph();
    return st;
  }
  st.delta_initial = delta_prime(pb.P_.digraph());
  bool balanced = pb.balance();
  st.P = pb.P_.digraph();
  st.delta = delta_prime(st.P);
  if (!balanced) {
    st.stage = "balance";
    st.error = "no swap reduces the imbalance; Delta' = " + std::to_string(st.delta);
    st.P_prime = st.P;
    return st;
  }
  pb.cover_close();
  if (!st.uncovered.empty()) {
    st.stage = "cover";
    st.error = std::to_string(st.uncovered.size()) + " close arcs left uncovered";
    return st;
  }
  detail::finish(st, WheelTemplate::special(8), opt);
  return st;
}

struct BalanceResult {
  bool ok = false;
  long long before = 0, after = 0;
  int swaps_i = 0, swaps_ii = 0, neutral_swaps = 0;
};

// The swap phase alone, on a digraph whose arc counts already match.
inline BalanceResult balance_delta_prime(AuxiliaryDigraph& j, const PerturbOptions& opt = {}) {
  detail::Perturber pb(j, opt);
  BalanceResult r;
  r.before = delta_prime(j);
  r.ok = pb.balance();
  j = pb.P_.digraph();
  r.after = delta_prime(j);
  r.swaps_i = pb.st_.swaps_i;
  r.swaps_ii = pb.st_.swaps_ii;
  r.neutral_swaps = pb.st_.neutral_swaps;
  return r;
}

struct CloseCover {
  std::vector<WheelCopy> E;
  std::vector<ColouredArc> uncovered;
  AuxiliaryDigraph rest;  // the input minus the arcs of E
};

// The cover step alone.
inline CloseCover close_arc_cover(const AuxiliaryDigraph& j, const PerturbOptions& opt) {
  detail::Perturber pb(j, opt);
  pb.cover_close();
  return {pb.st_.E, pb.st_.uncovered, pb.st_.P_prime};
}

}  // namespace obk

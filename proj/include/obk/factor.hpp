#pragma once

// One-factors and two-factors, case grouping, the F^1/F^2 split of each factor
// and the probability plan that drives the randomized partition.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/digraph.hpp"

namespace obk {

// A factor as a multiset of cycle lengths, optionally with an explicit
// realization as vertex-disjoint oriented cycles.
struct OneFactorSpec {
  int n = 0;
  std::vector<int> cycles;
  bool directed = true;
  std::vector<std::vector<int>> realization;

  int min_length() const { return directed ? 2 : 3; }

  void validate() const {
    long long sum = 0;
    for (int c : cycles) {
      if (c < min_length())
        throw std::invalid_argument(directed ? "directed cycles must have length >= 2"
                                             : "undirected cycles must have length >= 3");
      sum += c;
    }
    if (sum != n) throw std::invalid_argument("cycle lengths must sum to n");
    if (realization.empty()) return;
    std::vector<int> seen(n, 0), lens;
    for (const auto& cyc : realization) {
      lens.push_back(static_cast<int>(cyc.size()));
      for (int v : cyc) {
        if (v < 0 || v >= n || seen[v]++) throw std::invalid_argument("realization is not a spanning disjoint union");
      }
    }
    auto a = cycles, b = lens;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b || std::count(seen.begin(), seen.end(), 1) != n)
      throw std::invalid_argument("realization does not match the cycle type");
  }

  int count(int len) const { return static_cast<int>(std::count(cycles.begin(), cycles.end(), len)); }
};

inline std::vector<int> sorted_type(std::vector<int> c) {
  std::sort(c.begin(), c.end());
  return c;
}

// ---------------------------------------------------------------------------
// Case tags and grouping.

struct CaseTag {
  enum Kind { K, Ell } kind = K;
  int ell = 0;  // cycle length for Ell
  static CaseTag case_k() { return {K, 0}; }
  static CaseTag case_ell(int l) { return {Ell, l}; }
  std::string name() const { return kind == K ? "CaseK" : "CaseEll(" + std::to_string(ell) + ")"; }
  friend bool operator==(const CaseTag& a, const CaseTag& b) { return a.kind == b.kind && a.ell == b.ell; }
};

struct CaseThresholds {
  int M = 10;        // long-cycle threshold of Case K
  int M2 = 10;       // lengths scanned for short-cycle groups
  double alpha2 = 0; // groups below alpha2 * n factors are rare
  double alpha1 = 0; // threshold for the mostly-long remainder
  int M1 = 8;        // "long" means length > M1 in the Case K test
};

struct CaseGroup {
  CaseTag tag;
  std::vector<int> members;  // factors decomposed by the case pipeline
  std::vector<int> greedy;   // rare factors removed greedily from this group's part first
};

struct CaseGrouping {
  std::vector<CaseGroup> groups;
  std::vector<std::string> notes;
};

inline double vertices_in_long_cycles(const OneFactorSpec& f, int longer_than) {
  double s = 0;
  for (int c : f.cycles)
    if (c > longer_than) s += c;
  return s;
}

inline CaseGrouping classify_cases(const std::vector<OneFactorSpec>& factors, const CaseThresholds& th) {
  CaseGrouping out;
  if (factors.empty()) return out;
  int n = factors[0].n;
  for (const auto& f : factors)
    if (f.n != n) throw std::invalid_argument("classify_cases: factors on different vertex counts");
  int total = static_cast<int>(factors.size());
  double alpha = static_cast<double>(total) / n;
  double short_floor = std::pow(static_cast<double>(th.M2), -3.0) * n;

  // Short-cycle groups: at least M2^-3 n cycles of length l, fewer of every smaller length.
  std::map<int, std::vector<int>> by_len;
  std::vector<int> rest;  // the mostly-long remainder
  for (int w = 0; w < total; ++w) {
    int chosen = 0;
    for (int l = 3; l <= th.M2; ++l)
      if (factors[w].count(l) >= short_floor) {
        chosen = l;
        break;
      }
    if (chosen) by_len[chosen].push_back(w);
    else rest.push_back(w);
  }
  std::vector<int> common;  // lengths whose group is not rare
  std::vector<int> rare_upto_m1, rare_all;
  for (auto& [l, ws] : by_len) {
    if (ws.size() < th.alpha2 * n) {
      rare_all.insert(rare_all.end(), ws.begin(), ws.end());
      if (l <= th.M1) rare_upto_m1.insert(rare_upto_m1.end(), ws.begin(), ws.end());
    } else {
      common.push_back(l);
    }
  }
  auto in_group = [&](int w, int l) {
    auto it = by_len.find(l);
    return it != by_len.end() && std::find(it->second.begin(), it->second.end(), w) != it->second.end();
  };
  auto in_short_group_upto_m1 = [&](int w) {
    for (auto& [l, ws] : by_len)
      if (l <= th.M1 && std::find(ws.begin(), ws.end(), w) != ws.end()) return true;
    return false;
  };
  // Mostly-long factors; factors already in a short group of length <= M1 stay there.
  std::vector<int> f1;
  for (int w = 0; w < total; ++w)
    if (vertices_in_long_cycles(factors[w], th.M1) >= n / 2.0 && !in_short_group_upto_m1(w)) f1.push_back(w);

  double eta = static_cast<double>(f1.size()) / n;
  if (eta >= alpha / 2) {
    for (int l : common)
      if (l <= th.M1) out.groups.push_back({CaseTag::case_ell(l), by_len[l], {}});
    out.groups.push_back({CaseTag::case_k(), f1, rare_upto_m1});
    // Every factor not yet placed is mostly long, hence already in f1
    // unless it belongs to a short group of length in (M1, M2].
    std::vector<int> placed(total, 0);
    for (auto& g : out.groups) {
      for (int w : g.members) placed[w] = 1;
      for (int w : g.greedy) placed[w] = 1;
    }
    for (int w = 0; w < total; ++w)
      if (!placed[w]) {
        out.groups.back().greedy.push_back(w);
        out.notes.push_back("factor " + std::to_string(w) + " routed to greedy removal in the Case K part");
      }
    return out;
  }
  int lstar = 0;
  double best = -1;
  for (int l : common)
    if (l <= th.M1 && by_len[l].size() > best) {
      best = static_cast<double>(by_len[l].size());
      lstar = l;
    }
  if (!lstar) throw std::runtime_error("classify_cases: no case applies to this factor family");
  if (best / n <= alpha / (2.0 * th.M1)) out.notes.push_back("dominant short group is below alpha/(2 M1)");
  double beta2 = static_cast<double>(rest.size()) / n;
  if (beta2 < th.alpha1) {
    for (int l : common)
      if (l != lstar) out.groups.push_back({CaseTag::case_ell(l), by_len[l], {}});
    std::vector<int> g = rare_all;
    g.insert(g.end(), rest.begin(), rest.end());
    out.groups.push_back({CaseTag::case_ell(lstar), by_len[lstar], g});
  } else {
    for (int l : common)
      if (l != lstar) out.groups.push_back({CaseTag::case_ell(l), by_len[l], {}});
    out.groups.push_back({CaseTag::case_ell(lstar), by_len[lstar], rare_all});
    out.groups.push_back({CaseTag::case_k(), rest, {}});
  }
  (void)in_group;
  return out;
}

// ---------------------------------------------------------------------------
// Splitting F_w = F^1_w + F^2_w.  Sizes are vertex counts; a path with k
// vertices has k - 1 arcs.

struct PieceSpec {
  std::vector<int> cycles;
  std::vector<int> paths;
  int size() const {
    return std::accumulate(cycles.begin(), cycles.end(), 0) + std::accumulate(paths.begin(), paths.end(), 0);
  }
  int count(int len) const { return static_cast<int>(std::count(cycles.begin(), cycles.end(), len)); }
};

struct FactorSplit {
  PieceSpec f1, f2;
  CaseTag tag;
  // In Case K, the index (in the factor's cycle list) of the cycle that was
  // cut, or -1; with the cut position giving the vertex count kept in f1.
  int cut_cycle = -1;
  int cut_kept = 0;
  std::vector<int> f1_index;  // indices of the whole cycles placed in f1
};

struct SplitParams {
  int K = 8;
  int L = 4;
  int n = 0;
};

inline FactorSplit split_factor(const OneFactorSpec& f, CaseTag tag, const SplitParams& p) {
  int n = p.n ? p.n : f.n;
  FactorSplit out;
  out.tag = tag;
  if (tag.kind == CaseTag::Ell) {
    int need = static_cast<int>(std::floor(n / std::pow(static_cast<double>(p.L), 3.0)));
    if (f.count(tag.ell) < need) throw std::invalid_argument("split_factor: factor has too few cycles of length l*");
    int taken = 0;
    for (std::size_t i = 0; i < f.cycles.size(); ++i) {
      int c = f.cycles[i];
      if (c == tag.ell && taken < need) {
        out.f1.cycles.push_back(c);
        out.f1_index.push_back(static_cast<int>(i));
        ++taken;
      } else {
        out.f2.cycles.push_back(c);
      }
    }
    return out;
  }
  double long_vertices = 0;
  for (int c : f.cycles)
    if (c >= p.K) long_vertices += c;
  if (long_vertices < n / 2.0) throw std::invalid_argument("split_factor: fewer than n/2 vertices in long cycles");
  int target = n / 2 + p.K;
  int size = 0;
  std::vector<int> used(f.cycles.size(), 0);
  int last = -1;
  for (std::size_t i = 0; i < f.cycles.size() && size < target; ++i) {
    if (f.cycles[i] < p.K) continue;
    used[i] = 1;
    size += f.cycles[i];
    last = static_cast<int>(i);
  }
  if (size < target) {
    // Not enough long vertices for n/2 + K: keep every long cycle.
    for (std::size_t i = 0; i < f.cycles.size(); ++i) {
      (used[i] ? out.f1.cycles : out.f2.cycles).push_back(f.cycles[i]);
      if (used[i]) out.f1_index.push_back(static_cast<int>(i));
    }
    return out;
  }
  int len = f.cycles[last];
  int p2 = size - target;      // vertices deleted from the last cycle
  int p1 = len - p2;           // vertices of that cycle kept in F'
  bool keep_whole = false, drop = false;
  if (p2 == 0) keep_whole = true;
  else if (p1 < p.K) drop = true;
  else if (p2 < p.K) keep_whole = true;
  for (std::size_t i = 0; i < f.cycles.size(); ++i) {
    if (static_cast<int>(i) == last) continue;
    (used[i] ? out.f1.cycles : out.f2.cycles).push_back(f.cycles[i]);
    if (used[i]) out.f1_index.push_back(static_cast<int>(i));
  }
  if (keep_whole) {
    out.f1.cycles.push_back(len);
    out.f1_index.push_back(last);
  } else if (drop) {
    out.f2.cycles.push_back(len);
  } else {
    out.f1.paths.push_back(p1);
    out.f2.paths.push_back(p2);
    out.cut_cycle = last;
    out.cut_kept = p1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probability plan.

struct PlanParams {
  double eta = 0.05;
  int K = 8;
  int d = 64;
  int s = 1;
  int L = 4;
  double alpha = 0.5;
  int n = 0;
  double floor_exponent = 0.2;
  // Replaces n^-floor_exponent when set.
  std::optional<double> floor;
  double floor_value() const { return floor ? *floor : std::pow(static_cast<double>(n), -floor_exponent); }
};

struct FactorPlan {
  PlanParams params;
  int num_factors = 0;
  // Indexed [g][w] with g in {0,1} standing for parts 1 and 2.
  std::vector<double> p_w[2], p_wK[2], p_wstar[2], p_w0[2];
  std::vector<std::vector<double>> p_wc[2];  // [g][w][c], c in 0..K-1, zero below 3
  double p_g[2] = {0, 0};
  double p_gK[2] = {0, 0}, p_gstar[2] = {0, 0}, p_g0[2] = {0, 0};
  std::vector<double> p_gc[2];  // [g][c], c in 0..K-1
  std::vector<int> scale_of;    // i(w), filled by the interval subroutine
  std::vector<std::string> warnings;

  double p_wKsum(int w) const { return p_wK[0][w] + p_wK[1][w]; }
  double pbar(int w, int di) const { return 1.0 - (static_cast<double>(di) + 1.0) / di * p_wKsum(w); }
  // Probability p^g_{w,c} for c in [3, K-1], or p^g_{w,K} for c == K.
  double prob(int g, int w, int c) const {
    if (c == params.K) return p_wK[g][w];
    if (c == 0) return p_w0[g][w];
    return p_wc[g][w][c];
  }
  double avg(int g, int c) const {
    if (c == params.K) return p_gK[g];
    if (c == 0) return p_g0[g];
    return p_gc[g][c];
  }
};

inline FactorPlan compute_plan(const std::vector<FactorSplit>& splits, const PlanParams& prm) {
  if (prm.n <= 0) throw std::invalid_argument("compute_plan: n must be positive");
  FactorPlan pl;
  pl.params = prm;
  int K = prm.K, W = static_cast<int>(splits.size());
  pl.num_factors = W;
  double n = prm.n, fl = prm.floor_value();
  for (int g = 0; g < 2; ++g) {
    pl.p_w[g].assign(W, 0);
    pl.p_wK[g].assign(W, 0);
    pl.p_wstar[g].assign(W, 0);
    pl.p_w0[g].assign(W, 0);
    pl.p_wc[g].assign(W, std::vector<double>(K, 0.0));
    pl.p_gc[g].assign(K, 0.0);
  }
  pl.scale_of.assign(W, -1);
  for (int w = 0; w < W; ++w) {
    if (!splits.empty() && !(splits[w].tag == splits[0].tag))
      throw std::invalid_argument("compute_plan: splits from different cases");
    for (int g = 0; g < 2; ++g) {
      const PieceSpec& piece = g == 0 ? splits[w].f1 : splits[w].f2;
      double pw = (1 - prm.eta) * piece.size() / n + fl;
      double sum_c = 0, sum_p = 0;
      for (int c = 3; c < K; ++c) {
        double q = piece.count(c) / n;
        double pc = (1 - prm.eta) * q;
        pl.p_wc[g][w][c] = pc;
        sum_c += c * pc;
        sum_p += pc;
      }
      double pk = (pw - sum_c) / 8.0;
      if (std::fabs(pk) < 1e-12) pk = 0;  // cancellation when the floor is zero
      double ps = pw - pk;
      pl.p_w[g][w] = pw;
      pl.p_wK[g][w] = pk;
      pl.p_wstar[g][w] = ps;
      pl.p_w0[g][w] = ps - sum_p;
    }
  }
  for (int g = 0; g < 2; ++g) {
    if (W == 0) break;
    for (int w = 0; w < W; ++w) {
      pl.p_g[g] += pl.p_w[g][w] / W;
      pl.p_gK[g] += pl.p_wK[g][w] / W;
      pl.p_gstar[g] += pl.p_wstar[g][w] / W;
      pl.p_g0[g] += pl.p_w0[g][w] / W;
      for (int c = 3; c < K; ++c) pl.p_gc[g][c] += pl.p_wc[g][w][c] / W;
    }
  }
  auto check = [&](double p, const char* what, int w) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error(std::string("compute_plan: probability ") + what + " of factor " + std::to_string(w) +
                              " outside [0,1] = " + std::to_string(p));
  };
  for (int w = 0; w < W; ++w)
    for (int g = 0; g < 2; ++g) {
      check(pl.p_w[g][w], "p_w", w);
      check(pl.p_wK[g][w], "p_wK", w);
      check(pl.p_wstar[g][w], "p_w*", w);
      check(pl.p_w0[g][w], "p_w0", w);
      for (int c = 3; c < K; ++c) check(pl.p_wc[g][w][c], "p_wc", w);
    }
  if (pl.p_g[0] + pl.p_g[1] > 1.0) pl.warnings.push_back("p_1 + p_2 exceeds 1: the floor term dominates at this n");
  return pl;
}

// ---------------------------------------------------------------------------
// Valid subfactors.

struct RealizedPiece {
  std::vector<std::vector<int>> cycles;  // vertex sequences, closing arc implied
  std::vector<std::vector<int>> paths;   // vertex sequences
};

inline bool is_valid_subfactor(const std::vector<Arc>& fprime, const RealizedPiece& f2) {
  std::map<int, int> deg;
  for (const Arc& a : fprime) {
    ++deg[a.u];
    ++deg[a.v];
  }
  for (const Arc& a : fprime)
    if (deg[a.u] == 1 && deg[a.v] == 1) return false;
  auto has = [&](int u, int v) {
    return std::find(fprime.begin(), fprime.end(), Arc{u, v}) != fprime.end();
  };
  for (const auto& p : f2.paths) {
    if (p.size() < 2) continue;
    if (!has(p[0], p[1]) || !has(p[p.size() - 2], p.back())) return false;
  }
  return true;
}

}  // namespace obk

#pragma once

// The two randomized subroutines that build the auxiliary digraphs J_1, J_2
// from a regular host digraph G, and a Monte Carlo harness for their degree
// statistics.  Vertices of G are identified with cyclic positions 0..n-1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/digraph.hpp"
#include "obk/factor.hpp"
#include "obk/rng.hpp"
#include "obk/wheel.hpp"

namespace obk {

struct IntervalsOutcome {
  int n = 0;
  int num_hubs = 0;
  std::vector<int> scale, offset;         // i(w), j(w), 0-based
  std::vector<std::vector<int>> active;   // A_w: interval indices inside class (i(w), j(w))
  std::vector<std::vector<int>> selected; // S_w
  std::vector<std::vector<int>> X[2], Y[2];
  std::vector<int> t[2];                  // t^g_i per scale
  std::vector<std::vector<int>> Yset[2];  // Y^g_w as sorted vertex lists
  std::vector<std::vector<int>> Ybar;     // sorted
  int t_total[2] = {0, 0};                // t_g
  std::vector<int> t_start[2], t_succ[2]; // t^-_g(x), t^+_g(x)
};

struct DigraphOutcome {
  Digraph G[2];
  AuxiliaryDigraph J[2];
  std::vector<std::vector<int>> Jbar;  // N^-(w) in the helper digraph, i.e. Ybar_w
};

namespace detail {

inline double pbar_of(const FactorPlan& pl, const IntervalSystem& sys, const IntervalsOutcome& io, int w) {
  return pl.pbar(w, sys.scale_size(io.scale[w]));
}

}  // namespace detail

inline IntervalsOutcome run_intervals(const FactorPlan& plan, const IntervalSystem& sys, std::uint64_t seed) {
  const int n = sys.n(), W = plan.num_factors, S = sys.num_scales();
  if (plan.params.n != n) throw std::invalid_argument("run_intervals: plan and interval system disagree on n");
  for (int w = 0; w < W; ++w) {
    if (8 * plan.p_wK[0][w] > 1 || 8 * plan.p_wK[1][w] > 1)
      throw std::domain_error("run_intervals: 8 p^g_{w,K} exceeds 1");
    if (8 * (plan.p_wK[0][w] + plan.p_wK[1][w]) > 1 + 1e-12)
      throw std::domain_error("run_intervals: disjoint allocation needs 8 (p^1_{w,K} + p^2_{w,K}) <= 1");
  }
  IntervalsOutcome io;
  io.n = n;
  io.num_hubs = W;
  io.scale.resize(W);
  io.offset.resize(W);
  io.active.resize(W);
  io.selected.resize(W);
  for (int g = 0; g < 2; ++g) {
    io.X[g].assign(W, {});
    io.Y[g].assign(W, {});
    io.t[g].assign(S, 0);
    io.Yset[g].assign(W, {});
    io.t_start[g].assign(n, 0);
    io.t_succ[g].assign(n, 0);
  }
  io.Ybar.assign(W, {});

  // (i)-(iii), each hub on its own stream.
  for (int w = 0; w < W; ++w) {
    Rng rng(seed, {tag(Stream::Intervals), 1, static_cast<std::uint64_t>(w)});
    int i = rng.range(0, S - 1);
    int j = rng.range(0, sys.scale_size(i) - 1);
    io.scale[w] = i;
    io.offset[w] = j;
    const auto& cl = sys.cls(i, j);
    int m = static_cast<int>(cl.intervals.size());
    std::vector<char> act(m, 0);
    for (int k = 0; k < m; ++k) act[k] = rng.bernoulli(0.5);
    for (int k = 0; k < m; ++k)
      if (act[k]) io.active[w].push_back(k);
    for (int k = 0; k < m; ++k) {
      if (!act[k]) continue;
      bool alone = m == 1 || (!act[(k + 1) % m] && !act[(k + m - 1) % m]);
      if (alone) io.selected[w].push_back(k);
    }
    double q1 = 8 * plan.p_wK[0][w], q2 = 8 * plan.p_wK[1][w];
    for (int k : io.selected[w]) {
      double u = rng.uniform();
      if (u < q1) io.X[0][w].push_back(k);
      else if (u < q1 + q2) io.X[1][w].push_back(k);
    }
  }

  // (iv) trimming.  Intervals of scale i are keyed by their start position.
  for (int g = 0; g < 2; ++g) {
    for (int i = 0; i < S; ++i) {
      std::vector<std::vector<int>> holders(n);
      for (int w = 0; w < W; ++w) {
        if (io.scale[w] != i) continue;
        const auto& cl = sys.cls(i, io.offset[w]);
        for (int k : io.X[g][w]) holders[cl.intervals[k].start].push_back(w);
      }
      int t = static_cast<int>(holders[0].size());
      for (int a = 0; a < n; ++a) t = std::min<int>(t, static_cast<int>(holders[a].size()));
      io.t[g][i] = t;
      for (int a = 0; a < n; ++a) {
        auto& hs = holders[a];
        Rng rng(seed, {tag(Stream::Intervals), 2, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(i),
                       static_cast<std::uint64_t>(a)});
        rng.shuffle(hs);
        for (std::size_t k = 0; k < static_cast<std::size_t>(t); ++k) {
          int w = hs[k];
          io.Y[g][w].push_back(sys.index_of_start(i, a));
        }
      }
    }
    io.t_total[g] = 0;
    for (int i = 0; i < S; ++i) io.t_total[g] += io.t[g][i];
  }

  for (int w = 0; w < W; ++w) {
    const auto& cl = sys.cls(io.scale[w], io.offset[w]);
    std::vector<char> blocked(n, 0);
    for (int g = 0; g < 2; ++g) {
      std::sort(io.Y[g][w].begin(), io.Y[g][w].end());
      for (int k : io.Y[g][w]) {
        const Interval& iv = cl.intervals[k];
        for (int q = 0; q < iv.length; ++q) {
          int x = (iv.start + q) % n;
          io.Yset[g][w].push_back(x);
          blocked[x] = 1;
        }
        int succ = interval_successor(n, iv);
        blocked[succ] = 1;
        ++io.t_start[g][iv.start];
        ++io.t_succ[g][succ];
      }
      std::sort(io.Yset[g][w].begin(), io.Yset[g][w].end());
    }
    for (int x = 0; x < n; ++x)
      if (!blocked[x]) io.Ybar[w].push_back(x);
  }
  return io;
}

inline DigraphOutcome run_digraph(const Digraph& G, const FactorPlan& plan, const IntervalSystem& sys,
                                  const IntervalsOutcome& io, std::uint64_t seed) {
  const int n = G.n(), W = plan.num_factors, K = plan.params.K;
  if (n != plan.params.n || n != io.n) throw std::invalid_argument("run_digraph: vertex counts disagree");
  if (plan.p_g[0] + plan.p_g[1] > 1 + 1e-12) throw std::domain_error("run_digraph: p_1 + p_2 exceeds 1");
  DigraphOutcome out;
  out.G[0] = out.G[1] = Digraph(n);
  out.J[0] = out.J[1] = AuxiliaryDigraph(n, W);
  CyclicOrder ord(n);

  // (i), (ii)
  {
    Rng rng(seed, {tag(Stream::Digraph), 1});
    for (const Arc& e : G.arcs()) {
      double u = rng.uniform();
      int g = u < plan.p_g[0] ? 0 : (u < plan.p_g[0] + plan.p_g[1] ? 1 : -1);
      if (g < 0) continue;
      out.G[g].add_arc(e.u, e.v);
      bool adjacent = e.v == (e.u + 1) % n || e.u == (e.v + 1) % n;
      if (adjacent || rng.uniform() < plan.p_gstar[g] / plan.p_g[g]) out.J[g].add(e.u, e.v, kColour0);
      else out.J[g].add(twist_encode(e, kColourK, ord));
    }
  }
  // (iii), (iv)
  out.Jbar = io.Ybar;
  for (int w = 0; w < W; ++w) {
    int hub = n + w;
    for (int g = 0; g < 2; ++g)
      for (int x : io.Yset[g][w]) out.J[g].add(x, hub, kColourK);
    double pb = detail::pbar_of(plan, sys, io, w);
    double a1 = plan.p_wstar[0][w] / pb, a2 = plan.p_wstar[1][w] / pb;
    if (a1 + a2 > 1 + 1e-12) throw std::domain_error("run_digraph: p^1_{w,*}/pbar_w + p^2_{w,*}/pbar_w exceeds 1");
    Rng rng(seed, {tag(Stream::Digraph), 2, static_cast<std::uint64_t>(w)});
    for (int x : io.Ybar[w]) {
      double u = rng.uniform();
      int g = u < a1 ? 0 : (u < a1 + a2 ? 1 : -1);
      if (g < 0) continue;
      double v = rng.uniform() * plan.p_wstar[g][w];
      int colour = kColour0;
      double acc = 0;
      for (int c = 3; c < K; ++c) {
        acc += plan.p_wc[g][w][c];
        if (v < acc) {
          colour = c;
          break;
        }
      }
      out.J[g].add(x, hub, colour);
    }
  }
  return out;
}

// Exact invariants of one run; returns human-readable violations.
inline std::vector<std::string> check_intervals_invariants(const IntervalSystem& sys, const IntervalsOutcome& io) {
  std::vector<std::string> bad;
  const int n = io.n;
  for (int w = 0; w < io.num_hubs; ++w) {
    const auto& cl = sys.cls(io.scale[w], io.offset[w]);
    int m = static_cast<int>(cl.intervals.size());
    std::vector<char> act(m, 0), x1(m, 0);
    for (int k : io.active[w]) act[k] = 1;
    for (int k : io.selected[w]) {
      if (!act[k]) bad.push_back("selected interval not active, hub " + std::to_string(w));
      if (m > 1 && (act[(k + 1) % m] || act[(k + m - 1) % m]))
        bad.push_back("selected interval has an active neighbour, hub " + std::to_string(w));
    }
    std::vector<char> sel(m, 0);
    for (int k : io.selected[w]) sel[k] = 1;
    for (int k : io.X[0][w]) x1[k] = 1;
    for (int g = 0; g < 2; ++g)
      for (int k : io.X[g][w])
        if (!sel[k]) bad.push_back("allocated interval not selected, hub " + std::to_string(w));
    for (int k : io.X[1][w])
      if (x1[k]) bad.push_back("X^1_w and X^2_w intersect, hub " + std::to_string(w));
    for (int g = 0; g < 2; ++g) {
      std::vector<char> xs(m, 0);
      for (int k : io.X[g][w]) xs[k] = 1;
      for (int k : io.Y[g][w])
        if (!xs[k]) bad.push_back("Y^g_w not inside X^g_w, hub " + std::to_string(w));
    }
  }
  for (int g = 0; g < 2; ++g) {
    for (int i = 0; i < sys.num_scales(); ++i) {
      std::vector<int> cnt(n, 0);
      for (int w = 0; w < io.num_hubs; ++w) {
        if (io.scale[w] != i) continue;
        const auto& cl = sys.cls(i, io.offset[w]);
        for (int k : io.Y[g][w]) ++cnt[cl.intervals[k].start];
      }
      for (int a = 0; a < n; ++a)
        if (cnt[a] != io.t[g][i]) {
          bad.push_back("|Y^g(I)| != t^g_i at scale " + std::to_string(i));
          break;
        }
    }
    for (int x = 0; x < n; ++x)
      if (io.t_start[g][x] != io.t_total[g] || io.t_succ[g][x] != io.t_total[g]) {
        bad.push_back("t^+-_g(x) != t_g at x = " + std::to_string(x));
        break;
      }
  }
  return bad;
}

inline std::vector<std::string> check_digraph_invariants(const Digraph& G, const IntervalsOutcome& io,
                                                         const DigraphOutcome& d) {
  std::vector<std::string> bad;
  const int n = G.n();
  CyclicOrder ord(n);
  for (const Arc& e : d.G[0].arcs())
    if (d.G[1].has_arc(e.u, e.v)) bad.push_back("G_1 and G_2 share an arc");
  for (int g = 0; g < 2; ++g) {
    for (const Arc& e : d.G[g].arcs())
      if (!G.has_arc(e.u, e.v)) bad.push_back("G_g arc not in G");
    for (const auto& a : d.J[g].arcs()) {
      if (a.v < n) {
        if (a.colour == kColourK) {
          Arc h = twist_decode_arc(a, ord);
          if (!d.G[g].has_arc(h.u, h.v)) bad.push_back("colour-K arc is not a twisted G_g arc");
          if (h.v == (h.u + 1) % n || h.u == (h.v + 1) % n) bad.push_back("colour K on a host arc (z, z^+-)");
        } else if (a.colour == kColour0) {
          if (!d.G[g].has_arc(a.u, a.v)) bad.push_back("colour-0 arc not in G_g");
        } else {
          bad.push_back("foreign colour inside J_g[V]");
        }
      } else {
        int w = a.v - n;
        const auto& src = a.colour == kColourK ? io.Yset[g][w] : io.Ybar[w];
        if (!std::binary_search(src.begin(), src.end(), a.u)) bad.push_back("V->W arc from outside its source set");
      }
    }
  }
  std::set<std::pair<int, int>> star1;
  for (const auto& a : d.J[0].arcs())
    if (a.v >= n && a.colour != kColourK) star1.insert({a.u, a.v});
  for (const auto& b : d.J[1].arcs())
    if (b.v >= n && b.colour != kColourK && star1.count({b.u, b.v})) bad.push_back("V->W arc in both J_1 and J_2");
  return bad;
}

// Delta(x) = d+_{J^K_g}(x^-, W) - d+_{J^K_g}(x, W); both are t_g on every run.
inline std::vector<int> delta_identity(const DigraphOutcome& d, int g) {
  int n = d.J[g].nv();
  std::vector<int> deg(n, 0);
  for (const auto& a : d.J[g].arcs())
    if (d.J[g].is_hub(a.v) && a.colour == kColourK) ++deg[a.u];
  std::vector<int> delta(n);
  for (int x = 0; x < n; ++x) delta[x] = deg[(x + n - 1) % n] - deg[x];
  return delta;
}

struct StatRow {
  std::string name;
  long long samples = 0;
  double mean_dev = 0;           // mean of observed - centre
  double p50 = 0, p90 = 0, p99 = 0, max_abs = 0;  // of |observed - centre|
  double within_3sigma = 0;      // fraction with |dev| <= 3 sqrt(centre)
};

struct StatReport {
  int trials = 0;
  std::vector<StatRow> rows;
  double selection_rate = 0;  // empirical P(I in S_w | i(w), j(w)); 1/8 in expectation

  const StatRow* find(const std::string& name) const {
    for (const auto& r : rows)
      if (r.name == name) return &r;
    return nullptr;
  }

  std::string table() const {
    std::ostringstream os;
    os << "trials " << trials << "  selection rate " << std::fixed << std::setprecision(4) << selection_rate << "\n";
    os << std::left << std::setw(26) << "statistic" << std::right << std::setw(9) << "samples" << std::setw(11)
       << "mean dev" << std::setw(9) << "p50" << std::setw(9) << "p90" << std::setw(9) << "p99" << std::setw(9)
       << "max" << std::setw(10) << "in 3sig" << "\n";
    for (const auto& r : rows)
      os << std::left << std::setw(26) << r.name << std::right << std::setw(9) << r.samples << std::setw(11)
         << std::setprecision(3) << r.mean_dev << std::setw(9) << r.p50 << std::setw(9) << r.p90 << std::setw(9)
         << r.p99 << std::setw(9) << r.max_abs << std::setw(10) << r.within_3sigma << "\n";
    return os.str();
  }
};

namespace detail {

struct StatAcc {
  std::vector<double> dev;
  long long inside = 0;
  void add(double obs, double centre) {
    double dv = obs - centre;
    dev.push_back(dv);
    if (std::fabs(dv) <= 3 * std::sqrt(std::max(centre, 0.0))) ++inside;
  }
  StatRow row(const std::string& name) const {
    StatRow r;
    r.name = name;
    r.samples = static_cast<long long>(dev.size());
    if (dev.empty()) return r;
    std::vector<double> a;
    double sum = 0;
    for (double x : dev) {
      sum += x;
      a.push_back(std::fabs(x));
    }
    std::sort(a.begin(), a.end());
    auto q = [&](double f) { return a[std::min(a.size() - 1, static_cast<std::size_t>(f * (a.size() - 1) + 0.5))]; };
    r.mean_dev = sum / dev.size();
    r.p50 = q(0.5);
    r.p90 = q(0.9);
    r.p99 = q(0.99);
    r.max_abs = a.back();
    r.within_3sigma = static_cast<double>(inside) / dev.size();
    return r;
  }
};

}  // namespace detail

// Runs both subroutines per trial and compares degrees with their centres.
inline StatReport monte_carlo_stats(const Digraph& G, const FactorPlan& plan, const IntervalSystem& sys, int trials,
                                    std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_stats: trials must be at least 1");
  const int n = G.n(), W = plan.num_factors, K = plan.params.K;
  std::map<std::string, detail::StatAcc> acc;
  long long sel = 0, cand = 0;
  for (int tr = 0; tr < trials; ++tr) {
    std::uint64_t ts = derive_seed(seed, {tag(Stream::Trial), static_cast<std::uint64_t>(tr)});
    auto io = run_intervals(plan, sys, ts);
    auto dg = run_digraph(G, plan, sys, io, ts);
    for (int w = 0; w < W; ++w) {
      sel += static_cast<long long>(io.selected[w].size());
      cand += static_cast<long long>(sys.cls(io.scale[w], io.offset[w]).intervals.size());
      acc["|Ybar_w|"].add(static_cast<double>(io.Ybar[w].size()), detail::pbar_of(plan, sys, io, w) * n);
    }
    for (int g = 0; g < 2; ++g) {
      std::string gs = "g" + std::to_string(g + 1);
      std::vector<std::vector<int>> hub_in(W, std::vector<int>(K + 1, 0));
      std::vector<int> outV(n, 0), inV(n, 0), outKW(n, 0);
      for (const auto& a : dg.J[g].arcs()) {
        if (a.v >= n) {
          int w = a.v - n;
          hub_in[w][a.colour == kColourK ? K : a.colour] += 1;
          if (a.colour == kColourK) ++outKW[a.u];
        } else {
          ++outV[a.u];
          ++inV[a.v];
        }
      }
      for (int w = 0; w < W; ++w) {
        acc[gs + " d-(w) colour 0"].add(hub_in[w][0], plan.p_w0[g][w] * n);
        acc[gs + " d-(w) colour K"].add(hub_in[w][K], plan.p_wK[g][w] * n);
        for (int c = 3; c < K; ++c)
          if (plan.p_wc[g][w][c] > 0) acc[gs + " d-(w) colour " + std::to_string(c)].add(hub_in[w][c], plan.p_wc[g][w][c] * n);
      }
      for (int v = 0; v < n; ++v) {
        acc[gs + " d+(v,V)"].add(outV[v], plan.p_g[g] * G.out(v).size());
        acc[gs + " d-(v,V)"].add(inV[v], plan.p_g[g] * G.in(v).size());
        acc[gs + " d+_K(x,W)"].add(outKW[v], plan.p_gK[g] * W);
      }
    }
  }
  StatReport rep;
  rep.trials = trials;
  rep.selection_rate = cand ? static_cast<double>(sel) / cand : 0;
  for (const auto& [name, a] : acc) rep.rows.push_back(a.row(name));
  return rep;
}

}  // namespace obk

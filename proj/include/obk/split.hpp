#pragma once

// Splitting an r-regular digraph into arc-disjoint exactly regular parts.
// Parts are peeled off one at a time; each binary split runs a random
// assignment, an arc-count repair, an in-degree repair and an out-degree
// repair.  The in-degree swap z->x, z->y keeps every out-degree, and the
// out-degree swap x->z, y->z keeps every in-degree.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/digraph.hpp"
#include "obk/rng.hpp"

namespace obk {

struct SplitOptions {
  // Per-vertex touch caps; zero means max(8, n^0.8).
  int move_cap = 0;
  int swap_cap = 0;
};

class SplitError : public std::runtime_error {
 public:
  SplitError(const std::string& what, int vertex) : std::runtime_error(what), vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

namespace detail {

struct BinarySplit {
  int n;
  int a;                       // target degree of part A
  std::vector<signed char> lab;  // n*n: -1 none, 0 in A, 1 in B
  std::vector<int> inA, outA;
  Rng& rng;
  int move_cap, swap_cap;

  signed char& at(int u, int v) { return lab[static_cast<std::size_t>(u) * n + v]; }

  void run(const Digraph& g, int r) {
    lab.assign(static_cast<std::size_t>(n) * n, -1);
    inA.assign(n, 0);
    outA.assign(n, 0);
    double p = r ? static_cast<double>(a) / r : 0.0;
    std::vector<Arc> arcs = g.arcs();
    long long sizeA = 0;
    for (const Arc& e : arcs) {
      bool inpart = rng.bernoulli(p);
      at(e.u, e.v) = inpart ? 0 : 1;
      if (inpart) {
        ++outA[e.u];
        ++inA[e.v];
        ++sizeA;
      }
    }
    // Arc-count repair.
    long long target = static_cast<long long>(a) * n;
    std::vector<int> touched(n, 0);
    rng.shuffle(arcs);
    for (int pass = 0; pass < 2 && sizeA != target; ++pass) {
      for (const Arc& e : arcs) {
        if (sizeA == target) break;
        bool over = sizeA > target;
        signed char want = over ? 0 : 1;
        if (at(e.u, e.v) != want) continue;
        if (pass == 0 && (touched[e.u] >= move_cap || touched[e.v] >= move_cap)) continue;
        // Prefer moves that also move degrees toward their targets.
        if (pass == 0) {
          if (over && (outA[e.u] <= a || inA[e.v] <= a) && rng.bernoulli(0.8)) continue;
          if (!over && (outA[e.u] >= a || inA[e.v] >= a) && rng.bernoulli(0.8)) continue;
        }
        at(e.u, e.v) = over ? 1 : 0;
        int dlt = over ? -1 : 1;
        outA[e.u] += dlt;
        inA[e.v] += dlt;
        sizeA += dlt;
        ++touched[e.u];
        ++touched[e.v];
      }
    }
    if (sizeA != target) throw SplitError("split_regular: arc-count repair failed", -1);
    try {
      repair(true, g);
      repair(false, g);
    } catch (const SplitError&) {
      flow_repair(g);
    }
  }

  // Fallback when the swaps stall: trim degrees down to a, then augment along
  // alternating paths in the bipartite out-copy/in-copy graph.
  void flow_repair(const Digraph& g) {
    for (int x = 0; x < n; ++x)
      for (int v : g.out(x))
        if (at(x, v) == 0 && (outA[x] > a || inA[v] > a)) {
          at(x, v) = 1;
          --outA[x];
          --inA[v];
        }
    for (int x = 0; x < n; ++x) {
      while (outA[x] < a) {
        // BFS over out-copies; parent records the in-copy used to reach them.
        std::vector<int> par_in(n, -1), par_out(n, -1);
        std::vector<char> seen_out(n, 0);
        std::vector<int> q{x};
        seen_out[x] = 1;
        int end = -1;
        for (std::size_t h = 0; h < q.size() && end < 0; ++h) {
          int u = q[h];
          for (int v : g.out(u)) {
            if (at(u, v) != 1 || par_in[v] != -1) continue;
            par_in[v] = u;
            if (inA[v] < a) {
              end = v;
              break;
            }
            for (int w : g.in(v))
              if (at(w, v) == 0 && !seen_out[w]) {
                seen_out[w] = 1;
                par_out[w] = v;
                q.push_back(w);
              }
          }
        }
        if (end < 0) throw SplitError("split_regular: no regular part of the requested degree", x);
        int v = end;
        while (true) {
          int u = par_in[v];
          at(u, v) = 0;
          if (u == x) break;
          int v2 = par_out[u];
          at(u, v2) = 1;
          v = v2;
        }
        ++outA[x];
        ++inA[end];
      }
    }
  }

  // in_mode: fix in-degrees with swaps z->x (A), z->y (B) => z->x (B), z->y (A).
  // otherwise: fix out-degrees with x->z (A), y->z (B) => x->z (B), y->z (A).
  void repair(bool in_mode, const Digraph& g) {
    std::vector<int>& deg = in_mode ? inA : outA;
    std::vector<int> zuse(n, 0);
    auto collect = [&](bool surplus) {
      std::vector<int> v;
      for (int x = 0; x < n; ++x)
        if (surplus ? deg[x] > a : deg[x] < a) v.push_back(x);
      return v;
    };
    for (int round = 0; round < 4 * n + 16; ++round) {
      std::vector<int> xs = collect(true), ys = collect(false);
      if (xs.empty()) {
        if (!ys.empty()) throw std::logic_error("split_regular: unbalanced degree sums");
        return;
      }
      rng.shuffle(xs);
      rng.shuffle(ys);
      bool progress = false;
      for (int x : xs) {
        if (deg[x] <= a) continue;
        for (int y : ys) {
          if (deg[y] >= a || deg[x] <= a) continue;
          int z = find_z(in_mode, g, x, y, zuse, round > 0);
          if (z < 0) continue;
          if (in_mode) {
            at(z, x) = 1;
            at(z, y) = 0;
          } else {
            at(x, z) = 1;
            at(y, z) = 0;
          }
          --deg[x];
          ++deg[y];
          ++zuse[z];
          progress = true;
        }
      }
      if (!progress && !augment(in_mode, g, deg)) {
        std::vector<int> left = collect(true);
        throw SplitError(std::string("split_regular: ") + (in_mode ? "in" : "out") + "-degree repair stuck",
                         left.empty() ? -1 : left.front());
      }
    }
    throw SplitError("split_regular: repair did not converge", -1);
  }

  // Alternating walk x = u0, u1, ..., uk = y where each step flips a pair of
  // arcs through some z: one unit of A-degree travels from x to y.
  bool augment(bool in_mode, const Digraph& g, std::vector<int>& deg) {
    for (int x = 0; x < n; ++x) {
      if (deg[x] <= a) continue;
      std::vector<int> from(n, -1), via(n, -1);
      from[x] = x;
      std::vector<int> q{x};
      int y = -1;
      for (std::size_t h = 0; h < q.size() && y < 0; ++h) {
        int u = q[h];
        for (int z : in_mode ? g.in(u) : g.out(u)) {
          if ((in_mode ? at(z, u) : at(u, z)) != 0) continue;
          for (int w : in_mode ? g.out(z) : g.in(z)) {
            if (from[w] != -1 || (in_mode ? at(z, w) : at(w, z)) != 1) continue;
            from[w] = u;
            via[w] = z;
            if (deg[w] < a) {
              y = w;
              break;
            }
            q.push_back(w);
          }
          if (y >= 0) break;
        }
      }
      if (y < 0) continue;
      for (int w = y; w != x; w = from[w]) {
        int u = from[w], z = via[w];
        if (in_mode) {
          at(z, u) = 1;
          at(z, w) = 0;
        } else {
          at(u, z) = 1;
          at(w, z) = 0;
        }
      }
      --deg[x];
      ++deg[y];
      return true;
    }
    return false;
  }

  int find_z(bool in_mode, const Digraph& g, int x, int y, const std::vector<int>& zuse, bool relax) {
    const std::vector<int>& cand = in_mode ? g.in(x) : g.out(x);
    int best = -1;
    for (int z : cand) {
      if (z == y) continue;
      bool ok = in_mode ? (at(z, x) == 0 && at(z, y) == 1) : (at(x, z) == 0 && at(y, z) == 1);
      if (!ok) continue;
      if (zuse[z] < swap_cap) return z;
      if (relax && (best < 0 || zuse[z] < zuse[best])) best = z;
    }
    return best;
  }
};

}  // namespace detail

inline std::vector<Digraph> split_regular(const Digraph& g, const std::vector<double>& alphas, std::uint64_t seed,
                                          const SplitOptions& opt = {}) {
  int n = g.n();
  int r = g.regularity();
  if (r < 0) throw std::invalid_argument("split_regular: input digraph is not regular");
  if (alphas.empty()) throw std::invalid_argument("split_regular: no parts requested");
  std::vector<int> targets;
  int total = 0;
  for (double al : alphas) {
    double x = al * n;
    int k = static_cast<int>(std::llround(x));
    if (al <= 0 || std::fabs(x - k) > 1e-9 * std::max(1.0, x))
      throw std::invalid_argument("split_regular: every alpha_i * n must be a positive integer");
    targets.push_back(k);
    total += k;
  }
  if (total != r) throw std::invalid_argument("split_regular: alphas must sum to r/n");
  int cap = std::max(8, static_cast<int>(std::pow(static_cast<double>(n), 0.8)));
  Rng rng(seed, {tag(Stream::Split)});
  std::vector<Digraph> parts;
  Digraph rest = g;
  int rest_r = r;
  for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
    detail::BinarySplit bs{n, targets[i], {}, {}, {}, rng, opt.move_cap ? opt.move_cap : cap,
                           opt.swap_cap ? opt.swap_cap : cap};
    bs.run(rest, rest_r);
    Digraph A(n), B(n);
    for (const Arc& e : rest.arcs()) (bs.at(e.u, e.v) == 0 ? A : B).add_arc(e.u, e.v);
    parts.push_back(std::move(A));
    rest = std::move(B);
    rest_r -= targets[i];
  }
  parts.push_back(std::move(rest));
  return parts;
}

}  // namespace obk

#pragma once

// (eps, t)-typicality audit: every set S of at most t vertices must have
// ((1 +- eps) d(G))^|S| n common neighbours.  For digraphs each member of S is
// given a role: common in-neighbours of S^- and common out-neighbours of S^+.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "obk/digraph.hpp"
#include "obk/rng.hpp"

namespace obk {

struct TypicalityReport {
  double epsilon = 0;
  int t = 0;
  double density = 0;
  // Ratio |N(S)| / (d^|S| n) of the set furthest from 1 on the |S|-th root scale.
  double worst_ratio = 1;
  // Smallest eps for which every audited set passes.
  double required_epsilon = 0;
  std::vector<int> failing_set;
  std::vector<int> failing_roles;  // digraphs: 0 = in-role (S^-), 1 = out-role (S^+)
  bool pass = false;
  bool sampled = false;
  long long audited = 0;
  std::string reason;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline Bits make_bits(int n) { return Bits((n + 63) / 64, 0); }

struct TypAudit {
  int n;
  double dens;
  double eps;
  TypicalityReport* rep;
  double worst_dev = -1;

  void record(const std::vector<int>& s, const std::vector<int>& roles, long long count) {
    int k = static_cast<int>(s.size());
    double expect = std::pow(dens, k) * n;
    double ratio = static_cast<double>(count) / expect;
    double root = std::pow(ratio, 1.0 / k);
    double dev = std::max(1.0 - root, root - 1.0);
    ++rep->audited;
    if (dev > rep->required_epsilon) rep->required_epsilon = dev;
    if (dev > worst_dev) {
      worst_dev = dev;
      rep->worst_ratio = ratio;
    }
    if (dev > eps + 1e-12 && rep->pass) {
      rep->pass = false;
      rep->failing_set = s;
      rep->failing_roles = roles;
    }
  }
};

inline long long popcount_and(const Bits& a) {
  long long c = 0;
  for (auto w : a) c += __builtin_popcountll(w);
  return c;
}

inline double combos(int n, int t, int roles) {
  double total = 0, c = 1;
  for (int k = 1; k <= t; ++k) {
    c = c * (n - k + 1) / k;
    total += c * std::pow(roles, k);
  }
  return total;
}

// nb[r][v] is the neighbourhood bitset of v for role r.
inline void audit(const std::vector<std::vector<Bits>>& nb, int n, int t, long long budget, std::uint64_t seed,
                  TypAudit& au) {
  int roles = static_cast<int>(nb.size());
  std::vector<int> s, role;
  Bits acc;
  if (combos(n, t, roles) <= static_cast<double>(budget)) {
    // Depth-first over increasing vertex sequences with all role choices.
    std::vector<Bits> stack;
    stack.push_back(Bits(nb[0][0].size(), ~0ULL));
    int words = static_cast<int>(stack[0].size());
    if (n % 64) stack[0][words - 1] = (1ULL << (n % 64)) - 1;
    auto rec = [&](auto&& self, int from) -> void {
      if (static_cast<int>(s.size()) == t) return;
      for (int v = from; v < n; ++v) {
        for (int r = 0; r < roles; ++r) {
          Bits next = stack.back();
          for (int w = 0; w < words; ++w) next[w] &= nb[r][v][w];
          s.push_back(v);
          role.push_back(r);
          au.record(s, role, popcount_and(next));
          stack.push_back(std::move(next));
          self(self, v + 1);
          stack.pop_back();
          s.pop_back();
          role.pop_back();
        }
      }
    };
    rec(rec, 0);
    return;
  }
  au.rep->sampled = true;
  Rng rng(seed);
  int words = static_cast<int>(nb[0][0].size());
  for (long long it = 0; it < budget; ++it) {
    int k = 1 + static_cast<int>(it % t);
    s.clear();
    role.clear();
    while (static_cast<int>(s.size()) < k) {
      int v = rng.range(0, n - 1);
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    acc.assign(words, ~0ULL);
    for (int v : s) {
      int r = roles == 1 ? 0 : rng.range(0, roles - 1);
      role.push_back(r);
      for (int w = 0; w < words; ++w) acc[w] &= nb[r][v][w];
    }
    if (n % 64) acc[words - 1] &= (1ULL << (n % 64)) - 1;
    au.record(s, role, popcount_and(acc));
  }
}

inline TypicalityReport run_typicality(const std::vector<std::vector<Bits>>& nb, int n, double dens, double eps,
                                       int t, long long budget, std::uint64_t seed) {
  TypicalityReport rep;
  rep.epsilon = eps;
  rep.t = t;
  rep.density = dens;
  if (!(eps > 0 && eps < 1) || t < 1) throw std::invalid_argument("typicality_check: need eps in (0,1) and t >= 1");
  if (dens <= 0 || n == 0) {
    rep.pass = false;
    rep.reason = "degenerate density";
    rep.required_epsilon = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.pass = true;
  TypAudit au{n, dens, eps, &rep};
  audit(nb, n, std::min(t, n), budget, seed, au);
  return rep;
}

}  // namespace detail

inline TypicalityReport typicality_check(const Graph& g, double eps, int t, long long budget = 4'000'000,
                                         std::uint64_t seed = 0) {
  int n = g.n();
  std::vector<std::vector<detail::Bits>> nb(1, std::vector<detail::Bits>(n, detail::make_bits(n)));
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbours(v)) nb[0][v][u / 64] |= 1ULL << (u % 64);
  return detail::run_typicality(nb, n, g.density(), eps, t, budget, seed);
}

// Digraph density is e(G) / (n(n-1)), so that an r-regular digraph has
// d(G) n close to r.
inline TypicalityReport typicality_check(const Digraph& g, double eps, int t, long long budget = 4'000'000,
                                         std::uint64_t seed = 0) {
  int n = g.n();
  std::vector<std::vector<detail::Bits>> nb(2, std::vector<detail::Bits>(n, detail::make_bits(n)));
  for (int v = 0; v < n; ++v) {
    for (int u : g.in(v)) nb[0][v][u / 64] |= 1ULL << (u % 64);
    for (int u : g.out(v)) nb[1][v][u / 64] |= 1ULL << (u % 64);
  }
  return detail::run_typicality(nb, n, g.density(), eps, t, budget, seed);
}

}  // namespace obk

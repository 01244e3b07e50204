#pragma once

// Direct search for decompositions of a small host into prescribed factors,
// one factor at a time.  Each factor is built cycle by cycle from the smallest
// uncovered vertex.  Factors of equal type are ordered by the first neighbour
// of vertex 0; on a complete host the first factor is fixed canonically.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "obk/digraph.hpp"
#include "obk/exact_cover.hpp"
#include "obk/greedy_removal.hpp"

namespace obk {

struct DirectOptions {
  long long budget = 200'000'000;
  bool fix_first = true;  // only used when the host is complete
};

struct DirectResult {
  SearchStatus status = SearchStatus::Infeasible;
  std::vector<CycleSet> factors;  // in the order of the input types
  long long nodes = 0;
};

namespace detail {

class DirectSearch {
 public:
  DirectSearch(int n, bool directed, std::vector<std::uint8_t> adj, std::vector<std::vector<int>> types,
               long long budget)
      : n_(n), directed_(directed), adj_(std::move(adj)), types_(std::move(types)), budget_(budget) {
    used_.assign(n_, 0);
    out_.resize(types_.size());
  }

  bool has(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }
  void set(int u, int v, std::uint8_t x) {
    adj_[static_cast<std::size_t>(u) * n_ + v] = x;
    if (!directed_) adj_[static_cast<std::size_t>(v) * n_ + u] = x;
  }
  void put_cycles(const CycleSet& cs, std::uint8_t x) {
    for (const auto& c : cs)
      for (std::size_t i = 0; i < c.size(); ++i) set(c[i], c[(i + 1) % c.size()], x);
  }

  // 1 found, 0 exhausted, -1 over budget.
  int factor(std::size_t k) {
    if (k == types_.size()) return 1;
    if (k + 1 == types_.size()) return last(k);
    int lo = -1, forced = -1;
    if (k > first_free && types_[k] == types_[k - 1]) lo = out_[k - 1][0][1];
    bool rest_same = true;
    for (std::size_t j = k + 1; j < types_.size(); ++j) rest_same = rest_same && types_[j] == types_[k];
    if (rest_same)
      for (int v = 1; v < n_ && forced < 0; ++v)
        if (has(0, v)) forced = v;
    cur_ = k;
    lens_ = types_[k];
    out_[k].clear();
    return cycles(lo, forced);
  }

  std::vector<CycleSet> out_;
  long long nodes_ = 0;
  std::size_t first_free = 0;

 private:
  // The remaining arcs must form the last factor exactly.
  int last(std::size_t k) {
    ++nodes_;
    std::vector<std::vector<int>> nb(n_);
    std::vector<int> indeg(n_, 0);
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v)
        if (has(u, v)) {
          nb[u].push_back(v);
          ++indeg[v];
        }
    int deg = directed_ ? 1 : 2;
    for (int v = 0; v < n_; ++v)
      if (static_cast<int>(nb[v].size()) != deg || (directed_ && indeg[v] != 1)) return 0;
    CycleSet cs;
    std::vector<char> seen(n_, 0);
    for (int s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      std::vector<int> cyc{s};
      seen[s] = 1;
      int prev = -1, cur = s;
      while (true) {
        int nxt = nb[cur][0];
        if (!directed_ && nxt == prev) nxt = nb[cur][1];
        if (nxt == s) break;
        seen[nxt] = 1;
        cyc.push_back(nxt);
        prev = cur;
        cur = nxt;
      }
      cs.push_back(cyc);
    }
    std::vector<int> got;
    for (const auto& c : cs) got.push_back(static_cast<int>(c.size()));
    std::sort(got.begin(), got.end());
    if (got != types_[k]) return 0;
    if (k > first_free && types_[k] == types_[k - 1] && cs[0][1] <= out_[k - 1][0][1]) return 0;
    out_[k] = cs;
    return 1;
  }

  int cycles(int lo, int forced) {
    if (++nodes_ > budget_) return -1;
    std::size_t k = cur_;
    if (lens_.empty()) {
      auto saved_used = used_;
      std::fill(used_.begin(), used_.end(), 0);
      put_cycles(out_[k], 0);
      int r = factor(k + 1);
      cur_ = k;
      lens_.clear();
      used_ = saved_used;
      if (r != 1) put_cycles(out_[k], 1);
      return r;
    }
    int s = 0;
    while (used_[s]) ++s;
    for (std::size_t i = 0; i < lens_.size(); ++i) {
      if (i && lens_[i] == lens_[i - 1]) continue;
      int L = lens_[i];
      lens_.erase(lens_.begin() + static_cast<long>(i));
      std::vector<int> path{s};
      used_[s] = 1;
      int r = extend(path, L, lo, forced);
      used_[s] = 0;
      lens_.insert(lens_.begin() + static_cast<long>(i), L);
      if (r != 0) return r;
    }
    return 0;
  }

  int extend(std::vector<int>& path, int L, int lo, int forced) {
    int s = path[0];
    if (static_cast<int>(path.size()) == L) {
      if (!directed_ && path[1] > path[L - 1]) return 0;
      out_[cur_].push_back(path);
      int r = cycles(lo, forced);
      if (r != 1) out_[cur_].pop_back();
      return r;
    }
    int tail = path.back();
    bool closing = static_cast<int>(path.size()) == L - 1;
    for (int v = 0; v < n_; ++v) {
      if (used_[v] || !has(tail, v)) continue;
      if (closing && !has(v, s)) continue;
      if (path.size() == 1 && s == 0) {
        // With the reflection rule the first neighbour of 0 is its key.
        if (forced >= 0 && v != forced) continue;
        if (v <= lo) continue;
      }
      used_[v] = 1;
      path.push_back(v);
      int r = extend(path, L, lo, forced);
      path.pop_back();
      used_[v] = 0;
      if (r != 0) return r;
    }
    return 0;
  }

  int n_;
  bool directed_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> types_;  // sorted cycle lengths per slot
  long long budget_;
  std::vector<char> used_;
  std::vector<int> lens_;
  std::size_t cur_ = 0;
};

inline CycleSet canonical_factor(const std::vector<int>& type) {
  CycleSet cs;
  int v = 0;
  for (int L : type) {
    std::vector<int> c;
    for (int i = 0; i < L; ++i) c.push_back(v++);
    cs.push_back(c);
  }
  return cs;
}

inline DirectResult direct_search(int n, bool directed, std::vector<std::uint8_t> adj,
                                  const std::vector<std::vector<int>>& types, const DirectOptions& opt) {
  DirectResult res;
  std::size_t m = types.size();
  long long arcs = 0, need = 0;
  for (auto x : adj) arcs += x;
  if (!directed) arcs /= 2;
  for (const auto& t : types) {
    long long s = 0;
    for (int L : t) {
      if (L < (directed ? 2 : 3)) throw std::invalid_argument("direct_search: cycle too short");
      s += L;
    }
    if (s != n) throw std::invalid_argument("cycle lengths must sum to n");
    need += n;
  }
  if (arcs != need) return res;
  if (m == 0) {
    res.status = SearchStatus::Found;
    return res;
  }

  // Slots: equal types adjacent, largest group last so that forcing applies to it.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  auto sorted_t = [&](std::size_t i) {
    auto t = types[i];
    std::sort(t.begin(), t.end());
    return t;
  };
  auto group = [&](std::size_t i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < m; ++j) c += sorted_t(j) == sorted_t(i);
    return c;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ga = group(a), gb = group(b);
    if (ga != gb) return ga < gb;
    return sorted_t(a) < sorted_t(b);
  });
  std::vector<std::vector<int>> slot_types;
  for (auto i : order) slot_types.push_back(sorted_t(i));

  bool complete = true;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !adj[static_cast<std::size_t>(u) * n + v]) complete = false;

  DirectSearch ds(n, directed, std::move(adj), slot_types, opt.budget);
  int r;
  if (complete && opt.fix_first) {
    ds.out_[0] = canonical_factor(slot_types[0]);
    ds.put_cycles(ds.out_[0], 0);
    ds.first_free = 1;
    r = ds.factor(1);
  } else {
    r = ds.factor(0);
  }
  res.nodes = ds.nodes_;
  if (r == 1) {
    res.status = SearchStatus::Found;
    res.factors.resize(m);
    for (std::size_t k = 0; k < m; ++k) res.factors[order[k]] = ds.out_[k];
  } else {
    res.status = r == 0 ? SearchStatus::Infeasible : SearchStatus::BudgetExhausted;
  }
  return res;
}

}  // namespace detail

inline DirectResult direct_decompose(const Graph& g, const std::vector<std::vector<int>>& types,
                                     const DirectOptions& opt = {}) {
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(g.n()) * g.n(), 0);
  for (auto [u, v] : g.edges()) adj[static_cast<std::size_t>(u) * g.n() + v] = adj[static_cast<std::size_t>(v) * g.n() + u] = 1;
  return detail::direct_search(g.n(), false, std::move(adj), types, opt);
}

inline DirectResult direct_decompose(const Digraph& g, const std::vector<std::vector<int>>& types,
                                     const DirectOptions& opt = {}) {
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(g.n()) * g.n(), 0);
  for (auto a : g.arcs()) adj[static_cast<std::size_t>(a.u) * g.n() + a.v] = 1;
  return detail::direct_search(g.n(), true, std::move(adj), types, opt);
}

}  // namespace obk

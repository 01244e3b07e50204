#pragma once

// Removing a few prescribed one-factors from a regular digraph, one at a time,
// by randomized depth-first embedding with restarts.

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/digraph.hpp"
#include "obk/factor.hpp"
#include "obk/rng.hpp"

namespace obk {

using CycleSet = std::vector<std::vector<int>>;  // vertex sequences, closing arc implied

class EmbedError : public std::runtime_error {
 public:
  EmbedError(const std::string& what, int factor) : std::runtime_error(what), factor_(factor) {}
  int factor() const { return factor_; }

 private:
  int factor_;
};

namespace detail {

struct CycleEmbedder {
  const Digraph& h;
  const std::vector<char>& allowed;  // vertices the factor must span
  std::vector<int> lengths;
  Rng& rng;
  long long budget;
  long long nodes = 0;
  std::vector<char> used;
  CycleSet out;

  int free_out(int v) const {
    int c = 0;
    for (int u : h.out(v))
      if (allowed[u] && !used[u]) ++c;
    return c;
  }

  bool place(std::size_t k) {
    if (k == lengths.size()) return true;
    int L = lengths[k];
    std::vector<int> starts;
    for (int v = 0; v < h.n(); ++v)
      if (allowed[v] && !used[v]) starts.push_back(v);
    if (starts.empty()) return false;
    // The smallest free vertex lies on some cycle: try each distinct length for it.
    int s = starts.front();
    std::vector<std::size_t> tried;
    for (std::size_t j = k; j < lengths.size(); ++j) {
      if (std::any_of(tried.begin(), tried.end(), [&](std::size_t t) { return lengths[t] == lengths[j]; })) continue;
      tried.push_back(j);
      std::swap(lengths[k], lengths[j]);
      L = lengths[k];
      out.push_back({s});
      used[s] = 1;
      if (extend(k, s, L)) return true;
      used[s] = 0;
      out.pop_back();
      std::swap(lengths[k], lengths[j]);
      if (nodes > budget) return false;
    }
    return false;
  }

  bool extend(std::size_t k, int start, int L) {
    if (++nodes > budget) return false;
    int cur = out[k].back();
    int len = static_cast<int>(out[k].size());
    if (len == L) {
      if (!h.has_arc(cur, start)) return false;
      return place(k + 1);
    }
    int remaining = L - len;
    std::vector<std::pair<int, int>> cand;
    for (int v : h.out(cur)) {
      if (!allowed[v] || used[v]) continue;
      if (remaining == 1) {
        if (!h.has_arc(v, start)) continue;
        cand.push_back({0, v});
        continue;
      }
      int f = free_out(v);
      if (f == 0) continue;
      if (remaining == 2) {
        bool ok = false;
        for (int u : h.out(v))
          if (allowed[u] && !used[u] && u != v && h.has_arc(u, start)) ok = true;
        if (!ok) continue;
      }
      cand.push_back({f, v});
    }
    rng.shuffle(cand);
    std::stable_sort(cand.begin(), cand.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto [f, v] : cand) {
      out[k].push_back(v);
      used[v] = 1;
      if (extend(k, start, L)) return true;
      used[v] = 0;
      out[k].pop_back();
      if (nodes > budget) return false;
    }
    return false;
  }
};

}  // namespace detail

// Embeds one spanning union of directed cycles of the given lengths inside
// the vertices marked allowed; returns nullopt after the retry budget.
inline std::optional<CycleSet> embed_cycle_factor(const Digraph& h, const std::vector<int>& lengths,
                                                  const std::vector<char>& allowed, Rng& rng, int retries = 20,
                                                  long long node_budget = 200000) {
  for (int attempt = 0; attempt < retries; ++attempt) {
    detail::CycleEmbedder em{h, allowed, lengths, rng, node_budget, 0, {}, {}};
    em.used.assign(h.n(), 0);
    rng.shuffle(em.lengths);
    if (em.place(0)) return em.out;
  }
  return std::nullopt;
}

struct GreedyRemovalResult {
  Digraph remainder;
  std::vector<CycleSet> embeddings;
  std::vector<std::string> warnings;
};

inline GreedyRemovalResult greedy_remove_factors(const Digraph& g, const std::vector<OneFactorSpec>& factors,
                                                 std::uint64_t seed, int retry_budget = 20, double eps = 0.1) {
  int r = g.regularity();
  if (r < 0) throw std::invalid_argument("greedy_remove_factors: host is not regular");
  GreedyRemovalResult res;
  res.remainder = g;
  if (factors.size() > eps * g.n())
    res.warnings.push_back("more than eps*n factors requested for greedy removal");
  std::vector<char> all(g.n(), 1);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].n != g.n()) throw std::invalid_argument("greedy_remove_factors: factor on wrong vertex count");
    Rng rng(seed, {tag(Stream::Greedy), i});
    auto emb = embed_cycle_factor(res.remainder, factors[i].cycles, all, rng, retry_budget);
    if (!emb) throw EmbedError("greedy_remove_factors: embedding failed for factor " + std::to_string(i),
                               static_cast<int>(i));
    for (const auto& cyc : *emb)
      for (std::size_t j = 0; j < cyc.size(); ++j) res.remainder.remove_arc(cyc[j], cyc[(j + 1) % cyc.size()]);
    res.embeddings.push_back(std::move(*emb));
  }
  return res;
}

}  // namespace obk

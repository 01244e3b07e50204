#pragma once

// Sampled (or exhaustive, when small) audit of the extendability hypothesis:
// common neighbourhoods of small disjoint A, B in V and L in W, in every
// colour combination, and the hub clause for 3d-separated (A, B).

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/rng.hpp"
#include "obk/typicality.hpp"
#include "obk/wheel.hpp"

namespace obk {

struct ExtendabilityReport {
  bool pass = true;
  double min_ratio = std::numeric_limits<double>::infinity();      // first clause, count / |V|
  double min_hub_ratio = std::numeric_limits<double>::infinity();  // hub clause, count / |V|
  std::vector<int> witness_a, witness_b, witness_l;
  std::string witness_clause;
  long long samples = 0;
  long long hub_clause_checked = 0;
  long long hub_clause_skipped = 0;
  bool exhaustive = false;
};

namespace detail {

struct ExtIndex {
  int nv, nw, words_v, words_w;
  // [colour slot][vertex] bitsets; slot 0 is colour 0, slot 1 the second colour.
  std::vector<Bits> out[2], in[2], hub_in[2], hubs_of[2];

  ExtIndex(const AuxiliaryDigraph& j, const int colours[2]) : nv(j.nv()), nw(j.nw()) {
    words_v = (nv + 63) / 64;
    words_w = (nw + 63) / 64;
    for (int s = 0; s < 2; ++s) {
      out[s].assign(nv, Bits(words_v, 0));
      in[s].assign(nv, Bits(words_v, 0));
      hub_in[s].assign(nw, Bits(words_v, 0));
      hubs_of[s].assign(nv, Bits(words_w, 0));
    }
    for (const auto& a : j.arcs()) {
      for (int s = 0; s < 2; ++s) {
        if (a.colour != colours[s]) continue;
        if (!j.is_hub(a.u) && !j.is_hub(a.v)) {
          out[s][a.u][a.v / 64] |= 1ULL << (a.v % 64);
          in[s][a.v][a.u / 64] |= 1ULL << (a.u % 64);
        } else if (!j.is_hub(a.u)) {
          int w = a.v - nv;
          hub_in[s][w][a.u / 64] |= 1ULL << (a.u % 64);
          hubs_of[s][a.u][w / 64] |= 1ULL << (w % 64);
        }
      }
    }
  }
};

inline long long count_and(Bits acc, const std::vector<const Bits*>& sets) {
  for (const Bits* b : sets)
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] &= (*b)[k];
  return popcount_and(acc);
}

inline Bits full_bits(int n) {
  Bits b((n + 63) / 64, ~0ULL);
  if (n % 64) b.back() = (1ULL << (n % 64)) - 1;
  if (n == 0) b.clear();
  return b;
}

}  // namespace detail

// colours: the two V-colours (0 and K for the special wheel, 0 and c for W_c).
inline ExtendabilityReport extendability_check(const AuxiliaryDigraph& j, double omega, int h, int d, long long trials,
                                               std::uint64_t seed, int second_colour = kColourK) {
  ExtendabilityReport rep;
  const int colours[2] = {kColour0, second_colour};
  detail::ExtIndex ix(j, colours);
  int nv = j.nv(), nw = j.nw();
  if (nv == 0) return rep;
  Rng rng(seed, {tag(Stream::Trial), 0xE47});
  detail::Bits fullv = detail::full_bits(nv), fullw = detail::full_bits(nw);

  auto evaluate = [&](const std::vector<int>& A, const std::vector<int>& B, const std::vector<int>& L) {
    ++rep.samples;
    for (int sa = 0; sa < 2; ++sa)
      for (int sb = 0; sb < 2; ++sb)
        for (int sl = 0; sl < 2; ++sl) {
          if (A.empty() && sa) continue;
          if (B.empty() && sb) continue;
          if (L.empty() && sl) continue;
          std::vector<const detail::Bits*> sets;
          for (int a : A) sets.push_back(&ix.out[sa][a]);
          for (int b : B) sets.push_back(&ix.in[sb][b]);
          for (int l : L) sets.push_back(&ix.hub_in[sl][l]);
          double r = static_cast<double>(detail::count_and(fullv, sets)) / nv;
          if (r < rep.min_ratio) {
            rep.min_ratio = r;
            if (r < omega) {
              rep.pass = false;
              rep.witness_a = A;
              rep.witness_b = B;
              rep.witness_l = L;
              rep.witness_clause = "N+_" + colour_name(colours[sa]) + "(A) n N-_" + colour_name(colours[sb]) +
                                   "(B) n N-_" + colour_name(colours[sl]) + "(L)";
            }
          }
        }
    if (nw == 0) return;
    std::vector<int> ab = A;
    ab.insert(ab.end(), B.begin(), B.end());
    if (A.empty() || B.empty() || !is_separated(nv, A, B, 3 * d)) {
      ++rep.hub_clause_skipped;
      return;
    }
    ++rep.hub_clause_checked;
    std::vector<const detail::Bits*> sets;
    for (int a : A) sets.push_back(&ix.hubs_of[0][a]);
    for (int b : B) sets.push_back(&ix.hubs_of[1][b]);
    double r = static_cast<double>(detail::count_and(fullw, sets)) / nv;
    if (r < rep.min_hub_ratio) {
      rep.min_hub_ratio = r;
      if (r < omega) {
        rep.pass = false;
        rep.witness_a = A;
        rep.witness_b = B;
        rep.witness_l.clear();
        rep.witness_clause = "hub clause";
      }
    }
  };

  // Exhaustive for h = 1 on small instances: all singletons and pairs.
  double total = static_cast<double>(nv) * (nv + 1) * (nw + 1);
  if (h == 1 && total <= static_cast<double>(trials)) {
    rep.exhaustive = true;
    for (int a = -1; a < nv; ++a)
      for (int b = -1; b < nv; ++b)
        for (int l = -1; l < nw; ++l) {
          if (a >= 0 && a == b) continue;
          if (a < 0 && b < 0 && l < 0) continue;
          std::vector<int> A, B, L;
          if (a >= 0) A.push_back(a);
          if (b >= 0) B.push_back(b);
          if (l >= 0) L.push_back(l);
          evaluate(A, B, L);
        }
    return rep;
  }
  for (long long it = 0; it < trials; ++it) {
    int ka = rng.range(0, h), kb = rng.range(0, h), kl = nw ? rng.range(0, h) : 0;
    if (ka + kb + kl == 0) ka = 1;
    if (ka + kb > nv || kl > nw) continue;
    std::vector<int> pool(nv);
    for (int v = 0; v < nv; ++v) pool[v] = v;
    for (int i = 0; i < ka + kb; ++i) std::swap(pool[i], pool[i + rng.index(nv - i)]);
    std::vector<int> A(pool.begin(), pool.begin() + ka), B(pool.begin() + ka, pool.begin() + ka + kb), L;
    std::vector<int> wpool(nw);
    for (int w = 0; w < nw; ++w) wpool[w] = w;
    for (int i = 0; i < kl; ++i) std::swap(wpool[i], wpool[i + rng.index(nw - i)]);
    L.assign(wpool.begin(), wpool.begin() + kl);
    evaluate(A, B, L);
  }
  return rep;
}

}  // namespace obk

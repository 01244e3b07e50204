#pragma once

// Wheel weights on the auxiliary digraphs and the total weight through an
// arc, either by exhaustive enumeration or by a Knuth-style random descent of
// the same search tree (unbiased for the exact sum).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/factor.hpp"
#include "obk/rng.hpp"
#include "obk/wheel.hpp"
#include "obk/wheel_search.hpp"

namespace obk {

struct WeightScheme {
  int n = 0;
  double alpha = 0.5;
  int K = 8;
  int d = 0;  // K-wheels must be 3d-separated on the rim; 0 disables
  double p_star = 0, p_K = 0;
  std::vector<double> p_w0, p_wK;
  std::vector<std::vector<double>> p_wc;  // [w][c], c in 0..K-1

  int num_hubs() const { return static_cast<int>(p_w0.size()); }

  static WeightScheme from_plan(const FactorPlan& pl, int g) {
    WeightScheme s;
    s.n = pl.params.n;
    s.alpha = pl.params.alpha;
    s.K = pl.params.K;
    s.d = pl.params.d;
    s.p_star = pl.p_gstar[g];
    s.p_K = pl.p_gK[g];
    s.p_w0 = pl.p_w0[g];
    s.p_wK = pl.p_wK[g];
    s.p_wc = pl.p_wc[g];
    return s;
  }

  // W^g_{w,c} for 3 <= c < K and W^g_{w,K} for c == K.
  double expected_count(int w, int c) const {
    double nn = n;
    if (c == K) return std::pow(nn, 8) * alpha * p_K * p_wK[w] * std::pow(alpha * p_star * p_w0[w], 7);
    return std::pow(nn, c) * p_wc[w][c] * std::pow(p_w0[w], c - 1) * std::pow(alpha * p_star, c);
  }
  double prob(int w, int c) const { return c == K ? p_wK[w] : p_wc[w][c]; }
};

// Weight of a single wheel with hub w; absent when the probability is zero.
inline std::optional<double> wheel_weight(const WeightScheme& s, int w, int c) {
  if (w < 0 || w >= s.num_hubs()) throw std::out_of_range("wheel_weight: hub out of range");
  if (c != s.K && (c < 3 || c >= s.K)) throw std::invalid_argument("wheel_weight: bad wheel length");
  double p = s.prob(w, c);
  if (p <= 0) return std::nullopt;
  double wc = s.expected_count(w, c);
  if (!(wc > 0)) return std::nullopt;
  return p * s.n / wc;
}

struct WeightMode {
  bool sampled = false;
  long long count = 0;
  std::uint64_t seed = 0;

  static WeightMode exact() { return {}; }
  static WeightMode sample(long long count, std::uint64_t seed) { return {true, count, seed}; }
};

// Colour-0 rim arcs between close vertices have no usable estimate.
inline bool is_close_rim_arc(const AuxiliaryDigraph& j, const ColouredArc& a, int d) {
  return !j.is_hub(a.u) && !j.is_hub(a.v) && cyclic_distance(j.nv(), a.u, a.v) < 3 * d;
}


// Total wheel weight on the arc in J with the arc added (any colour).
inline double arc_weight_sum(const AuxiliaryDigraph& j, const WeightScheme& s, const ColouredArc& arc,
                             const WeightMode& mode = WeightMode::exact()) {
  if (j.is_hub(arc.u)) throw std::invalid_argument("arc_weight_sum: arcs must start in V");
  if (arc.u == arc.v) throw std::invalid_argument("arc_weight_sum: loop");
  if (j.nv() != s.n) throw std::invalid_argument("arc_weight_sum: scheme and digraph disagree on n");
  if (j.nw() != s.num_hubs()) throw std::invalid_argument("arc_weight_sum: scheme and digraph disagree on |W|");
  if (mode.sampled && mode.count <= 0) throw std::invalid_argument("arc_weight_sum: sample count must be positive");
  detail::ArcIndex ix(j);
  ix.insert(arc);

  std::vector<WheelTemplate> temps;
  std::vector<int> lens;
  for (int c = 3; c < s.K; ++c) {
    bool any = false;
    for (int w = 0; w < s.num_hubs(); ++w) any = any || s.p_wc[w][c] > 0;
    if (any) {
      temps.push_back(WheelTemplate::plain(c));
      lens.push_back(c);
    }
  }
  {
    bool any = false;
    for (int w = 0; w < s.num_hubs(); ++w) any = any || s.p_wK[w] > 0;
    if (any) {
      temps.push_back(WheelTemplate::special(8));
      lens.push_back(s.K);
    }
  }

  double total = 0;
  Rng rng(mode.seed, {tag(Stream::Trial), 0x5E16});
  for (std::size_t ti = 0; ti < temps.size(); ++ti) {
    const auto& t = temps[ti];
    int len = lens[ti];
    int sep = t.kind == WheelKind::Special ? 3 * s.d : 0;
    std::vector<double> wt(s.num_hubs(), 0.0);
    for (int w = 0; w < s.num_hubs(); ++w) wt[w] = wheel_weight(s, w, len).value_or(0.0);
    auto value = [&](int hub) { return wt[hub - j.nv()]; };
    detail::WheelSearch ws(ix, t, sep);
    for (const auto& tarc : t.arcs()) {
      if (tarc.colour != arc.colour) continue;
      if ((tarc.v == t.c) != j.is_hub(arc.v)) continue;
      if (!ws.start(tarc, arc)) continue;
      if (!mode.sampled) {
        ws.enumerate(0, [&](int hub) { total += value(hub); });
      } else {
        double acc = 0;
        for (long long k = 0; k < mode.count; ++k) {
          ws.start(tarc, arc);
          acc += ws.descend(rng, value);
        }
        total += acc / static_cast<double>(mode.count);
      }
    }
  }
  return total;
}

}  // namespace obk

#pragma once

// Greedy embedding of the residual template pieces into G_1.  Each residual
// vertex of factor w goes to a host vertex with a spoke into w in J_1; ends
// that earlier phases fixed stay fixed.  Vertices already used by many
// factors are avoided.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "obk/digraph.hpp"
#include "obk/rng.hpp"
#include "obk/skeleton.hpp"
#include "obk/wheel.hpp"

namespace obk {

struct ResidualOptions {
  int s_cap = -1;             // avoid vertices used by at least this many other factors; -1 disables
  long long budget = 200'000;  // search nodes per piece
  int attempts = 3;            // reshuffled retries per piece
};

struct ResidualResult {
  bool ok = true;
  int failed_hub = -1;
  std::string failed_step;
  Digraph G1_prime;                    // host minus approx and residual images
  std::vector<std::vector<int>> Z;     // per hub, sorted host vertices
  std::vector<int> use_count;          // per host vertex, factors with a residual image there
  long long nodes = 0;
  int pieces = 0;
};

namespace detail {

class ResidualEmbedder {
 public:
  ResidualEmbedder(FactorSkeleton& sk, Digraph& avail, const std::vector<char>& allowed,
                   const std::vector<char>& overloaded, Rng& rng, long long budget)
      : sk_(sk), avail_(avail), allowed_(allowed), overloaded_(overloaded), rng_(rng), budget_(budget) {}

  // Embeds the run; on failure the skeleton and the available arcs are untouched.
  bool embed(const TemplateRun& r, long long& nodes) {
    run_ = &r;
    nodes_ = 0;
    taken_.clear();
    bool ok;
    if (sk_.phi(r.verts[0]) >= 0) {
      ok = step(1);
    } else {
      ok = false;
      std::vector<int> cand;
      for (int x = 0; x < avail_.n(); ++x)
        if (usable(x)) cand.push_back(x);
      rng_.shuffle(cand);
      for (int x : cand) {
        if (nodes_ >= budget_) break;
        sk_.map(r.verts[0], x);
        if (step(1)) {
          ok = true;
          break;
        }
        sk_.unmap(r.verts[0]);
      }
    }
    nodes += nodes_;
    if (ok) sk_.claim(r.verts, r.closed, Phase::Residual);
    return ok;
  }

 private:
  bool usable(int x) const { return allowed_[x] && !overloaded_[x] && sk_.preimage(x) < 0; }

  void take(int u, int v) {
    avail_.remove_arc(u, v);
    taken_.push_back({u, v});
  }
  void give_back() {
    avail_.add_arc(taken_.back().u, taken_.back().v);
    taken_.pop_back();
  }

  // Template vertex verts[i] gets its image; verts[i-1] already has one.
  bool step(std::size_t i) {
    const auto& v = run_->verts;
    if (++nodes_ > budget_) return false;
    int prev = sk_.phi(v[i - 1]);
    if (i == v.size()) {
      // Closing arc of a cycle.
      if (!avail_.has_arc(prev, sk_.phi(v[0]))) return false;
      take(prev, sk_.phi(v[0]));
      return true;
    }
    int fixed = sk_.phi(v[i]);
    bool last_open = !run_->closed && i + 1 == v.size();
    if (fixed >= 0) {
      if (!avail_.has_arc(prev, fixed)) return false;
      take(prev, fixed);
      if (last_open || step(i + 1)) return true;
      give_back();
      return false;
    }
    // The next image, when already fixed, must be reachable.
    int ahead = -1;
    if (run_->closed && i + 1 == v.size()) ahead = sk_.phi(v[0]);
    else if (i + 1 < v.size()) ahead = sk_.phi(v[i + 1]);
    std::vector<int> cand;
    for (int x : avail_.out(prev))
      if (usable(x) && (ahead < 0 || avail_.has_arc(x, ahead))) cand.push_back(x);
    rng_.shuffle(cand);
    for (int x : cand) {
      sk_.map(v[i], x);
      take(prev, x);
      if (last_open || step(i + 1)) return true;
      give_back();
      sk_.unmap(v[i]);
      if (nodes_ > budget_) return false;
    }
    return false;
  }

  FactorSkeleton& sk_;
  Digraph& avail_;
  const std::vector<char>& allowed_;
  const std::vector<char>& overloaded_;
  Rng& rng_;
  long long budget_;
  const TemplateRun* run_ = nullptr;
  long long nodes_ = 0;
  std::vector<Arc> taken_;
};

}  // namespace detail

// The template arcs tagged Residual are embedded into G1 minus `used` (arcs of
// earlier phases).  G is the host the group decomposes; G'_1 is G minus the
// approx and residual images.
inline ResidualResult embed_residuals(const Digraph& G, const Digraph& G1, const AuxiliaryDigraph& J1,
                                      const Digraph& approx_used, std::vector<FactorSkeleton>& sk, std::uint64_t seed,
                                      const ResidualOptions& opt = {}) {
  const int n = G.n(), W = static_cast<int>(sk.size());
  if (J1.nv() != n || J1.nw() != W || G1.n() != n) throw std::invalid_argument("embed_residuals: size mismatch");
  ResidualResult res;
  res.use_count.assign(n, 0);
  res.Z.assign(W, {});
  Digraph avail = G1;
  for (const Arc& a : approx_used.arcs()) avail.remove_arc(a.u, a.v);

  std::vector<std::vector<char>> allowed(W, std::vector<char>(n, 0));
  for (const auto& a : J1.arcs())
    if (J1.is_hub(a.v) && !J1.is_hub(a.u)) allowed[a.v - n][a.u] = 1;

  Rng rng(seed, {tag(Stream::Residual)});
  std::vector<int> order(W);
  for (int w = 0; w < W; ++w) order[w] = w;
  rng.shuffle(order);
  std::vector<char> overloaded(n, 0);
  for (int w : order) {
    auto& s = sk[w];
    auto runs = s.runs([&](int a) { return s.phase(a) == Phase::Residual; });
    // The runs are re-tagged once embedded; clear the tags so that failure is visible.
    for (const auto& r : runs) s.claim(r.verts, r.closed, Phase::Unassigned);
    std::vector<int> before(n, 0);
    for (int x = 0; x < n; ++x) before[x] = s.preimage(x) >= 0;
    for (int x = 0; x < n; ++x) overloaded[x] = opt.s_cap >= 0 && res.use_count[x] >= opt.s_cap;
    std::size_t k = 0;
    for (const auto& r : runs) {
      ++res.pieces;
      bool done = false;
      for (int t = 0; t < std::max(1, opt.attempts) && !done; ++t) {
        detail::ResidualEmbedder emb(s, avail, allowed[w], overloaded, rng, opt.budget);
        done = emb.embed(r, res.nodes);
      }
      if (!done) {
        res.ok = false;
        res.failed_hub = w;
        res.failed_step = "residual piece " + std::to_string(k) + " of " + std::to_string(runs.size()) + " (" +
                          std::to_string(r.num_arcs()) + " arcs)";
        return res;
      }
      ++k;
    }
    for (int x = 0; x < n; ++x)
      if (!before[x] && s.preimage(x) >= 0) ++res.use_count[x];
  }

  res.G1_prime = G;
  for (const Arc& a : approx_used.arcs()) res.G1_prime.remove_arc(a.u, a.v);
  for (const Arc& a : G1.arcs())
    if (!avail.has_arc(a.u, a.v) && !approx_used.has_arc(a.u, a.v)) res.G1_prime.remove_arc(a.u, a.v);
  for (int w = 0; w < W; ++w) {
    const auto& s = sk[w];
    auto outer = [](Phase p) { return p == Phase::Approx || p == Phase::Residual; };
    for (int a = 0; a < s.n(); ++a)
      if (outer(s.phase(a)) && outer(s.phase(s.prev(a))) && s.phi(a) >= 0) res.Z[w].push_back(s.phi(a));
    std::sort(res.Z[w].begin(), res.Z[w].end());
  }
  return res;
}

}  // namespace obk

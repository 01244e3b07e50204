#pragma once

// A factor drawn on abstract vertices 0..n-1 as consecutive cycles (or the
// spec's realization).  Every template arc a -> next[a] is tagged with the
// phase that realizes it, and phi maps template vertices to host vertices as
// the phases go.  Once phi is a bijection the factor is its image.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/factor.hpp"
#include "obk/greedy_removal.hpp"

namespace obk {

enum class Phase : std::uint8_t { Unassigned, Approx, Residual, Exact };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Approx: return "approx";
    case Phase::Residual: return "residual";
    case Phase::Exact: return "exact";
    default: return "unassigned";
  }
}

// A maximal run of template arcs: verts[0] -> ... -> verts.back(), closed
// when it is a whole cycle (the closing arc back to verts[0] included).
struct TemplateRun {
  std::vector<int> verts;
  bool closed = false;
  int num_arcs() const { return closed ? static_cast<int>(verts.size()) : static_cast<int>(verts.size()) - 1; }
};

class FactorSkeleton {
 public:
  FactorSkeleton() = default;

  FactorSkeleton(const OneFactorSpec& f, const FactorSplit& s) : n_(f.n) {
    if (!f.realization.empty()) {
      cycles_ = f.realization;
    } else {
      int v = 0;
      for (int L : f.cycles) {
        std::vector<int> c;
        for (int i = 0; i < L; ++i) c.push_back(v++);
        cycles_.push_back(c);
      }
    }
    // The split indexes the spec's cycle list; realizations are matched by position.
    if (!f.realization.empty()) {
      for (std::size_t i = 0; i < f.cycles.size(); ++i)
        if (static_cast<int>(cycles_[i].size()) != f.cycles[i])
          throw std::invalid_argument("FactorSkeleton: realization must list cycles in spec order");
    }
    next_.assign(n_, -1);
    prev_.assign(n_, -1);
    cycle_of_.assign(n_, -1);
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
      const auto& cy = cycles_[c];
      for (std::size_t i = 0; i < cy.size(); ++i) {
        next_[cy[i]] = cy[(i + 1) % cy.size()];
        prev_[cy[(i + 1) % cy.size()]] = cy[i];
        cycle_of_[cy[i]] = static_cast<int>(c);
      }
    }
    f1_.assign(n_, 0);
    for (int c : s.f1_index)
      for (int v : cycles_[c]) f1_[v] = 1;
    if (s.cut_cycle >= 0)
      for (int i = 0; i + 1 < s.cut_kept; ++i) f1_[cycles_[s.cut_cycle][i]] = 1;
    phase_.assign(n_, Phase::Unassigned);
    phi_.assign(n_, -1);
    inv_.assign(n_, -1);
  }

  int n() const { return n_; }
  const std::vector<std::vector<int>>& cycles() const { return cycles_; }
  int next(int a) const { return next_[a]; }
  int prev(int a) const { return prev_[a]; }
  int cycle_of(int a) const { return cycle_of_[a]; }
  bool in_f1(int a) const { return f1_[a] != 0; }  // of the arc a -> next(a)
  Phase phase(int a) const { return phase_[a]; }
  int phi(int a) const { return phi_[a]; }
  int preimage(int host) const { return inv_[host]; }

  void set_phase(int a, Phase p) { phase_[a] = p; }

  bool can_map(int a, int host) const { return phi_[a] == host || (phi_[a] < 0 && inv_[host] < 0); }
  void map(int a, int host) {
    if (phi_[a] == host) return;
    if (!can_map(a, host))
      throw std::logic_error("FactorSkeleton: template vertex " + std::to_string(a) + " cannot map to " +
                             std::to_string(host));
    phi_[a] = host;
    inv_[host] = a;
  }
  void unmap(int a) {
    if (phi_[a] < 0) return;
    inv_[phi_[a]] = -1;
    phi_[a] = -1;
  }

  // Marks the arcs of a run's vertex sequence (and the closing arc if closed).
  void claim(const std::vector<int>& verts, bool closed, Phase p) {
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) phase_[verts[i]] = p;
    if (closed) phase_[verts.back()] = p;
  }

  template <class Pred>
  std::vector<TemplateRun> runs(Pred keep) const {
    std::vector<TemplateRun> out;
    for (const auto& cy : cycles_) {
      int L = static_cast<int>(cy.size());
      bool all = true;
      for (int v : cy) all = all && keep(v);
      if (all) {
        out.push_back({cy, true});
        continue;
      }
      for (int i = 0; i < L; ++i) {
        int v = cy[i];
        if (!keep(v) || keep(prev_[v])) continue;
        TemplateRun r;
        r.verts.push_back(v);
        for (int u = v; keep(u); u = next_[u]) r.verts.push_back(next_[u]);
        out.push_back(std::move(r));
      }
    }
    return out;
  }

  bool complete() const {
    for (int a = 0; a < n_; ++a)
      if (phi_[a] < 0 || phase_[a] == Phase::Unassigned) return false;
    return true;
  }

  CycleSet image() const {
    CycleSet out;
    for (const auto& cy : cycles_) {
      std::vector<int> c;
      for (int v : cy) c.push_back(phi_[v]);
      out.push_back(c);
    }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> cycles_;
  std::vector<int> next_, prev_, cycle_of_;
  std::vector<char> f1_;
  std::vector<Phase> phase_;
  std::vector<int> phi_, inv_;
};

enum class Placement { Interior, AtStart, AtEnd };

// Template vertices for a path of `arcs` arcs inside the run.  Interior
// placements keep two run arcs free on each side; a flush placement leaves
// either nothing or at least two arcs on its open side.
inline std::optional<std::vector<int>> place_in_run(const TemplateRun& r, int arcs, Placement how) {
  int m = r.num_arcs();
  auto slice = [&](int from) {
    std::vector<int> v;
    for (int i = 0; i <= arcs; ++i) v.push_back(r.verts[(from + i) % r.verts.size()]);
    return v;
  };
  if (arcs <= 0) return std::nullopt;
  if (r.closed) {
    if (how != Placement::Interior || m < arcs + 4) return std::nullopt;
    return slice(2);
  }
  switch (how) {
    case Placement::Interior:
      if (m < arcs + 4) return std::nullopt;
      return slice(2);
    case Placement::AtStart:
      if (m != arcs && m < arcs + 2) return std::nullopt;
      return slice(0);
    case Placement::AtEnd:
      if (m != arcs && m < arcs + 2) return std::nullopt;
      return slice(m - arcs);
  }
  return std::nullopt;
}

}  // namespace obk

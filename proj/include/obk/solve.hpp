#pragma once

// The end-to-end driver.  Small hosts go to the direct search; larger ones run
// the randomized pipeline group by group and compose each factor from the
// template phases.  Every returned decomposition is re-checked before return.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "obk/approx.hpp"
#include "obk/cyclic.hpp"
#include "obk/digraph.hpp"
#include "obk/direct.hpp"
#include "obk/exact_cover.hpp"
#include "obk/factor.hpp"
#include "obk/greedy_removal.hpp"
#include "obk/orient.hpp"
#include "obk/perturb.hpp"
#include "obk/pipeline.hpp"
#include "obk/residual.hpp"
#include "obk/skeleton.hpp"
#include "obk/split.hpp"
#include "obk/weights.hpp"

namespace obk {

struct SolveConfig {
  int direct_threshold = 12;  // hosts with n at most this go to the direct search
  DirectOptions direct;
  int K = 8;
  int d = 0;  // 0 picks a multiple of (2s)^(2s) near n/32
  int s = 1;
  int L = 4;
  double eta = 0.2;
  std::optional<double> floor = 0.01;
  CaseThresholds thresholds;
  ApproxOptions approx = desk_approx();
  ResidualOptions residual;
  PerturbOptions perturb;
  CoverOptions cover;
  int attempts = 1;  // pipeline runs with seeds seed, seed+1, ...

  static ApproxOptions desk_approx() {
    ApproxOptions a;
    a.bad_c = 1e-3;
    a.bad_k = 1e-3;
    return a;
  }

  int pick_d(int n) const {
    if (d > 0) return d;
    long long base = 1;
    for (int k = 0; k < 2 * s; ++k) base *= 2LL * s;
    long long v = std::max(base, base * (n / (32 * base)));
    return static_cast<int>(v);
  }
};

enum class Provenance : std::uint8_t { Direct, Greedy, Approx, Residual, Exact };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Direct: return "direct";
    case Provenance::Greedy: return "greedy";
    case Provenance::Approx: return "approx";
    case Provenance::Residual: return "residual";
    default: return "exact";
  }
}

struct Certificate {
  std::vector<CycleSet> factors;  // in the order of the factor specs
  // provenance[w][i][k]: phase of the arc leaving the k-th vertex of cycle i
  std::vector<std::vector<std::vector<Provenance>>> provenance;
};

struct FailureReport {
  std::string stage;
  std::uint64_t seed = 0;
  std::string message;
  std::map<std::string, long long> counters;

  std::string text() const {
    std::ostringstream os;
    os << "stage " << stage << "\nseed " << seed << "\n";
    if (!message.empty()) os << "message " << message << "\n";
    for (const auto& [k, v] : counters) os << "counter " << k << " " << v << "\n";
    return os.str();
  }
};

enum class SolveStatus { Solved, Infeasible, Failed };

struct SolveResult {
  SolveStatus status = SolveStatus::Failed;
  std::string method;  // "direct" or "pipeline"
  Certificate certificate;
  FailureReport failure;
};

namespace detail {

struct StageError {
  std::string stage, message;
};

// The arcs of the factors must be exactly the host's, each factor of its type.
inline std::string check_decomposition(const Digraph& g, const std::vector<OneFactorSpec>& fs,
                                       const std::vector<CycleSet>& cs, bool undirected) {
  if (cs.size() != fs.size()) return "factor count";
  std::map<std::pair<int, int>, int> use;
  for (std::size_t w = 0; w < cs.size(); ++w) {
    std::vector<int> seen(g.n(), 0), lens;
    for (const auto& c : cs[w]) {
      lens.push_back(static_cast<int>(c.size()));
      for (std::size_t i = 0; i < c.size(); ++i) {
        int u = c[i], v = c[(i + 1) % c.size()];
        if (u < 0 || u >= g.n() || seen[u]++) return "factor " + std::to_string(w) + " is not spanning";
        if (undirected && u > v) std::swap(u, v);
        ++use[{u, v}];
      }
    }
    if (sorted_type(lens) != sorted_type(fs[w].cycles)) return "factor " + std::to_string(w) + " has the wrong type";
  }
  std::size_t host = 0;
  for (const Arc& a : g.arcs()) {
    int u = a.u, v = a.v;
    if (undirected) {
      if (u > v) continue;
    }
    ++host;
    auto it = use.find({u, v});
    if (it == use.end() || it->second != 1) return "arc " + std::to_string(u) + "->" + std::to_string(v);
  }
  if (host != use.size()) return "foreign arcs";
  return "";
}

inline Digraph as_symmetric(const Graph& g) {
  Digraph d(g.n());
  for (auto [u, v] : g.edges()) {
    d.add_arc(u, v);
    d.add_arc(v, u);
  }
  return d;
}

inline std::vector<std::vector<int>> types_of(const std::vector<OneFactorSpec>& fs) {
  std::vector<std::vector<int>> t;
  for (const auto& f : fs) t.push_back(f.cycles);
  return t;
}

inline void fill_provenance(Certificate& c, std::size_t w, Provenance p) {
  c.provenance[w].clear();
  for (const auto& cyc : c.factors[w]) c.provenance[w].push_back(std::vector<Provenance>(cyc.size(), p));
}

inline Provenance from_phase(Phase p) {
  switch (p) {
    case Phase::Approx: return Provenance::Approx;
    case Phase::Residual: return Provenance::Residual;
    default: return Provenance::Exact;
  }
}

// Case K: one F^1 path of 8l arcs from a to a+l per interval [a, l], keyed by a.
inline bool allocate_exact_paths(FactorSkeleton& s, const std::vector<Interval>& Y1,
                                 std::map<int, std::vector<int>>& out, std::string& err) {
  auto free1 = [&](int a) { return s.in_f1(a) && s.phase(a) == Phase::Unassigned; };
  for (const Interval& iv : Y1) {
    int arcs = 8 * iv.length, a = iv.start, b = interval_successor(s.n(), iv);
    auto runs = s.runs(free1);
    int best = -1;
    std::optional<std::vector<int>> spot;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      auto p = place_in_run(runs[i], arcs, Placement::Interior);
      if (!p || !s.can_map(p->front(), a) || !s.can_map(p->back(), b)) continue;
      if (best < 0 || runs[i].num_arcs() < runs[best].num_arcs()) {
        best = static_cast<int>(i);
        spot = p;
      }
    }
    if (!spot) {
      err = "no room in F^1 for a path of " + std::to_string(arcs) + " arcs";
      return false;
    }
    s.map(spot->front(), a);
    s.map(spot->back(), b);
    s.claim(*spot, false, Phase::Exact);
    out[a] = *spot;
  }
  return true;
}

// Case Ell: up to `room` whole F^1 cycles.
inline std::vector<std::vector<int>> allocate_exact_cycles(FactorSkeleton& s, int room) {
  std::vector<std::vector<int>> out;
  for (const auto& r : s.runs([&](int a) { return s.in_f1(a) && s.phase(a) == Phase::Unassigned; })) {
    if (!r.closed || static_cast<int>(out.size()) >= room) continue;
    s.claim(r.verts, true, Phase::Exact);
    out.push_back(r.verts);
  }
  return out;
}

inline std::string map_onto(FactorSkeleton& s, const std::vector<int>& tv, const std::vector<int>& hv) {
  for (std::size_t i = 0; i < tv.size(); ++i) {
    if (!s.can_map(tv[i], hv[i])) return "host vertex " + std::to_string(hv[i]) + " used twice";
    s.map(tv[i], hv[i]);
  }
  return "";
}

// The rims of the plain wheels at the hub become the allocated cycles.
inline std::string compose_cycles(FactorSkeleton& s, const std::vector<std::vector<int>>& cycles,
                                  const std::vector<WheelCopy>& wheels) {
  if (wheels.size() != cycles.size())
    return std::to_string(wheels.size()) + " wheels for " + std::to_string(cycles.size()) + " cycles";
  for (std::size_t i = 0; i < wheels.size(); ++i) {
    auto e = map_onto(s, cycles[i], wheels[i].rim);
    if (!e.empty()) return e;
  }
  return s.complete() ? "" : "template not fully mapped";
}

// The K-wheels at the hub decode into host paths a -> a+l, one per allocated path.
inline std::string compose_paths(FactorSkeleton& s, const std::map<int, std::vector<int>>& paths,
                                 const std::vector<WheelCopy>& wheels) {
  std::vector<ColouredCycle> fam;
  for (const auto& wc : wheels) {
    ColouredCycle cyc{wc.rim, std::vector<int>(wc.rim.size(), kColour0)};
    cyc.colours[wc.tmpl.c - 2] = kColourK;
    fam.push_back(std::move(cyc));
  }
  std::vector<HostPath> decoded;
  try {
    decoded = twist_decode(fam, CyclicOrder(s.n()));
  } catch (const std::exception& e) {
    return e.what();
  }
  if (decoded.size() != paths.size())
    return std::to_string(decoded.size()) + " decoded paths for " + std::to_string(paths.size()) + " intervals";
  for (const auto& p : decoded) {
    auto it = paths.find(p.verts.front());
    if (it == paths.end() || it->second.size() != p.verts.size())
      return "decoded path from " + std::to_string(p.verts.front()) + " matches no interval";
    auto e = map_onto(s, it->second, p.verts);
    if (!e.empty()) return e;
  }
  return s.complete() ? "" : "template not fully mapped";
}

// One case group on its host part H, which is regular of degree
// |members| + |greedy|.  Fills cert for those factors or throws StageError.
class GroupRun {
 public:
  GroupRun(const Digraph& H, const std::vector<OneFactorSpec>& fs, const CaseGroup& grp, const SolveConfig& cfg,
           std::uint64_t seed, Certificate& cert, std::map<std::string, long long>& counters)
      : H_(H), fs_(fs), grp_(grp), cfg_(cfg), seed_(seed), cert_(cert), ctr_(counters), n_(H.n()) {}

  void run() {
    Digraph rem = remove_greedy();
    W_ = static_cast<int>(grp_.members.size());
    if (W_ == 0) return;
    d_ = cfg_.pick_d(n_);
    prepare_plan();
    IntervalSystem sys = make_system();
    IntervalsOutcome io;
    DigraphOutcome dg;
    guard("intervals", [&] { io = run_intervals(plan_, sys, derive_seed(seed_, {tag(Stream::Intervals)})); });
    guard("digraph", [&] { dg = run_digraph(rem, plan_, sys, io, derive_seed(seed_, {tag(Stream::Digraph)})); });
    ctr_["t1"] = io.t_total[0];

    // Y^1_w as intervals of the hub's class.
    Y1_.assign(W_, {});
    for (int w = 0; w < W_; ++w) {
      const auto& cl = sys.cls(io.scale[w], io.offset[w]);
      for (int i : io.Y[0][w]) Y1_[w].push_back(cl.intervals[i]);
    }

    ApproxResult ar;
    guard("approx", [&] {
      ar = approx_decompose(dg.J[1], dg.G[1], WeightScheme::from_plan(plan_, 1), &sk_,
                            derive_seed(seed_, {tag(Stream::Approx)}), cfg_.approx);
    });
    ctr_["approx_wheels"] += static_cast<long long>(ar.wheels.size());
    ctr_["approx_dropped_cycles"] += ar.dropped_cycles;
    if (!ar.ok()) fail("approx", std::to_string(ar.stuck.size()) + " host pieces found no room in F^2");

    allocate_exact(dg.J[0]);
    for (auto& s : sk_)
      for (int a = 0; a < s.n(); ++a)
        if (s.phase(a) == Phase::Unassigned) s.set_phase(a, Phase::Residual);

    Digraph approx_used(n_);
    for (const auto& ps : ar.G2w)
      for (const auto& p : ps)
        for (const Arc& a : detail::piece_arcs(p)) approx_used.add_arc(a.u, a.v);
    ResidualResult rr;
    guard("residual", [&] {
      rr = embed_residuals(rem, dg.G[0], dg.J[0], approx_used, sk_, derive_seed(seed_, {tag(Stream::Residual)}),
                           cfg_.residual);
    });
    ctr_["residual_pieces"] += rr.pieces;
    if (!rr.ok) fail("residual", "hub " + std::to_string(rr.failed_hub) + ": " + rr.failed_step);

    PerturbOptions po = cfg_.perturb;
    po.d = tag_.kind == CaseTag::K ? d_ : 0;
    po.seed = derive_seed(seed_, {tag(Stream::Perturb)});
    PerturbationState ps;
    guard("perturb", [&] {
      ps = tag_.kind == CaseTag::K ? build_perturbation_k(dg.J[0], rr.G1_prime, rr.Z, Y1_, io.t_total[0], po)
                                   : build_perturbation_ell(dg.J[0], rr.G1_prime, rr.Z, tag_.ell, po);
    });
    ctr_["perturb_changes"] += static_cast<long long>(ps.log.size());
    if (!ps.ok) fail("perturb:" + ps.stage, ps.error);

    CoverOptions co = cfg_.cover;
    co.sep = tag_.kind == CaseTag::K ? 3 * d_ : 0;
    co.seed = derive_seed(seed_, {tag(Stream::Exact)});
    WheelTemplate t = tag_.kind == CaseTag::K ? WheelTemplate::special(8) : WheelTemplate::plain(tag_.ell);
    auto cr = exact_wheel_decomposition(ps.P_prime, t, co);
    ctr_["exact_nodes"] += cr.nodes;
    ctr_["exact_options"] += static_cast<long long>(cr.options);
    if (cr.status != SearchStatus::Found)
      fail("exact", std::string(status_name(cr.status)) + (cr.fast_failed ? " (divisibility)" : "") +
                        (cr.options_capped ? " (option cap)" : ""));

    std::vector<WheelCopy> wheels = cr.wheels;
    wheels.insert(wheels.end(), ps.E.begin(), ps.E.end());
    compose(wheels);
  }

 private:
  template <class F>
  void guard(const char* stage, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      fail(stage, e.what());
    }
  }
  [[noreturn]] void fail(const std::string& stage, const std::string& msg) {
    throw StageError{grp_.tag.name() + ":" + stage, msg};
  }

  Digraph remove_greedy() {
    if (grp_.greedy.empty()) return H_;
    std::vector<OneFactorSpec> gs;
    for (int w : grp_.greedy) gs.push_back(fs_[w]);
    GreedyRemovalResult gr;
    guard("greedy", [&] { gr = greedy_remove_factors(H_, gs, derive_seed(seed_, {tag(Stream::Greedy)})); });
    for (std::size_t i = 0; i < grp_.greedy.size(); ++i) {
      int w = grp_.greedy[i];
      cert_.factors[w] = gr.embeddings[i];
      fill_provenance(cert_, w, Provenance::Greedy);
    }
    return gr.remainder;
  }

  void prepare_plan() {
    tag_ = grp_.tag;
    PlanParams pp;
    pp.eta = cfg_.eta;
    pp.K = cfg_.K;
    pp.d = d_;
    pp.s = cfg_.s;
    pp.L = cfg_.L;
    pp.alpha = static_cast<double>(W_) / n_;
    pp.n = n_;
    pp.floor = cfg_.floor;
    std::vector<FactorSplit> splits;
    guard("split", [&] {
      for (int w : grp_.members) splits.push_back(split_factor(fs_[w], tag_, {cfg_.K, cfg_.L, n_}));
    });
    guard("plan", [&] { plan_ = compute_plan(splits, pp); });
    for (int i = 0; i < W_; ++i) sk_.emplace_back(fs_[grp_.members[i]], splits[i]);
  }

  IntervalSystem make_system() {
    try {
      return IntervalSystem(n_, d_, cfg_.s);
    } catch (const std::exception& e) {
      fail("intervals", e.what());
    }
  }

  void allocate_exact(const AuxiliaryDigraph& J1) {
    exact_paths_.assign(W_, {});
    exact_cycles_.assign(W_, {});
    for (int w = 0; w < W_; ++w) {
      std::string err;
      if (tag_.kind == CaseTag::Ell) {
        int spokes = 0;
        for (const auto& a : J1.arcs())
          if (a.v == n_ + w && !J1.is_hub(a.u)) ++spokes;
        exact_cycles_[w] = allocate_exact_cycles(sk_[w], spokes / tag_.ell);
        ctr_["exact_cycles"] += static_cast<long long>(exact_cycles_[w].size());
      } else if (!allocate_exact_paths(sk_[w], Y1_[w], exact_paths_[w], err)) {
        fail("allocate", "hub " + std::to_string(w) + ": " + err);
      }
    }
  }

  void compose(const std::vector<WheelCopy>& wheels) {
    std::vector<std::vector<WheelCopy>> at(W_);
    for (const auto& wc : wheels) at[wc.hub - n_].push_back(wc);
    for (int w = 0; w < W_; ++w) {
      auto& s = sk_[w];
      std::string err = tag_.kind == CaseTag::Ell ? compose_cycles(s, exact_cycles_[w], at[w])
                                                  : compose_paths(s, exact_paths_[w], at[w]);
      if (!err.empty()) fail("compose", "hub " + std::to_string(w) + ": " + err);
      int f = grp_.members[w];
      cert_.factors[f] = s.image();
      cert_.provenance[f].clear();
      for (const auto& cy : s.cycles()) {
        std::vector<Provenance> p;
        for (int a : cy) p.push_back(from_phase(s.phase(a)));
        cert_.provenance[f].push_back(std::move(p));
      }
    }
  }

  const Digraph& H_;
  const std::vector<OneFactorSpec>& fs_;
  const CaseGroup& grp_;
  const SolveConfig& cfg_;
  std::uint64_t seed_;
  Certificate& cert_;
  std::map<std::string, long long>& ctr_;
  int n_, W_ = 0, d_ = 0;
  CaseTag tag_;
  FactorPlan plan_;
  std::vector<FactorSkeleton> sk_;
  std::vector<std::vector<Interval>> Y1_;
  std::vector<std::map<int, std::vector<int>>> exact_paths_;  // by host start a
  std::vector<std::vector<std::vector<int>>> exact_cycles_;
};

inline SolveResult run_pipeline(const Digraph& G, const std::vector<OneFactorSpec>& fs, const SolveConfig& cfg,
                                std::uint64_t seed) {
  SolveResult res;
  res.method = "pipeline";
  res.failure.seed = seed;
  Certificate cert;
  cert.factors.assign(fs.size(), {});
  cert.provenance.assign(fs.size(), {});
  auto& ctr = res.failure.counters;
  try {
    CaseGrouping cg;
    try {
      cg = classify_cases(fs, cfg.thresholds);
    } catch (const std::exception& e) {
      throw StageError{"classify", e.what()};
    }
    cg.groups.erase(std::remove_if(cg.groups.begin(), cg.groups.end(),
                                   [](const CaseGroup& g) { return g.members.empty() && g.greedy.empty(); }),
                    cg.groups.end());
    ctr["groups"] = static_cast<long long>(cg.groups.size());
    std::vector<Digraph> parts;
    if (cg.groups.size() == 1) {
      parts.push_back(G);
    } else {
      std::vector<double> alphas;
      for (const auto& g : cg.groups)
        alphas.push_back(static_cast<double>(g.members.size() + g.greedy.size()) / G.n());
      try {
        parts = split_regular(G, alphas, derive_seed(seed, {tag(Stream::Split)}));
      } catch (const std::exception& e) {
        throw StageError{"split_regular", e.what()};
      }
    }
    for (std::size_t i = 0; i < cg.groups.size(); ++i) {
      GroupRun gr(parts[i], fs, cg.groups[i], cfg, derive_seed(seed, {tag(Stream::Driver), i}), cert, ctr);
      gr.run();
    }
  } catch (const StageError& e) {
    res.failure.stage = e.stage;
    res.failure.message = e.message;
    return res;
  }
  res.status = SolveStatus::Solved;
  res.certificate = std::move(cert);
  return res;
}

inline void check_input(int n, int host_degree, int per_factor, const std::vector<OneFactorSpec>& fs) {
  for (const auto& f : fs) {
    if (f.n != n) throw std::invalid_argument("solve: factor on the wrong vertex count");
    f.validate();
  }
  if (host_degree < 0) throw std::invalid_argument("solve: host is not regular");
  if (host_degree != per_factor * static_cast<int>(fs.size()))
    throw std::invalid_argument("solve: host degree does not match the number of factors");
}

inline SolveResult finish(SolveResult r, const Digraph& g, const std::vector<OneFactorSpec>& fs, bool undirected) {
  if (r.status != SolveStatus::Solved) return r;
  std::string bad = check_decomposition(g, fs, r.certificate.factors, undirected);
  if (!bad.empty()) {
    r.status = SolveStatus::Failed;
    r.failure.stage = "verify";
    r.failure.message = bad;
    r.certificate = {};
  }
  return r;
}

inline SolveResult from_direct(const DirectResult& dr, std::size_t m) {
  SolveResult r;
  r.method = "direct";
  r.failure.counters["direct_nodes"] = dr.nodes;
  if (dr.status == SearchStatus::Infeasible) {
    r.status = SolveStatus::Infeasible;
  } else if (dr.status == SearchStatus::BudgetExhausted) {
    r.failure.stage = "direct";
    r.failure.message = "budget exhausted";
  } else {
    r.status = SolveStatus::Solved;
    r.certificate.factors = dr.factors;
    r.certificate.provenance.assign(m, {});
    for (std::size_t w = 0; w < m; ++w) fill_provenance(r.certificate, w, Provenance::Direct);
  }
  return r;
}

}  // namespace detail

// Decomposes the regular digraph g into the given one-factors.
inline SolveResult solve(const Digraph& g, const std::vector<OneFactorSpec>& fs, const SolveConfig& cfg = {},
                         std::uint64_t seed = 0) {
  detail::check_input(g.n(), g.regularity(), 1, fs);
  if (g.n() <= cfg.direct_threshold) {
    auto r = detail::from_direct(direct_decompose(g, detail::types_of(fs), cfg.direct), fs.size());
    r.failure.seed = seed;
    return detail::finish(std::move(r), g, fs, false);
  }
  SolveResult r;
  for (int a = 0; a < std::max(1, cfg.attempts); ++a) {
    r = detail::finish(detail::run_pipeline(g, fs, cfg, seed + a), g, fs, false);
    if (r.status == SolveStatus::Solved) break;
  }
  return r;
}

// Decomposes the regular graph g into the given two-factors.
inline SolveResult solve(const Graph& g, const std::vector<OneFactorSpec>& fs, const SolveConfig& cfg = {},
                         std::uint64_t seed = 0) {
  detail::check_input(g.n(), g.regularity(), 2, fs);
  Digraph sym = detail::as_symmetric(g);
  if (g.n() <= cfg.direct_threshold) {
    auto r = detail::from_direct(direct_decompose(g, detail::types_of(fs), cfg.direct), fs.size());
    r.failure.seed = seed;
    return detail::finish(std::move(r), sym, fs, true);
  }
  SolveResult r;
  for (int a = 0; a < std::max(1, cfg.attempts); ++a) {
    Digraph d = orient_regular(g, derive_seed(seed + a, {tag(Stream::Orient)}));
    r = detail::finish(detail::run_pipeline(d, fs, cfg, seed + a), sym, fs, true);
    if (r.status == SolveStatus::Solved) break;
  }
  return r;
}

}  // namespace obk

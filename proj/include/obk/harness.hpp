#pragma once

// Glue between the file formats and the solver: hosts, factor specs and
// configuration from an instance, certificates back to the file format, and
// the plan and weight surveys behind the inspection commands.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obk/digraph.hpp"
#include "obk/factor.hpp"
#include "obk/io.hpp"
#include "obk/pipeline.hpp"
#include "obk/solve.hpp"
#include "obk/weights.hpp"

namespace obk::harness {

struct Host {
  bool undirected = true;
  Graph graph;
  Digraph digraph;
};

inline Host host_of(const io::Instance& in) {
  Host h;
  h.undirected = !in.directed();
  if (in.mode == io::Mode::Oberwolfach) {
    h.graph = complete_graph(in.n);
  } else if (in.mode == io::Mode::Graph) {
    h.graph = Graph(in.n);
    for (auto [u, v] : in.arcs) h.graph.add_edge(u, v);
  } else {
    h.digraph = Digraph(in.n);
    for (auto [u, v] : in.arcs) h.digraph.add_arc(u, v);
  }
  return h;
}

// The host as a digraph; undirected hosts are oriented first.
inline Digraph directed_host(const io::Instance& in, std::uint64_t seed) {
  Host h = host_of(in);
  return h.undirected ? orient_regular(h.graph, seed) : h.digraph;
}

inline std::vector<OneFactorSpec> specs_of(const io::Instance& in) {
  std::vector<OneFactorSpec> fs;
  for (const auto& f : in.factors) {
    OneFactorSpec s;
    s.n = in.n;
    s.cycles = f.cycles;
    s.directed = in.directed();
    fs.push_back(std::move(s));
  }
  return fs;
}

inline SolveConfig config_of(const io::Instance& in) {
  SolveConfig c;
  auto num = [&](const char* k) -> std::optional<double> {
    auto it = in.params.find(k);
    if (it == in.params.end()) return std::nullopt;
    return std::stod(it->second);
  };
  if (auto v = num("K")) c.K = static_cast<int>(*v);
  if (auto v = num("d")) c.d = static_cast<int>(*v);
  if (auto v = num("s")) c.s = static_cast<int>(*v);
  if (auto v = num("eta")) c.eta = *v;
  if (auto v = num("L")) c.L = static_cast<int>(*v);
  if (auto v = num("direct_threshold")) c.direct_threshold = static_cast<int>(*v);
  return c;
}

inline std::uint64_t seed_of(const io::Instance& in, std::optional<std::uint64_t> override_seed = {}) {
  if (override_seed) return *override_seed;
  auto it = in.params.find("seed");
  return it == in.params.end() ? 0 : static_cast<std::uint64_t>(std::stoull(it->second));
}

inline io::CertificateFile certificate_of(const io::Instance& in, const Certificate& c) {
  io::CertificateFile f;
  for (std::size_t w = 0; w < in.factors.size(); ++w) f.factors.push_back({in.factors[w].id, c.factors.at(w)});
  return f;
}

inline SolveResult solve_instance(const io::Instance& in, std::uint64_t seed) {
  Host h = host_of(in);
  auto fs = specs_of(in);
  auto cfg = config_of(in);
  return h.undirected ? solve(h.graph, fs, cfg, seed) : solve(h.digraph, fs, cfg, seed);
}

// The case group of the largest membership, its splits and its plan.
struct GroupPlan {
  CaseGroup group;
  std::vector<FactorSplit> splits;
  FactorPlan plan;
  int d = 0;
};

inline GroupPlan plan_for(const io::Instance& in) {
  auto fs = specs_of(in);
  auto cfg = config_of(in);
  auto cg = classify_cases(fs, cfg.thresholds);
  GroupPlan gp;
  for (const auto& g : cg.groups)
    if (g.members.size() > gp.group.members.size()) gp.group = g;
  if (gp.group.members.empty()) throw std::invalid_argument("no case group with members");
  gp.d = cfg.pick_d(in.n);
  PlanParams pp;
  pp.eta = cfg.eta;
  pp.K = cfg.K;
  pp.d = gp.d;
  pp.s = cfg.s;
  pp.L = cfg.L;
  pp.n = in.n;
  pp.alpha = static_cast<double>(gp.group.members.size()) / in.n;
  pp.floor = cfg.floor;
  for (int w : gp.group.members) gp.splits.push_back(split_factor(fs[w], gp.group.tag, {cfg.K, cfg.L, in.n}));
  gp.plan = compute_plan(gp.splits, pp);
  return gp;
}

// Mean total wheel weight over up to `per_class` arcs of each class of J.
struct WeightClass {
  std::string name;
  int arcs = 0;
  double mean = 0;
};

inline std::string arc_class(const AuxiliaryDigraph& j, const ColouredArc& a) {
  std::string part = j.is_hub(a.v) ? "spoke" : "rim";
  return part + ":" + colour_name(a.colour);
}

inline std::vector<WeightClass> weight_survey(const AuxiliaryDigraph& j, const WeightScheme& s, int per_class,
                                              const WeightMode& mode, std::uint64_t seed) {
  std::map<std::string, std::vector<ColouredArc>> by;
  for (const auto& a : j.arcs()) {
    if (j.is_hub(a.u)) continue;
    if (!j.is_hub(a.v) && a.colour == kColour0 && is_close_rim_arc(j, a, s.d)) continue;
    if (a.colour != kColour0 && a.colour != kColourK && (a.colour >= s.K || !j.is_hub(a.v))) continue;
    by[arc_class(j, a)].push_back(a);
  }
  std::vector<WeightClass> out;
  Rng rng(seed, {tag(Stream::Weights)});
  for (auto& [name, arcs] : by) {
    rng.shuffle(arcs);
    WeightClass wc{name, 0, 0};
    double sum = 0;
    for (std::size_t i = 0; i < arcs.size() && static_cast<int>(i) < per_class; ++i) {
      WeightMode m = mode;
      m.seed = derive_seed(mode.seed, {i});
      sum += arc_weight_sum(j, s, arcs[i], m);
      ++wc.arcs;
    }
    wc.mean = wc.arcs ? sum / wc.arcs : 0;
    out.push_back(wc);
  }
  return out;
}

}  // namespace obk::harness

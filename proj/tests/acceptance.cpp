// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_weight.hpp"
#include "colouring_oracle.hpp"
#include "obk/cli.hpp"
#include "obk/divisibility_lattice.hpp"
#include "obk/exact_cover.hpp"
#include "obk/perturb.hpp"
#include "planted.hpp"
#include "random_aux.hpp"
#include "toy_perturb.hpp"
#include "toy_plan.hpp"

using namespace obk;

namespace {

// Wheel weight at n = 400 has no K spokes to work with (see the criterion).
const std::set<int> kExpectedFailures{8};

struct Line {
  int id;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<Line> lines;

// Certificates produced by the solver along the way, re-verified in criterion 12.
std::vector<std::pair<io::Instance, io::CertificateFile>> solver_certs;

void record(int id, const std::string& name, double budget_s, const std::function<bool(std::ostringstream&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream det;
  bool ok = false;
  try {
    ok = body(det);
  } catch (const std::exception& e) {
    det << " exception: " << e.what();
    ok = false;
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) {
    det << " over budget " << budget_s << "s";
    ok = false;
  }
  lines.push_back({id, ok, name + ":" + det.str(), s});
  std::printf("%s [%d] %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, lines.back().detail.c_str(), s);
  std::fflush(stdout);
}

// Partitions of n into parts >= lo, nondecreasing.
std::vector<std::vector<int>> partitions(int n, int lo) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int mn) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int x = mn; x <= rem; ++x) {
      cur.push_back(x);
      rec(rem - x, x);
      cur.pop_back();
    }
  };
  rec(n, lo);
  return out;
}

std::string type_name(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::string instance_text(const std::string& mode, int n, const std::vector<std::pair<int, int>>& arcs,
                          const std::vector<std::vector<int>>& types) {
  std::ostringstream os;
  os << "obk v1\nmode " << mode << "\nn " << n << "\n";
  const char* kw = mode == "digraph" ? "arc" : "edge";
  for (auto [u, v] : arcs) os << kw << " " << u + 1 << " " << v + 1 << "\n";
  for (std::size_t w = 0; w < types.size(); ++w) {
    os << "factor f" << w + 1 << " cycles";
    for (int l : types[w]) os << " " << l;
    os << "\n";
  }
  return os.str();
}

// Solves through the file interface and checks the answer against the oracle.
// Returns "" or a description of the mismatch.
std::string solve_and_check(const std::string& text, int n, bool directed, const std::vector<std::pair<int, int>>& host,
                            const std::vector<std::vector<int>>& types, int& feasible) {
  auto in = io::parse_instance(text);
  auto r = harness::solve_instance(in, 1);
  testing::ColouringOracle oracle(n, directed, host, types);
  int o = oracle.solve();
  if (o < 0) return "oracle budget";
  feasible = o;
  if (r.status == SolveStatus::Failed) return "solver failed at " + r.failure.stage;
  if ((r.status == SolveStatus::Solved) != (o == 1)) return "solver and oracle disagree";
  if (r.status == SolveStatus::Solved) {
    auto cert = harness::certificate_of(in, r.certificate);
    auto vd = io::verify(in, cert);
    if (!vd.accept) return "certificate rejected: " + vd.violations.front().kind;
    solver_certs.push_back({in, cert});
  }
  return "";
}

std::vector<std::pair<int, int>> complete_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  return e;
}

std::vector<std::pair<int, int>> complete_arcs(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) e.push_back({u, v});
  return e;
}

bool criterion1(std::ostringstream& det) {
  int total = 0, bad = 0;
  std::vector<std::string> infeasible;
  for (int n = 3; n <= 11; n += 2) {
    auto host = complete_edges(n);
    for (const auto& t : partitions(n, 3)) {
      std::vector<std::vector<int>> types((n - 1) / 2, t);
      int feas = -1;
      auto e = solve_and_check(instance_text("oberwolfach", n, {}, types), n, false, host, types, feas);
      ++total;
      if (!e.empty()) {
        ++bad;
        det << " " << type_name(t) << ": " << e;
      }
      if (feas == 0) infeasible.push_back(type_name(t));
    }
  }
  det << " " << total << " types, infeasible";
  for (const auto& s : infeasible) det << " " << s;
  std::vector<std::string> want{"(4,5)", "(3,3,5)"};
  return bad == 0 && infeasible == want;
}

bool criterion2(std::ostringstream& det) {
  int total = 0, bad = 0, feasible = 0;
  for (int n = 2; n <= 6; ++n) {
    auto parts = partitions(n, 2);
    auto host = complete_arcs(n);
    std::vector<int> idx;
    std::function<void(std::size_t)> fam = [&](std::size_t from) {
      if (static_cast<int>(idx.size()) == n - 1) {
        std::vector<std::vector<int>> types;
        for (int i : idx) types.push_back(parts[i]);
        int feas = -1;
        auto e = solve_and_check(instance_text("digraph", n, host, types), n, true, host, types, feas);
        ++total;
        feasible += feas == 1;
        if (!e.empty()) {
          ++bad;
          if (bad <= 3) det << " n=" << n << ": " << e;
        }
        return;
      }
      for (std::size_t i = from; i < parts.size(); ++i) {
        idx.push_back(static_cast<int>(i));
        fam(i);
        idx.pop_back();
      }
    };
    fam(0);
  }
  det << " " << total << " families, " << feasible << " feasible, " << bad << " mismatches";
  return bad == 0 && total > 0;
}

bool criterion3(std::ostringstream& det) {
  int bad = 0, paths = 0;
  Rng pick(2024);
  for (int t = 0; t < 1000; ++t) {
    int n = pick.range(24, 64);
    CyclicOrder ord(n);
    Rng rng(t, {tag(Stream::Trial)});
    auto fam = random_compatible_family(rng, ord, 8);
    auto e = twist_round_trip(fam, ord, 8);
    if (!e.empty()) {
      if (++bad <= 3) det << " trial " << t << ": " << e;
      continue;
    }
    paths += static_cast<int>(twist_decode(fam, ord).size());
  }
  det << " 1000 families, " << paths << " paths, " << bad << " failures";
  return bad == 0;
}

bool criterion4(std::ostringstream& det) {
  Rng rng(4040);
  int dis = 0, yes = 0;
  for (int t = 0; t < 1000; ++t) {
    auto tm = t % 2 ? WheelTemplate::special(8) : WheelTemplate::plain(3);
    auto j = testing::random_aux(rng, tm, 30, 6);
    bool a = divisibility_closed_form(j, tm.c, tm.kind).ok;
    bool b = divisibility_lattice_oracle(j, tm).ok;
    dis += a != b;
    yes += a;
  }
  det << " 1000 digraphs, " << yes << " divisible, " << dis << " disagreements";
  return dis == 0 && yes > 100 && yes < 900;
}

// Recomputes the interval invariants from Y, the scales and the classes alone.
std::vector<std::string> independent_interval_check(const IntervalSystem& sys, const IntervalsOutcome& io) {
  std::vector<std::string> bad;
  const int n = io.n, W = io.num_hubs;
  for (int w = 0; w < W; ++w) {
    const auto& cl = sys.cls(io.scale[w], io.offset[w]);
    int m = static_cast<int>(cl.intervals.size());
    std::set<int> s(io.selected[w].begin(), io.selected[w].end());
    for (int k : s)
      if (m > 2 && (s.count((k + 1) % m) || s.count((k + m - 1) % m))) bad.push_back("consecutive S_w");
    std::set<int> x1(io.X[0][w].begin(), io.X[0][w].end());
    for (int k : io.X[1][w])
      if (x1.count(k)) bad.push_back("X1 and X2 meet");
  }
  for (int g = 0; g < 2; ++g) {
    std::vector<int> start(n, 0), succ(n, 0);
    int tg = 0;
    for (int i = 0; i < sys.num_scales(); ++i) {
      std::map<int, int> per_start;
      for (int w = 0; w < W; ++w) {
        if (io.scale[w] != i) continue;
        for (int k : io.Y[g][w]) ++per_start[sys.cls(i, io.offset[w]).intervals[k].start];
      }
      // Every interval of scale i starts at some position; all positions share one count.
      std::set<int> counts;
      for (int a = 0; a < n; ++a) counts.insert(per_start.count(a) ? per_start[a] : 0);
      if (counts.size() != 1) bad.push_back("|Y(I)| varies at scale " + std::to_string(i));
      else tg += *counts.begin();
      if (!counts.empty() && *counts.begin() != io.t[g][i]) bad.push_back("t^g_i mismatch");
    }
    for (int w = 0; w < W; ++w)
      for (int k : io.Y[g][w]) {
        const auto& iv = sys.cls(io.scale[w], io.offset[w]).intervals[k];
        ++start[iv.start];
        ++succ[(iv.start + iv.length) % n];
      }
    for (int x = 0; x < n; ++x)
      if (start[x] != tg || succ[x] != tg) {
        bad.push_back("t^+-(x) != t_g");
        break;
      }
  }
  return bad;
}

bool criterion5(std::ostringstream& det) {
  const int n = 1000, W = 500, d = 4;
  std::vector<FactorSplit> sp;
  for (int w = 0; w < W; ++w) {
    OneFactorSpec f;
    f.n = n;
    f.cycles = {n};
    sp.push_back(split_factor(f, CaseTag::case_k(), {8, 4, n}));
  }
  PlanParams pp;
  pp.n = n;
  pp.d = d;
  pp.alpha = 0.5;
  pp.eta = 0.2;
  pp.floor = 0.01;
  auto plan = compute_plan(sp, pp);
  IntervalSystem sys(n, d, 1);
  int bad = 0, nontrivial = 0;
  for (int run = 0; run < 100; ++run) {
    auto io = run_intervals(plan, sys, derive_seed(5, {static_cast<std::uint64_t>(run)}));
    auto a = independent_interval_check(sys, io), b = check_intervals_invariants(sys, io);
    if (!a.empty() || !b.empty()) {
      if (++bad <= 3) det << " run " << run << ": " << (a.empty() ? b.front() : a.front());
    }
    nontrivial += io.t_total[0] + io.t_total[1] > 0;
  }
  det << " 100 runs at n=1000, " << nontrivial << " with t_g > 0, " << bad << " violations";
  return bad == 0 && nontrivial > 0;
}

bool criterion6(std::ostringstream& det) {
  Rng rng(606);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = rng.range(100, 3000), K = rng.range(4, 12), W = rng.range(1, 6);
    std::vector<FactorSplit> splits;
    for (int w = 0; w < W; ++w) {
      std::vector<int> c;
      int left = n;
      while (left > 0) {
        int l = left <= 2 * K ? left : rng.range(2, std::min(left - 2, 4 * K));
        c.push_back(l);
        left -= l;
      }
      rng.shuffle(c);
      FactorSplit s;
      s.tag = CaseTag::case_k();
      std::size_t h = rng.index(c.size() + 1);
      s.f1.cycles.assign(c.begin(), c.begin() + h);
      s.f2.cycles.assign(c.begin() + h, c.end());
      splits.push_back(s);
    }
    PlanParams pp;
    pp.n = n;
    pp.K = K;
    pp.eta = 0.05 + 0.15 * rng.uniform();
    pp.floor = rng.uniform() * 0.04;
    auto plan = compute_plan(splits, pp);
    auto rel = [](double a, double b) {
      double m = std::max(std::fabs(a), std::fabs(b));
      return m == 0 ? 0.0 : std::fabs(a - b) / m;
    };
    for (int g = 0; g < 2; ++g) {
      for (int w = 0; w < W; ++w) {
        double rhs = 7 * plan.p_wK[g][w];
        for (int c = 3; c < K; ++c) rhs += (c - 1) * plan.p_wc[g][w][c];
        worst = std::max(worst, rel(plan.p_w0[g][w], rhs));
      }
      double rhs = 7 * plan.p_gK[g];
      for (int c = 3; c < K; ++c) rhs += c * plan.p_gc[g][c];
      worst = std::max(worst, rel(plan.p_gstar[g], rhs));
    }
  }
  det << " 1000 types, worst relative error " << worst;
  return worst <= 1e-12;
}

bool criterion7(std::ostringstream& det) {
  const int n = 500;
  auto toy = testing::case_ell3_setting(n, 0.5, 7, 0.01, 4, 0.2);
  IntervalSystem sys(n, 4, 1);
  const int W = toy.plan.num_factors, K = toy.plan.params.K;
  long long inside = 0, all = 0;
  for (int tr = 0; tr < 50; ++tr) {
    std::uint64_t s = derive_seed(77, {static_cast<std::uint64_t>(tr)});
    auto io = run_intervals(toy.plan, sys, s);
    auto dg = run_digraph(toy.G, toy.plan, sys, io, s);
    for (int g = 0; g < 2; ++g) {
      std::vector<std::map<int, int>> deg(W);
      for (const auto& a : dg.J[g].arcs())
        if (a.v >= n) ++deg[a.v - n][a.colour == kColourK ? K : a.colour];
      for (int w = 0; w < W; ++w) {
        std::vector<int> colours{0, K};
        for (int c = 3; c < K; ++c)
          if (toy.plan.p_wc[g][w][c] > 0) colours.push_back(c);
        for (int c : colours) {
          double p = toy.plan.prob(g, w, c);
          double mu = p * n, sd = std::sqrt(n * p * (1 - p));
          int got = deg[w].count(c) ? deg[w][c] : 0;
          inside += std::fabs(got - mu) <= 3 * sd + 1e-9;
          ++all;
        }
      }
    }
  }
  double frac = static_cast<double>(inside) / all;
  det << " " << all << " hub colour degrees, " << frac * 100 << "% in the 3 sigma corridor";
  return frac >= 0.95;
}

bool criterion8(std::ostringstream& det) {
  bool ok = true;
  // Micro-instances: exact mode against full enumeration.
  double worst = 0;
  Rng rng(808);
  for (int trial = 0; trial < 4; ++trial) {
    auto j = testing::dense_aux(rng, 9, 2, {kColour0, 3}, 0.5);
    auto s = testing::flat_scheme(9, 2, 0.1, 0.0);
    for (int q = 0; q < 10; ++q) {
      int u = rng.range(0, 8), v = rng.range(0, 10);
      if (u == v) continue;
      ColouredArc a{u, v, v >= 9 && rng.bernoulli(0.5) ? 3 : kColour0};
      double ex = arc_weight_sum(j, s, a), br = testing::brute_weight(j, s, WheelTemplate::plain(3), a, 0);
      if (ex != br) worst = std::max(worst, std::fabs(ex - br) / std::max(std::fabs(br), 1e-300));
    }
  }
  {
    auto j = testing::dense_aux(rng, 9, 1, {kColour0, kColourK}, 0.7);
    auto s = testing::flat_scheme(9, 1, 0.0, 0.05);
    for (ColouredArc a : std::vector<ColouredArc>{{0, 9, kColourK}, {1, 9, kColour0}, {2, 5, kColour0}, {3, 7, kColourK}}) {
      double ex = arc_weight_sum(j, s, a), br = testing::brute_weight(j, s, WheelTemplate::special(8), a, 0);
      if (ex != br) worst = std::max(worst, std::fabs(ex - br) / std::max(std::fabs(br), 1e-300));
    }
  }
  det << " micro exact/enumeration rel err " << worst << ";";
  ok = ok && worst <= 1e-12;

  // n = 400, sampled mode, part 2 of a CaseEll(3) toy plan.
  const int n = 400;
  auto toy = testing::case_ell3_setting(n, 0.5, 7, 0.01, 4, 0.2);
  IntervalSystem sys(n, 4, 1);
  auto io = run_intervals(toy.plan, sys, 1);
  auto dg = run_digraph(toy.G, toy.plan, sys, io, 2);
  auto scheme = WeightScheme::from_plan(toy.plan, 1);
  auto rows = harness::weight_survey(dg.J[1], scheme, 200, WeightMode::sample(300, 3), 4);
  std::set<std::string> seen;
  for (const auto& r : rows) {
    seen.insert(r.name);
    bool in = r.mean >= 0.7 && r.mean <= 1.3;
    det << " " << r.name << " " << r.arcs << " arcs mean " << r.mean << (in ? "" : " OUT");
    ok = ok && in;
  }
  if (!seen.count("spoke:K")) {
    det << " spoke:K 0 arcs (t_g = " << io.t_total[1] << ") OUT";
    ok = false;
  }
  return ok;
}

bool criterion9(std::ostringstream& det) {
  std::vector<WheelTemplate> ts{WheelTemplate::plain(3), WheelTemplate::plain(4), WheelTemplate::special(8)};
  int recovered = 0, instances = 0, mutants = 0, fast = 0, divisible_mutants = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed, {0xACCE});
    auto ws = testing::planted_wheels(rng, 80, 5, 20, ts, 6);
    if (ws.size() != 20) {
      det << " seed " << seed << " planted " << ws.size();
      return false;
    }
    auto j = union_of_wheels(80, 5, ws);
    ++instances;
    auto r = exact_wheel_decomposition(j, ts, {.seed = seed, .sep = 6});
    if (r.status == SearchStatus::Found) {
      std::map<std::tuple<int, int, int>, int> got, want;
      for (const auto& w : r.wheels)
        for (const auto& a : w.arcs()) ++got[{a.u, a.v, a.colour}];
      for (const auto& a : j.arcs()) ++want[{a.u, a.v, a.colour}];
      recovered += got == want;
    }
    // Mutants: drop an arc, recolour a spoke, add a stray rim arc.
    for (int m = 0; m < 3; ++m) {
      auto mj = j;
      auto& arcs = mj.mutable_arcs();
      std::size_t k = rng.index(arcs.size());
      if (m == 0) {
        arcs.erase(arcs.begin() + k);
      } else if (m == 1) {
        while (arcs[k].v < 80) k = rng.index(arcs.size());
        arcs[k].colour = arcs[k].colour == kColour0 ? 3 : kColour0;
      } else {
        int u = rng.range(0, 79), v = (u + 1 + rng.range(0, 78)) % 80;
        mj.add(u, v, kColour0);
      }
      if (divisibility_closed_form(mj, ts).ok) {
        ++divisible_mutants;
        continue;
      }
      ++mutants;
      auto mr = exact_wheel_decomposition(mj, ts, {.seed = seed, .sep = 6});
      fast += mr.fast_failed && mr.status == SearchStatus::Infeasible && mr.nodes == 0;
    }
  }
  det << " recovered " << recovered << "/" << instances << " unions of 20 wheels; fast-failed " << fast << "/" << mutants
      << " violating mutants (" << divisible_mutants << " mutants stayed divisible)";
  return recovered == instances && fast == mutants && mutants > 0;
}

bool criterion10(std::ostringstream& det) {
  int built = 0, ok = 0, skipped = 0, worst_change = 0;
  for (std::uint64_t seed = 1; built < 50 && seed < 200; ++seed) {
    auto st = testing::k_toy_state(100, 10, 3, 1, seed);
    if (!st) {
      ++skipped;
      continue;
    }
    ++built;
    Rng rng(seed, {99});
    testing::inject_imbalance(*st, 40, rng);
    auto p = build_perturbation_k(st->J1, st->G1p, st->Z, st->Y1, st->t1, {.d = 1, .change_cap = 40});
    worst_change = std::max(worst_change, p.max_change());
    bool good = p.ok && p.delta == 0 && p.divisibility.violations.empty() && p.max_change() <= 40;
    if (!good && built - ok <= 3) det << " seed " << seed << " " << p.stage << ": " << p.error;
    ok += good;
  }
  det << " " << ok << "/" << built << " toy states balanced and divisible, max changes per vertex " << worst_change
      << " (cap 40), " << skipped << " seeds without a toy state";
  return built == 50 && ok == 50;
}

bool criterion11(std::ostringstream& det) {
  const int n = 200, r = 40;
  int bad = 0;
  double worst_ratio = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_regular_digraph(n, r, seed);
    double eps = typicality_check(g, 0.5, 2).required_epsilon;
    auto parts = split_regular(g, {0.1, 0.1}, seed);
    std::set<std::pair<int, int>> seen;
    bool exact = parts.size() == 2;
    std::size_t total = 0;
    for (const auto& p : parts) {
      exact = exact && p.regularity() == 20;
      total += p.num_arcs();
      for (const Arc& a : p.arcs()) exact = exact && g.has_arc(a.u, a.v) && seen.insert({a.u, a.v}).second;
    }
    exact = exact && total == g.num_arcs();
    for (const auto& p : parts) {
      double e = typicality_check(p, 0.5, 2).required_epsilon;
      worst_ratio = std::max(worst_ratio, e / eps);
      exact = exact && e <= 2 * eps;
    }
    if (!exact && ++bad <= 3) det << " seed " << seed << " failed";
  }
  det << " 20 splits of a 40-regular digraph on 200 vertices, worst eps_part/eps_host " << worst_ratio << ", " << bad
      << " failures";
  return bad == 0;
}

bool criterion12(std::ostringstream& det) {
  struct Case {
    io::Instance in;
    io::CertificateFile good;
  };
  std::vector<Case> base;
  auto add_op = [&](int n, std::vector<int> t) {
    auto in = io::parse_instance(instance_text("oberwolfach", n, {}, std::vector<std::vector<int>>((n - 1) / 2, t)));
    auto r = harness::solve_instance(in, 3);
    if (r.status != SolveStatus::Solved) throw std::runtime_error("base instance not solved");
    base.push_back({in, harness::certificate_of(in, r.certificate)});
  };
  add_op(7, {7});
  add_op(7, {3, 4});
  add_op(9, {3, 3, 3});
  add_op(11, {5, 6});
  {
    // A 4-regular circulant on 8 vertices, so foreign pairs exist inside the range.
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < 8; ++v) {
      e.push_back({v, (v + 1) % 8});
      e.push_back({v, (v + 3) % 8});
    }
    auto in = io::parse_instance(instance_text("graph", 8, e, {{8}, {8}}));
    auto r = harness::solve_instance(in, 3);
    if (r.status != SolveStatus::Solved) throw std::runtime_error("circulant not solved");
    base.push_back({in, harness::certificate_of(in, r.certificate)});
  }

  int rejected = 0, total = 0;
  auto expect = [&](const Case& c, io::CertificateFile cert, const char* kind) {
    ++total;
    auto vd = io::verify(c.in, cert);
    bool good = !vd.accept && vd.has(kind);
    rejected += good;
    if (!good) det << " missed " << kind << ";";
  };
  for (std::size_t b = 0; b < 5; ++b) {
    const auto& c = base[b];
    const auto& g = c.good;
    // Duplicate arc: factor 2 repeats factor 1.
    {
      auto m = g;
      m.factors[1].cycles = m.factors[0].cycles;
      expect(c, m, "duplicate_arc");
    }
    // Foreign arc: a vertex outside the range, or a non-edge of the circulant.
    {
      auto m = g;
      if (c.in.mode == io::Mode::Graph) {
        std::set<std::pair<int, int>> host;
        for (auto [u, v] : c.in.arcs) host.insert({std::min(u, v), std::max(u, v)});
        auto edge = [&](int u, int v) { return host.count({std::min(u, v), std::max(u, v)}) > 0; };
        auto& cyc = m.factors[0].cycles[0];
        int L = static_cast<int>(cyc.size());
        for (int k = 0; k < L; ++k) {
          int a = cyc[k], b = cyc[(k + 1) % L], x = cyc[(k + 2) % L], y = cyc[(k + 3) % L];
          if (!edge(a, x) || !edge(b, y)) {
            std::swap(cyc[(k + 1) % L], cyc[(k + 2) % L]);
            break;
          }
        }
        expect(c, m, "foreign_arc");
      } else {
        m.factors[0].cycles[0][0] = c.in.n;
        expect(c, m, "foreign_arc");
      }
    }
    // Wrong cycle type: the first factor becomes a single n-cycle or splits off a triangle.
    {
      auto m = g;
      std::vector<int> all;
      for (const auto& cyc : m.factors[0].cycles) all.insert(all.end(), cyc.begin(), cyc.end());
      if (m.factors[0].cycles.size() == 1) m.factors[0].cycles = {{all.begin(), all.begin() + 3}, {all.begin() + 3, all.end()}};
      else m.factors[0].cycles = {all};
      expect(c, m, "wrong_cycle_type");
    }
    // Not spanning: the last factor loses a vertex.
    {
      auto m = g;
      m.factors.back().cycles.back().pop_back();
      expect(c, m, "not_spanning");
    }
  }
  int accepted = 0, produced = static_cast<int>(solver_certs.size()) + static_cast<int>(base.size());
  for (const auto& [in, cert] : solver_certs) accepted += io::verify(in, cert).accept;
  for (const auto& c : base) accepted += io::verify(c.in, c.good).accept;
  det << " " << rejected << "/" << total << " mutants rejected with the right kind; " << accepted << "/" << produced
      << " solver certificates accepted";
  return total == 20 && rejected == 20 && accepted == produced;
}

}  // namespace

int main() {
  record(1, "Oberwolfach n <= 11 vs colouring oracle", 600, criterion1);
  record(2, "complete digraphs n <= 6 vs colouring oracle", 60, criterion2);
  record(3, "twisting round trip", 30, criterion3);
  record(4, "closed-form vs lattice divisibility", 60, criterion4);
  record(5, "interval selection invariants", 60, criterion5);
  record(6, "plan identities", 5, criterion6);
  record(7, "hub degree concentration, n=500 CaseEll(3)", 120, criterion7);
  record(8, "wheel weight regularity, n=400 CaseEll(3)", 180, criterion8);
  record(9, "exact cover on planted wheels and mutants", 60, criterion9);
  record(10, "balancing K toy states", 120, criterion10);
  record(11, "regular split, n=200 r=40", 120, criterion11);
  record(12, "verifier adversarial suite", 10, criterion12);

  int pass = 0;
  bool unexpected = false;
  for (const auto& l : lines) {
    pass += l.pass;
    bool expected_fail = kExpectedFailures.count(l.id) > 0;
    if (l.pass == expected_fail) unexpected = true;
  }
  std::printf("%d/%zu criteria pass", pass, lines.size());
  if (!kExpectedFailures.empty()) {
    std::printf("; expected failures:");
    for (int id : kExpectedFailures) std::printf(" %d", id);
  }
  std::printf("\n");
  return unexpected ? 1 : 0;
}

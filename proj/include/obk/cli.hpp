#pragma once

// The obk command line.  Exit codes: 0 success or accept, 1 infeasible or
// reject, 2 failure or budget, 3 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "obk/harness.hpp"
#include "obk/split.hpp"
#include "obk/twist_demo.hpp"
#include "obk/typicality.hpp"
#include "obk/verifier.hpp"

namespace obk::cli {

constexpr int kOk = 0, kNo = 1, kFailed = 2, kUsage = 3;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline io::Instance load_instance(const std::string& path) { return io::parse_instance(slurp(path)); }

namespace detail {

inline int cmd_solve(const std::string& path, std::optional<std::uint64_t> seed, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
  auto in = load_instance(path);
  auto r = harness::solve_instance(in, harness::seed_of(in, seed));
  if (r.status == SolveStatus::Infeasible) {
    out << "infeasible\n";
    return kNo;
  }
  if (r.status == SolveStatus::Failed) {
    out << "failed\n" << r.failure.text();
    return kFailed;
  }
  auto cert = harness::certificate_of(in, r.certificate);
  auto vd = io::verify(in, cert);
  if (!vd.accept) {
    err << "solver certificate rejected by the verifier\n";
    for (const auto& v : vd.violations) err << v.kind << " " << v.location << "\n";
    return kFailed;
  }
  std::string text = io::emit_certificate(cert);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InputError("cannot write " + out_path);
    f << text;
    out << "solved (" << r.method << ")\n";
  }
  return kOk;
}

inline int cmd_verify(const std::string& ipath, const std::string& cpath, std::ostream& out) {
  auto in = load_instance(ipath);
  auto cert = io::parse_certificate(slurp(cpath));
  auto vd = io::verify(in, cert);
  out << (vd.accept ? "accept" : "reject") << "\n";
  for (const auto& v : vd.violations) out << v.kind << " " << v.location << "\n";
  return vd.accept ? kOk : kNo;
}

inline void print_typicality(const TypicalityReport& t, std::ostream& out) {
  out << "pass " << (t.pass ? "yes" : "no") << "\n";
  out << "density " << t.density << "\n";
  out << "required_eps " << t.required_epsilon << "\n";
  out << "audited " << t.audited << (t.sampled ? " (sampled)" : "") << "\n";
  if (!t.failing_set.empty()) {
    out << "failing_set";
    for (int v : t.failing_set) out << " " << v + 1;
    out << "\n";
  }
  if (!t.reason.empty()) out << "reason " << t.reason << "\n";
}

inline int cmd_typicality(const std::string& path, double eps, int t, std::ostream& out) {
  auto in = load_instance(path);
  auto h = harness::host_of(in);
  auto rep = h.undirected ? typicality_check(h.graph, eps, t) : typicality_check(h.digraph, eps, t);
  print_typicality(rep, out);
  return rep.pass ? kOk : kNo;
}

inline int cmd_orient(const std::string& path, std::optional<std::uint64_t> seed, std::ostream& out,
                      std::ostream& err) {
  auto in = load_instance(path);
  if (in.directed()) {
    err << "orient: the instance is already a digraph\n";
    return kUsage;
  }
  auto s = harness::seed_of(in, seed);
  Digraph d = harness::directed_host(in, s);
  io::Instance o;
  o.mode = io::Mode::Digraph;
  o.n = in.n;
  for (const Arc& a : d.arcs()) o.arcs.push_back({a.u, a.v});
  o.params = in.params;
  o.factors = in.factors;
  out << io::emit_instance(o);
  return kOk;
}

inline int cmd_split(const std::string& path, const std::vector<double>& alphas, std::optional<std::uint64_t> seed,
                     std::ostream& out) {
  auto in = load_instance(path);
  auto s = harness::seed_of(in, seed);
  Digraph d = harness::directed_host(in, s);
  auto parts = split_regular(d, alphas, derive_seed(s, {tag(Stream::Split)}));
  for (std::size_t i = 0; i < parts.size(); ++i)
    out << "part " << i + 1 << " alpha " << alphas[i] << " regularity " << parts[i].regularity() << " arcs "
        << parts[i].num_arcs() << "\n";
  return kOk;
}

inline int cmd_encode_demo(int n, int trials, std::uint64_t seed, std::ostream& out) {
  if (n < 24) throw InputError("encode-demo: n must be at least 24");
  CyclicOrder ord(n);
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, {tag(Stream::Trial), static_cast<std::uint64_t>(t)});
    auto fam = random_compatible_family(rng, ord, 8);
    auto e = twist_round_trip(fam, ord, 8);
    if (!e.empty()) {
      if (bad < 5) out << "trial " << t << ": " << e << "\n";
      ++bad;
    }
  }
  out << "trials " << trials << " failures " << bad << "\n";
  return bad ? kNo : kOk;
}

inline int cmd_intervals_sim(const std::string& path, int trials, std::optional<std::uint64_t> seed,
                             std::ostream& out) {
  auto in = load_instance(path);
  auto gp = harness::plan_for(in);
  auto cfg = harness::config_of(in);
  IntervalSystem sys(in.n, gp.d, cfg.s);
  auto s = harness::seed_of(in, seed);
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    auto io = run_intervals(gp.plan, sys, derive_seed(s, {tag(Stream::Intervals), static_cast<std::uint64_t>(t)}));
    auto v = check_intervals_invariants(sys, io);
    if (!v.empty()) {
      if (bad < 5) out << "trial " << t << ": " << v.front() << "\n";
      ++bad;
    }
  }
  out << "group " << gp.group.tag.name() << " factors " << gp.group.members.size() << " d " << gp.d << "\n";
  out << "trials " << trials << " violations " << bad << "\n";
  return bad ? kNo : kOk;
}

inline int cmd_weights(const std::string& path, const std::string& mode, int part, int per_class, long long samples,
                       std::optional<std::uint64_t> seed, std::ostream& out) {
  if (part != 1 && part != 2) throw InputError("weights: part must be 1 or 2");
  auto in = load_instance(path);
  auto gp = harness::plan_for(in);
  auto cfg = harness::config_of(in);
  auto s = harness::seed_of(in, seed);
  IntervalSystem sys(in.n, gp.d, cfg.s);
  Digraph g = harness::directed_host(in, s);
  auto io = run_intervals(gp.plan, sys, derive_seed(s, {tag(Stream::Intervals)}));
  auto dg = run_digraph(g, gp.plan, sys, io, derive_seed(s, {tag(Stream::Digraph)}));
  auto scheme = WeightScheme::from_plan(gp.plan, part - 1);
  WeightMode m = mode == "exact" ? WeightMode::exact() : WeightMode::sample(samples, derive_seed(s, {tag(Stream::Weights)}));
  auto rows = harness::weight_survey(dg.J[part - 1], scheme, per_class, m, s);
  out << "class arcs mean_weight\n";
  for (const auto& r : rows) out << r.name << " " << r.arcs << " " << std::setprecision(6) << r.mean << "\n";
  return kOk;
}

inline AuxiliaryDigraph aux_of(const io::AuxFile& f) {
  AuxiliaryDigraph j(f.nv, f.nw);
  for (const auto& a : f.arcs) j.add(a.u, a.v, a.colour);
  return j;
}

inline int cmd_divisibility(const std::string& path, std::ostream& out) {
  auto f = io::parse_aux(slurp(path));
  if (f.templates.empty()) throw InputError("divisibility: no template line");
  std::vector<WheelTemplate> ts;
  for (auto [special, c] : f.templates) ts.push_back({c, special ? WheelKind::Special : WheelKind::Plain});
  auto rep = divisibility_closed_form(aux_of(f), ts);
  out << (rep.ok ? "divisible" : "not divisible") << "\n" << rep.summary();
  return rep.ok ? kOk : kNo;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"obk: cycle factor decompositions of regular hosts"};
  app.require_subcommand(1);

  std::string inst, cert, outp, mode = "sampled", aux;
  std::optional<std::uint64_t> seed;
  double eps = 0.1;
  int t = 2, trials = 100, n = 64, per_class = 200, part = 2;
  long long samples = 2000;
  std::vector<double> alphas;
  std::uint64_t demo_seed = 1;

  auto* solve = app.add_subcommand("solve", "decompose the host and write a certificate");
  solve->add_option("instance", inst)->required();
  solve->add_option("--seed", seed);
  solve->add_option("--out", outp);

  auto* verify = app.add_subcommand("verify", "check a certificate against an instance");
  verify->add_option("instance", inst)->required();
  verify->add_option("cert", cert)->required();

  auto* typ = app.add_subcommand("typicality", "audit common neighbourhoods of the host");
  typ->add_option("instance", inst)->required();
  typ->add_option("--eps", eps);
  typ->add_option("--t", t);

  auto* orient = app.add_subcommand("orient", "orient an undirected host into a regular digraph");
  orient->add_option("instance", inst)->required();
  orient->add_option("--seed", seed);

  auto* split = app.add_subcommand("split", "split the host into regular parts");
  split->add_option("instance", inst)->required();
  split->add_option("--alphas", alphas)->required()->delimiter(',');
  split->add_option("--seed", seed);

  auto* demo = app.add_subcommand("encode-demo", "twist random compatible families and decode them");
  demo->add_option("--n", n);
  demo->add_option("--trials", trials);
  demo->add_option("--seed", demo_seed);

  auto* isim = app.add_subcommand("intervals-sim", "run the interval selection and check its invariants");
  isim->add_option("instance", inst)->required();
  isim->add_option("--trials", trials);
  isim->add_option("--seed", seed);

  auto* weights = app.add_subcommand("weights", "mean wheel weight per arc class of one part");
  weights->add_option("instance", inst)->required();
  weights->add_option("--mode", mode)->check(CLI::IsMember({"exact", "sampled"}));
  weights->add_option("--part", part);
  weights->add_option("--per-class", per_class);
  weights->add_option("--samples", samples);
  weights->add_option("--seed", seed);

  auto* div = app.add_subcommand("divisibility", "closed-form divisibility of an auxiliary digraph");
  div->add_option("aux", aux)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*solve) return detail::cmd_solve(inst, seed, outp, out, err);
    if (*verify) return detail::cmd_verify(inst, cert, out);
    if (*typ) return detail::cmd_typicality(inst, eps, t, out);
    if (*orient) return detail::cmd_orient(inst, seed, out, err);
    if (*split) return detail::cmd_split(inst, alphas, seed, out);
    if (*demo) return detail::cmd_encode_demo(n, trials, demo_seed, out);
    if (*isim) return detail::cmd_intervals_sim(inst, trials, seed, out);
    if (*weights) return detail::cmd_weights(inst, mode, part, per_class, samples, seed, out);
    if (*div) return detail::cmd_divisibility(aux, out);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace obk::cli

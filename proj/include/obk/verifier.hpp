#pragma once

// Certificate checking with its own bookkeeping: nothing here is shared with
// the solver.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "obk/io.hpp"

namespace obk::io {

struct Violation {
  std::string kind;  // duplicate_arc, missing_arc, wrong_cycle_type, not_spanning, foreign_arc
  std::string location;
};

struct Verdict {
  bool accept = true;
  std::vector<Violation> violations;

  bool has(const std::string& kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
  }
};

inline Verdict verify(const Instance& in, const CertificateFile& cert) {
  Verdict vd;
  auto add = [&](const char* kind, std::string where) { vd.violations.push_back({kind, std::move(where)}); };
  const bool dir = in.directed();
  const int n = in.n;
  auto name = [](int u, int v) { return std::to_string(u + 1) + "," + std::to_string(v + 1); };
  auto norm = [&](int u, int v) { return dir || u < v ? std::pair{u, v} : std::pair{v, u}; };

  // Host arcs with a use counter each.
  std::map<std::pair<int, int>, int> uses;
  if (in.mode == Mode::Oberwolfach) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) uses[{u, v}] = 0;
  } else {
    for (auto [u, v] : in.arcs) uses[norm(u, v)] = 0;
  }

  std::map<std::string, const FactorEntry*> spec;
  for (const auto& f : in.factors) spec[f.id] = &f;
  std::set<std::string> done;

  for (const auto& cf : cert.factors) {
    std::string fl = "factor " + cf.id;
    auto it = spec.find(cf.id);
    if (it == spec.end()) {
      add("wrong_cycle_type", fl + ": not a factor of the instance");
    } else if (!done.insert(cf.id).second) {
      add("wrong_cycle_type", fl + ": listed twice");
    }
    std::vector<int> hits(n, 0);
    std::vector<int> lens;
    for (std::size_t ci = 0; ci < cf.cycles.size(); ++ci) {
      const auto& c = cf.cycles[ci];
      lens.push_back(static_cast<int>(c.size()));
      for (int v : c) {
        if (v >= 0 && v < n) ++hits[v];
      }
      for (std::size_t k = 0; k < c.size(); ++k) {
        int u = c[k], v = c[(k + 1) % c.size()];
        std::string where = fl + " cycle " + std::to_string(ci + 1) + " arc " + name(u, v);
        if (u < 0 || u >= n || v < 0 || v >= n || u == v) {
          add("foreign_arc", where);
          continue;
        }
        auto h = uses.find(norm(u, v));
        if (h == uses.end()) {
          add("foreign_arc", where);
          continue;
        }
        if (++h->second > 1) add("duplicate_arc", where);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (hits[v] == 0) add("not_spanning", fl + " misses vertex " + std::to_string(v + 1));
      else if (hits[v] > 1) add("not_spanning", fl + " covers vertex " + std::to_string(v + 1) + " more than once");
    }
    if (it != spec.end()) {
      auto want = it->second->cycles;
      std::sort(want.begin(), want.end());
      std::sort(lens.begin(), lens.end());
      if (want != lens) add("wrong_cycle_type", fl);
    }
  }
  for (const auto& f : in.factors)
    if (!done.count(f.id)) add("wrong_cycle_type", "factor " + f.id + ": missing");
  for (const auto& [a, k] : uses)
    if (k == 0) add("missing_arc", name(a.first, a.second));
  vd.accept = vd.violations.empty();
  return vd;
}

}  // namespace obk::io

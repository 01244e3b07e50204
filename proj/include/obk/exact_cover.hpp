#pragma once

// Wheel decompositions of an auxiliary digraph by exact cover.  Items are the
// arcs of J (with multiplicity), options are colour-correct wheel copies.
// Branching picks the arc with the fewest live options; each restart shuffles
// the option order and doubles its node limit.

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "obk/rng.hpp"
#include "obk/wheel.hpp"
#include "obk/wheel_search.hpp"

namespace obk {

enum class SearchStatus { Found, Infeasible, BudgetExhausted };

inline const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Infeasible: return "infeasible";
    default: return "budget_exhausted";
  }
}

struct CoverOptions {
  long long budget = 20'000'000;  // total search nodes over all restarts
  long long first_limit = 20'000;
  std::uint64_t seed = 0;
  int sep = 0;  // K-wheel rims must be sep-separated (3d in the pipeline)
  std::size_t option_cap = 4'000'000;  // wheel copies enumerated before giving up
};

struct CoverResult {
  SearchStatus status = SearchStatus::Infeasible;
  std::vector<WheelCopy> wheels;
  bool fast_failed = false;  // rejected by the divisibility conditions
  bool options_capped = false;
  DivisibilityReport divisibility;
  long long nodes = 0;
  int restarts = 0;
  std::size_t options = 0;
};

namespace detail {

class CoverSearch {
 public:
  CoverSearch(std::vector<int> cap, std::vector<std::vector<int>> opts)
      : cap_(std::move(cap)), opts_(std::move(opts)), rem_(cap_), blocked_(opts_.size(), 0), live_(cap_.size(), 0),
        by_item_(cap_.size()) {
    for (std::size_t o = 0; o < opts_.size(); ++o)
      for (int i : opts_[o]) {
        by_item_[i].push_back(static_cast<int>(o));
        ++live_[i];
      }
  }

  // 1 found, 0 subtree exhausted, -1 node limit hit.
  int run(Rng& rng, long long limit, long long& nodes) {
    for (auto& v : by_item_) rng.shuffle(v);
    limit_ = limit;
    nodes_ = 0;
    chosen_.clear();
    int r = rec();
    nodes += nodes_;
    return r;
  }

  const std::vector<int>& chosen() const { return chosen_; }

 private:
  int rec() {
    if (nodes_ >= limit_) return -1;
    ++nodes_;
    int best = -1;
    for (std::size_t i = 0; i < rem_.size(); ++i) {
      if (rem_[i] == 0) continue;
      if (live_[i] == 0) return 0;
      if (best < 0 || live_[i] < live_[best]) best = static_cast<int>(i);
    }
    if (best < 0) return 1;
    for (int o : by_item_[best]) {
      if (blocked_[o]) continue;
      select(o);
      chosen_.push_back(o);
      int r = rec();
      if (r == 1) return 1;
      chosen_.pop_back();
      unselect(o);
      if (r < 0) return -1;
    }
    return 0;
  }

  void select(int o) {
    for (int i : opts_[o])
      if (--rem_[i] == 0)
        for (int o2 : by_item_[i])
          if (blocked_[o2]++ == 0)
            for (int i2 : opts_[o2]) --live_[i2];
  }
  void unselect(int o) {
    for (auto it = opts_[o].rbegin(); it != opts_[o].rend(); ++it) {
      int i = *it;
      if (rem_[i]++ == 0)
        for (int o2 : by_item_[i])
          if (--blocked_[o2] == 0)
            for (int i2 : opts_[o2]) ++live_[i2];
    }
  }

  std::vector<int> cap_;
  std::vector<std::vector<int>> opts_;
  std::vector<int> rem_, blocked_, live_;
  std::vector<std::vector<int>> by_item_;
  std::vector<int> chosen_;
  long long limit_ = 0, nodes_ = 0;
};

}  // namespace detail

inline CoverResult exact_wheel_decomposition(const AuxiliaryDigraph& j, const std::vector<WheelTemplate>& ts,
                                             const CoverOptions& opt = {}) {
  CoverResult res;
  res.divisibility = divisibility_closed_form(j, ts);
  if (!res.divisibility.ok) {
    res.fast_failed = true;
    return res;
  }
  if (j.arcs().empty()) {
    res.status = SearchStatus::Found;
    return res;
  }

  std::map<std::tuple<int, int, int>, int> item;
  std::vector<int> cap;
  for (const auto& a : j.sorted_arcs()) {
    auto [it, fresh] = item.try_emplace({a.u, a.v, a.colour}, static_cast<int>(cap.size()));
    if (fresh) cap.push_back(0);
    ++cap[it->second];
  }
  std::vector<WheelCopy> copies;
  std::vector<std::vector<int>> opts;
  for (const auto& t : ts) {
    int sep = t.kind == WheelKind::Special ? opt.sep : 0;
    std::size_t room = opt.option_cap > copies.size() ? opt.option_cap - copies.size() : 0;
    auto found = enumerate_wheels(j, t, sep, room + 1);
    if (found.size() > room) {
      res.options_capped = true;
      res.options = opt.option_cap;
      res.status = SearchStatus::BudgetExhausted;
      return res;
    }
    for (auto& w : found) {
      std::vector<int> o;
      for (const auto& a : w.arcs()) o.push_back(item.at({a.u, a.v, a.colour}));
      std::sort(o.begin(), o.end());
      opts.push_back(std::move(o));
      copies.push_back(std::move(w));
    }
  }
  res.options = opts.size();

  detail::CoverSearch search(cap, opts);
  Rng rng(opt.seed, {tag(Stream::Exact)});
  long long limit = std::max(1LL, opt.first_limit);
  while (res.nodes < opt.budget) {
    long long left = opt.budget - res.nodes;
    int r = search.run(rng, std::min(limit, left), res.nodes);
    ++res.restarts;
    if (r == 1) {
      res.status = SearchStatus::Found;
      for (int o : search.chosen()) res.wheels.push_back(copies[o]);
      return res;
    }
    if (r == 0) {
      res.status = SearchStatus::Infeasible;
      return res;
    }
    limit *= 2;
  }
  res.status = SearchStatus::BudgetExhausted;
  return res;
}

inline CoverResult exact_wheel_decomposition(const AuxiliaryDigraph& j, const WheelTemplate& t,
                                             const CoverOptions& opt = {}) {
  return exact_wheel_decomposition(j, std::vector<WheelTemplate>{t}, opt);
}

}  // namespace obk

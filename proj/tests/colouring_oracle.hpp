#pragma once

// Independent oracle for decomposing a small (di)graph into prescribed
// factors: repeatedly colour the uncoloured edge with the fewest admissible
// colours, tracking the colour classes with an undoable union-find.  Colours of equal type are
// opened in order; on a complete host colour 0 is fixed to consecutive cycles.

#include <algorithm>
#include <utility>
#include <vector>

namespace obk::testing {

class ColouringOracle {
 public:
  ColouringOracle(int n, bool directed, std::vector<std::pair<int, int>> edges, std::vector<std::vector<int>> types)
      : n_(n), directed_(directed), edges_(std::move(edges)), types_(std::move(types)) {
    for (auto& t : types_) std::sort(t.begin(), t.end());
    if (!directed_)
      for (auto& [u, v] : edges_)
        if (u > v) std::swap(u, v);
    std::sort(edges_.begin(), edges_.end());
    m_ = static_cast<int>(types_.size());
  }

  // 1 decomposable, 0 not, -1 node budget exceeded.
  int solve(long long budget = 2'000'000'000LL) {
    budget_ = budget;
    nodes_ = 0;
    if (static_cast<long long>(edges_.size()) != static_cast<long long>(m_) * n_) return 0;
    if (m_ == 0) return 1;
    colour_.assign(edges_.size(), -1);
    outdeg_.assign(m_ * n_, 0);
    indeg_.assign(m_ * n_, 0);
    parent_.assign(m_ * n_, -1);
    size_.assign(m_ * n_, 1);
    left_ = types_;
    opened_.assign(m_, 0);
    bool complete = static_cast<long long>(edges_.size()) == expected_complete();
    if (complete) {
      int v = 0;
      for (int L : types_[0]) {
        for (int i = 0; i < L; ++i) {
          int a = v + i, b = v + (i + 1) % L;
          int e = find_edge(a, b);
          if (e < 0) return 0;
          if (!assign(e, 0)) return 0;
        }
        v += L;
      }
      opened_[0] = 1;
    }
    return rec();
  }

  long long nodes() const { return nodes_; }

 private:
  long long expected_complete() const { return directed_ ? 1LL * n_ * (n_ - 1) : 1LL * n_ * (n_ - 1) / 2; }

  int find_edge(int a, int b) const {
    std::pair<int, int> p = directed_ ? std::make_pair(a, b) : std::make_pair(std::min(a, b), std::max(a, b));
    auto it = std::lower_bound(edges_.begin(), edges_.end(), p);
    return it != edges_.end() && *it == p ? static_cast<int>(it - edges_.begin()) : -1;
  }

  int root(int x) const {
    while (parent_[x] >= 0) x = parent_[x];
    return x;
  }

  struct Undo {
    int e, c, joined_child, closed_len;
  };

  bool admissible(int e, int c) const {
    auto [u, v] = edges_[e];
    int cap = directed_ ? 1 : 2;
    if (outdeg_[c * n_ + u] >= cap || (directed_ ? indeg_[c * n_ + v] : outdeg_[c * n_ + v]) >= cap) return false;
    int ru = root(c * n_ + u), rv = root(c * n_ + v);
    if (ru == rv) return std::find(left_[c].begin(), left_[c].end(), size_[ru]) != left_[c].end();
    return !left_[c].empty() && size_[ru] + size_[rv] <= left_[c].back();
  }

  // Unopened colours of one type are interchangeable: only the first counts.
  bool usable(int c) const {
    if (opened_[c]) return true;
    for (int b = 0; b < c; ++b)
      if (!opened_[b] && types_[b] == types_[c]) return false;
    return true;
  }

  bool assign(int e, int c) {
    if (!admissible(e, c)) return false;
    auto [u, v] = edges_[e];
    int& du = outdeg_[c * n_ + u];
    int& dv = directed_ ? indeg_[c * n_ + v] : outdeg_[c * n_ + v];
    int ru = root(c * n_ + u), rv = root(c * n_ + v);
    Undo rec{e, c, -1, 0};
    if (ru == rv) {
      int len = size_[ru];
      left_[c].erase(std::find(left_[c].begin(), left_[c].end(), len));
      rec.closed_len = len;
    } else {
      if (size_[ru] < size_[rv]) std::swap(ru, rv);
      parent_[rv] = ru;
      size_[ru] += size_[rv];
      rec.joined_child = rv;
    }
    ++du;
    ++dv;
    colour_[e] = c;
    stack_.push_back(rec);
    return true;
  }

  void undo() {
    Undo r = stack_.back();
    stack_.pop_back();
    auto [u, v] = edges_[r.e];
    --outdeg_[r.c * n_ + u];
    if (directed_) --indeg_[r.c * n_ + v];
    else --outdeg_[r.c * n_ + v];
    colour_[r.e] = -1;
    if (r.closed_len) {
      auto& l = left_[r.c];
      l.insert(std::upper_bound(l.begin(), l.end(), r.closed_len), r.closed_len);
    } else {
      int ru = parent_[r.joined_child];
      size_[ru] -= size_[r.joined_child];
      parent_[r.joined_child] = -1;
    }
  }

  int rec() {
    if (++nodes_ > budget_) return -1;
    int best = -1, best_count = m_ + 1;
    // support_out/in[c*n+v]: admissible uncoloured edges that could raise v's colour-c degree.
    support_out_.assign(m_ * n_, 0);
    support_in_.assign(m_ * n_, 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (colour_[e] >= 0) continue;
      int cnt = 0;
      auto [u, v] = edges_[e];
      for (int c = 0; c < m_; ++c) {
        if (!admissible(static_cast<int>(e), c)) continue;
        ++support_out_[c * n_ + u];
        ++(directed_ ? support_in_ : support_out_)[c * n_ + v];
        cnt += usable(c);
      }
      if (cnt == 0) return 0;
      if (cnt < best_count) {
        best = static_cast<int>(e);
        best_count = cnt;
      }
    }
    int cap = directed_ ? 1 : 2;
    for (int i = 0; i < m_ * n_; ++i) {
      if (outdeg_[i] + support_out_[i] < cap) return 0;
      if (directed_ && indeg_[i] + support_in_[i] < cap) return 0;
    }
    if (best < 0) {
      for (int c = 0; c < m_; ++c)
        if (!left_[c].empty()) return 0;
      return 1;
    }
    for (int c = 0; c < m_; ++c) {
      if (!usable(c) || !assign(best, c)) continue;
      bool fresh = !opened_[c];
      opened_[c] = 1;
      int r = rec();
      if (r == 1) return 1;
      if (fresh) opened_[c] = 0;
      undo();
      if (r < 0) return -1;
    }
    return 0;
  }

  int n_, m_ = 0;
  bool directed_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> types_;
  std::vector<int> colour_, outdeg_, indeg_, parent_, size_, support_out_, support_in_;
  std::vector<std::vector<int>> left_;
  std::vector<char> opened_;
  std::vector<Undo> stack_;
  long long budget_ = 0, nodes_ = 0;
};

}  // namespace obk::testing

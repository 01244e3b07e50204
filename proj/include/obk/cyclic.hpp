#pragma once

// Cyclic order on positions 0..n-1, cyclic distance, separation predicates and
// the canonical families of cyclic intervals at every scale.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/rng.hpp"

namespace obk {

inline int cyclic_distance(int n, int x, int y) {
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw std::out_of_range("cyclic_distance: position out of range");
  int a = x > y ? x - y : y - x;
  return std::min(a, n - a);
}

inline int succ_pos(int n, int x) { return x + 1 == n ? 0 : x + 1; }
inline int pred_pos(int n, int x) { return x == 0 ? n - 1 : x - 1; }

class CyclicOrder {
 public:
  explicit CyclicOrder(int n) : pos_(n), at_(n) {
    if (n <= 0) throw std::invalid_argument("CyclicOrder: n must be positive");
    std::iota(pos_.begin(), pos_.end(), 0);
    at_ = pos_;
  }

  // position_of[v] is the position given to vertex v.
  explicit CyclicOrder(std::vector<int> position_of) : pos_(std::move(position_of)), at_(pos_.size(), -1) {
    if (pos_.empty()) throw std::invalid_argument("CyclicOrder: n must be positive");
    for (int v = 0; v < n(); ++v) {
      int p = pos_[v];
      if (p < 0 || p >= n() || at_[p] != -1) throw std::invalid_argument("CyclicOrder: labeling is not a bijection");
      at_[p] = v;
    }
  }

  static CyclicOrder random(int n, std::uint64_t seed) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rng rng(seed, {tag(Stream::Labeling)});
    rng.shuffle(p);
    return CyclicOrder(std::move(p));
  }

  int n() const { return static_cast<int>(pos_.size()); }
  int position(int v) const { return pos_.at(v); }
  int vertex_at(int p) const { return at_.at(p); }
  int succ(int p) const { return succ_pos(n(), check(p)); }
  int pred(int p) const { return pred_pos(n(), check(p)); }
  int distance(int p, int q) const { return cyclic_distance(n(), p, q); }

 private:
  int check(int p) const {
    if (p < 0 || p >= n()) throw std::out_of_range("CyclicOrder: position out of range");
    return p;
  }
  std::vector<int> pos_;
  std::vector<int> at_;
};

inline void check_positions(int n, const std::vector<int>& s) {
  for (int x : s)
    if (x < 0 || x >= n) throw std::out_of_range("is_separated: position out of range");
}

// All distinct pairs of S at cyclic distance >= dsep.
inline bool is_separated(int n, const std::vector<int>& s, int dsep) {
  check_positions(n, s);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] != s[j] && cyclic_distance(n, s[i], s[j]) < dsep) return false;
  return true;
}

// All cross pairs (a in S, b in S') at cyclic distance >= dsep.
inline bool is_separated(int n, const std::vector<int>& s, const std::vector<int>& s2, int dsep) {
  check_positions(n, s);
  check_positions(n, s2);
  for (int a : s)
    for (int b : s2) {
      if (a == b) throw std::invalid_argument("is_separated: S and S' overlap");
      if (cyclic_distance(n, a, b) < dsep) return false;
    }
  return true;
}

struct Interval {
  int start = 0;
  int length = 0;
};

inline int interval_successor(int n, const Interval& iv) { return (iv.start + iv.length) % n; }

inline bool interval_contains(int n, const Interval& iv, int v) {
  int off = v - iv.start;
  if (off < 0) off += n;
  return off < iv.length;
}

// One class I^i_j: the intervals between consecutive anchors k*d_i + j.
struct IntervalClass {
  int scale = 0;   // 0-based scale index
  int offset = 0;  // 0-based offset j, anchors are congruent to j mod d_i
  std::vector<int> anchors;
  std::vector<Interval> intervals;
};

class IntervalSystem {
 public:
  IntervalSystem(int n, int d, int s) : n_(n), d_(d), s_(s) {
    if (n <= 0 || d <= 0 || s <= 0) throw std::invalid_argument("interval system: parameters must be positive");
    long long base = 1;
    for (int k = 0; k < 2 * s; ++k) {
      base *= 2LL * s;
      if (base > d) break;
    }
    if (base > d || d % base != 0)
      throw std::invalid_argument("interval system: d must be divisible by (2s)^(2s) (non-integer d_i)");
    if (d >= n) throw std::invalid_argument("interval system: d must be smaller than n");
    int di = d;
    for (int i = 0; i < 2 * s + 1; ++i) {
      sizes_.push_back(di);
      di /= 2 * s;
    }
    classes_.resize(sizes_.size());
    for (int i = 0; i < num_scales(); ++i) {
      int dsz = sizes_[i];
      int r = n / dsz, rem = n % dsz;
      classes_[i].resize(dsz);
      for (int j = 0; j < dsz; ++j) {
        IntervalClass& cl = classes_[i][j];
        cl.scale = i;
        cl.offset = j;
        int kmax = (j < rem) ? r : r - 1;
        for (int k = 0; k <= kmax; ++k) cl.anchors.push_back(k * dsz + j);
        for (std::size_t a = 0; a < cl.anchors.size(); ++a) {
          int st = cl.anchors[a];
          int nx = cl.anchors[(a + 1) % cl.anchors.size()];
          int len = nx - st;
          if (len <= 0) len += n;
          cl.intervals.push_back({st, len});
        }
      }
    }
  }

  int n() const { return n_; }
  int d() const { return d_; }
  int s() const { return s_; }
  int num_scales() const { return static_cast<int>(sizes_.size()); }
  int scale_size(int i) const { return sizes_.at(i); }
  const IntervalClass& cls(int i, int j) const { return classes_.at(i).at(j); }
  int num_classes(int i) const { return scale_size(i); }

  // Index, inside class (i, j), of the interval containing v.
  int containing(int i, int j, int v) const {
    const auto& a = cls(i, j).anchors;
    auto it = std::upper_bound(a.begin(), a.end(), v);
    if (it == a.begin()) return static_cast<int>(a.size()) - 1;
    return static_cast<int>(it - a.begin()) - 1;
  }

  // Class offset and index of the interval of scale i starting at position a.
  int class_of_start(int i, int a) const { return a % scale_size(i); }
  int index_of_start(int i, int a) const { return a / scale_size(i); }

 private:
  int n_, d_, s_;
  std::vector<int> sizes_;
  std::vector<std::vector<IntervalClass>> classes_;
};

inline IntervalSystem build_interval_system(int n, int d, int s) { return IntervalSystem(n, d, s); }

}  // namespace obk

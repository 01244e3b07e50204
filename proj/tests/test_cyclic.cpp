#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "obk/cyclic.hpp"

using namespace obk;

// Positions are 0-based internally; p(k) maps the 1-based labels of the examples.
static int p(int k) { return k - 1; }

TEST_CASE("cyclic distance") {
  CHECK(cyclic_distance(10, p(2), p(9)) == 3);
  CHECK(cyclic_distance(10, p(4), p(4)) == 0);
  CHECK(cyclic_distance(12, p(1), p(7)) == 6);
  CHECK_THROWS_AS(cyclic_distance(10, 0, 10), std::out_of_range);
  CHECK_THROWS_AS(cyclic_distance(10, -1, 3), std::out_of_range);
}

TEST_CASE("cyclic distance is a metric on the cycle") {
  for (int n : {1, 2, 3, 7, 12}) {
    for (int x = 0; x < n; ++x) {
      if (n >= 2) CHECK(cyclic_distance(n, x, succ_pos(n, x)) == 1);
      CHECK(pred_pos(n, succ_pos(n, x)) == x);
      for (int y = 0; y < n; ++y) {
        CHECK(cyclic_distance(n, x, y) == cyclic_distance(n, y, x));
        for (int z = 0; z < n; ++z)
          CHECK(cyclic_distance(n, x, z) <= cyclic_distance(n, x, y) + cyclic_distance(n, y, z));
      }
    }
  }
}

TEST_CASE("cyclic order from a labeling") {
  CyclicOrder id(5);
  CHECK(id.succ(4) == 0);
  CHECK(id.pred(0) == 4);
  CHECK_THROWS(CyclicOrder(std::vector<int>{0, 0, 1}));
  auto r = CyclicOrder::random(50, 7);
  std::set<int> seen;
  for (int v = 0; v < 50; ++v) {
    seen.insert(r.position(v));
    CHECK(r.vertex_at(r.position(v)) == v);
  }
  CHECK(seen.size() == 50);
  auto r2 = CyclicOrder::random(50, 7);
  for (int v = 0; v < 50; ++v) CHECK(r.position(v) == r2.position(v));
}

TEST_CASE("separation predicates") {
  CHECK(is_separated(12, {p(1), p(5), p(9)}, 4));
  CHECK_FALSE(is_separated(12, {p(1), p(4)}, 4));
  CHECK_FALSE(is_separated(12, {p(1)}, {p(11)}, 3));
  CHECK(is_separated(12, {p(1), p(2)}, {p(7)}, 3));
  CHECK_THROWS_AS(is_separated(12, {p(1)}, {p(1)}, 3), std::invalid_argument);
  CHECK_THROWS_AS(is_separated(12, {12}, 3), std::out_of_range);
}

// Reference anchors straight from the definition: k*d_i + j (1-based j) with
// k running to r_i when j <= s_i and to r_i - 1 otherwise.
static std::vector<int> reference_anchors_1based(int n, int di, int j) {
  int r = n / di, s = n % di;
  std::vector<int> a;
  int kmax = j <= s ? r : r - 1;
  for (int k = 0; k <= kmax; ++k) a.push_back(k * di + j);
  return a;
}

TEST_CASE("interval classes on small examples") {
  // n=12, d_i=4: single scale system with s=1 uses d=4, d_1=4.
  IntervalSystem sys12(12, 4, 1);
  const auto& c = sys12.cls(0, p(1));
  CHECK(c.anchors == std::vector<int>{p(1), p(5), p(9)});
  REQUIRE(c.intervals.size() == 3);
  CHECK(c.intervals[0].start == p(1));
  CHECK(c.intervals[0].length == 4);
  CHECK(c.intervals[2].start == p(9));
  CHECK(c.intervals[2].length == 4);

  IntervalSystem sys10(10, 4, 1);
  const auto& a = sys10.cls(0, p(1));
  CHECK(a.anchors == std::vector<int>{p(1), p(5), p(9)});
  CHECK(a.intervals[2].length == 2);  // [9,10]
  const auto& b = sys10.cls(0, p(3));
  CHECK(b.anchors == std::vector<int>{p(3), p(7)});
  CHECK(b.intervals[1].start == p(7));
  CHECK(b.intervals[1].length == 6);  // [7,2]: wrap of length d_i + s_i
  CHECK(interval_contains(10, b.intervals[1], p(2)));
  CHECK_FALSE(interval_contains(10, b.intervals[1], p(3)));
}

TEST_CASE("interval system rejects bad parameters") {
  CHECK_THROWS_AS(IntervalSystem(100, 6, 1), std::invalid_argument);   // 4 does not divide 6
  CHECK_THROWS_AS(IntervalSystem(100, 128, 1), std::invalid_argument); // d >= n
  CHECK_THROWS_AS(IntervalSystem(100, 32, 2), std::invalid_argument);  // 256 does not divide 32
  CHECK_NOTHROW(IntervalSystem(1000, 256, 2));
}

TEST_CASE("interval system properties") {
  for (auto [n, d, s] : std::vector<std::tuple<int, int, int>>{{10, 4, 1}, {37, 16, 1}, {1000, 64, 1}, {300, 256, 2}}) {
    IntervalSystem sys(n, d, s);
    REQUIRE(sys.num_scales() == 2 * s + 1);
    for (int i = 0; i < sys.num_scales(); ++i) {
      int di = sys.scale_size(i);
      std::vector<int> starts(n, 0), succs(n, 0);
      for (int j = 0; j < di; ++j) {
        const auto& cl = sys.cls(i, j);
        std::vector<int> ref = reference_anchors_1based(n, di, j + 1);
        for (int& x : ref) x -= 1;
        CHECK(cl.anchors == ref);
        std::vector<int> cover(n, 0);
        int nint = static_cast<int>(cl.intervals.size());
        CHECK(std::abs(nint - n / di) <= 1);
        for (int k = 0; k < nint; ++k) {
          const auto& iv = cl.intervals[k];
          CHECK(iv.length <= 2 * di - 1);
          ++starts[iv.start];
          ++succs[interval_successor(n, iv)];
          for (int t = 0; t < iv.length; ++t) ++cover[(iv.start + t) % n];
          CHECK(sys.containing(i, j, iv.start) == k);
          CHECK(sys.containing(i, j, (iv.start + iv.length - 1) % n) == k);
        }
        for (int v = 0; v < n; ++v) CHECK(cover[v] == 1);
      }
      for (int v = 0; v < n; ++v) {
        CHECK(starts[v] == 1);
        CHECK(succs[v] == 1);
      }
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "obk/solve.hpp"

using namespace obk;

static OneFactorSpec factor_of(int n, std::vector<int> cycles) {
  OneFactorSpec f;
  f.n = n;
  f.cycles = std::move(cycles);
  return f;
}

// Maps every unmapped template vertex outside `keep` to the unused host
// vertices in increasing order, as the outer phases would.
static void fill_outer(FactorSkeleton& s, const std::set<int>& keep, const std::set<int>& reserved) {
  int h = 0;
  for (int a = 0; a < s.n(); ++a) {
    if (s.phi(a) >= 0 || keep.count(a)) continue;
    while (s.preimage(h) >= 0 || reserved.count(h)) ++h;
    s.map(a, h);
  }
  for (int a = 0; a < s.n(); ++a)
    if (s.phase(a) == Phase::Unassigned) s.set_phase(a, Phase::Residual);
}

static bool is_factor(const CycleSet& cs, int n, std::vector<int> type) {
  std::vector<int> seen(n, 0), lens;
  for (const auto& c : cs) {
    lens.push_back(static_cast<int>(c.size()));
    for (int v : c)
      if (v < 0 || v >= n || seen[v]++) return false;
  }
  return sorted_type(lens) == sorted_type(type);
}

TEST_CASE("a decoded K-wheel path closes the long cycle") {
  const int n = 64;
  auto f = factor_of(n, {n});
  auto sp = split_factor(f, CaseTag::case_k(), {8, 4, n});
  FactorSkeleton s(f, sp);
  std::map<int, std::vector<int>> paths;
  std::string err;
  REQUIRE(detail::allocate_exact_paths(s, {{5, 1}}, paths, err));
  REQUIRE(paths.count(5));
  const auto& tp = paths[5];
  REQUIRE(tp.size() == 9);
  CHECK(s.phi(tp.front()) == 5);
  CHECK(s.phi(tp.back()) == 6);
  for (std::size_t i = 0; i + 1 < tp.size(); ++i) {
    CHECK(s.in_f1(tp[i]));
    CHECK(s.phase(tp[i]) == Phase::Exact);
  }
  // The path keeps two free F^1 arcs on either side.
  CHECK(s.phase(s.prev(tp.front())) == Phase::Unassigned);
  CHECK(s.phase(s.prev(s.prev(tp.front()))) == Phase::Unassigned);

  std::vector<int> rim{20, 30, 40, 50, 60, 10, 15, 5};
  std::set<int> interior(tp.begin() + 1, tp.end() - 1), reserved(rim.begin(), rim.end() - 1);
  fill_outer(s, interior, reserved);
  std::vector<WheelCopy> ws{{WheelTemplate::special(8), rim, n}};
  REQUIRE(detail::compose_paths(s, paths, ws).empty());
  auto img = s.image();
  REQUIRE(is_factor(img, n, {n}));
  // The host cycle runs 5 -> 20 -> ... -> 15 -> 6.
  const auto& c = img[0];
  auto at = std::find(c.begin(), c.end(), 5) - c.begin();
  std::vector<int> want{5, 20, 30, 40, 50, 60, 10, 15, 6};
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(c[(at + k) % n] == want[k]);
}

TEST_CASE("composition reports mismatched wheels") {
  const int n = 64;
  auto f = factor_of(n, {n});
  auto sp = split_factor(f, CaseTag::case_k(), {8, 4, n});
  FactorSkeleton s(f, sp);
  std::map<int, std::vector<int>> paths;
  std::string err;
  REQUIRE(detail::allocate_exact_paths(s, {{5, 1}}, paths, err));
  // Starts at 7, but only an interval at 5 was allocated.
  std::vector<WheelCopy> ws{{WheelTemplate::special(8), {20, 30, 40, 50, 60, 10, 15, 7}, n}};
  CHECK_THAT(detail::compose_paths(s, paths, ws), Catch::Matchers::ContainsSubstring("matches no interval"));
  CHECK_THAT(detail::compose_paths(s, paths, {}), Catch::Matchers::ContainsSubstring("0 decoded paths"));
}

TEST_CASE("long F^1 paths that do not fit are reported") {
  const int n = 64;
  auto f = factor_of(n, {n});
  auto sp = split_factor(f, CaseTag::case_k(), {8, 4, n});
  FactorSkeleton s(f, sp);
  std::map<int, std::vector<int>> paths;
  std::string err;
  CHECK_FALSE(detail::allocate_exact_paths(s, {{5, 5}}, paths, err));
  CHECK_THAT(err, Catch::Matchers::ContainsSubstring("40 arcs"));
}

TEST_CASE("plain wheel rims become the exact cycles") {
  const int n = 24;
  auto f = factor_of(n, std::vector<int>(8, 3));
  auto sp = split_factor(f, CaseTag::case_ell(3), {8, 2, n});
  REQUIRE(sp.f1.cycles.size() == 3);
  FactorSkeleton s(f, sp);
  auto cyc = detail::allocate_exact_cycles(s, 2);
  REQUIRE(cyc.size() == 2);
  std::set<int> keep;
  for (const auto& c : cyc) keep.insert(c.begin(), c.end());
  std::set<int> reserved{20, 21, 22, 0, 7, 13};
  fill_outer(s, keep, reserved);
  std::vector<WheelCopy> ws{{WheelTemplate::plain(3), {20, 21, 22}, n}, {WheelTemplate::plain(3), {0, 7, 13}, n}};
  CHECK(detail::compose_cycles(s, cyc, {ws[0]}) == "1 wheels for 2 cycles");
  REQUIRE(detail::compose_cycles(s, cyc, ws).empty());
  auto img = s.image();
  CHECK(is_factor(img, n, f.cycles));
  std::set<std::vector<int>> got(img.begin(), img.end());
  CHECK(got.count({20, 21, 22}));
  CHECK(got.count({0, 7, 13}));
}

TEST_CASE("internal check catches broken decompositions") {
  auto g = complete_digraph(3);
  std::vector<OneFactorSpec> fs{factor_of(3, {3}), factor_of(3, {3})};
  std::vector<CycleSet> ok{{{0, 1, 2}}, {{0, 2, 1}}};
  CHECK(detail::check_decomposition(g, fs, ok, false).empty());
  std::vector<CycleSet> twice{{{0, 1, 2}}, {{0, 1, 2}}};
  CHECK_FALSE(detail::check_decomposition(g, fs, twice, false).empty());
  std::vector<CycleSet> short_cycle{{{0, 1}, {2}}, {{0, 2, 1}}};
  CHECK_FALSE(detail::check_decomposition(g, fs, short_cycle, false).empty());
}

TEST_CASE("small Oberwolfach instances go to the direct search") {
  auto k7 = complete_graph(7);
  std::vector<OneFactorSpec> ham(3, factor_of(7, {7}));
  for (auto& f : ham) f.directed = false;
  auto r = solve(k7, ham);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.method == "direct");
  CHECK(r.certificate.factors.size() == 3);
  for (const auto& cs : r.certificate.factors) CHECK(is_factor(cs, 7, {7}));
  CHECK(r.certificate.provenance[0][0][0] == Provenance::Direct);

  auto k9 = complete_graph(9);
  std::vector<OneFactorSpec> f45(4, factor_of(9, {4, 5}));
  for (auto& f : f45) f.directed = false;
  CHECK(solve(k9, f45).status == SolveStatus::Infeasible);
}

TEST_CASE("the direct search budget surfaces as a failure") {
  auto k9 = complete_graph(9);
  std::vector<OneFactorSpec> f45(4, factor_of(9, {4, 5}));
  for (auto& f : f45) f.directed = false;
  SolveConfig cfg;
  cfg.direct.budget = 10;
  auto r = solve(k9, f45, cfg, 7);
  CHECK(r.status == SolveStatus::Failed);
  CHECK(r.failure.stage == "direct");
  CHECK(r.failure.seed == 7);
}

TEST_CASE("solve rejects hosts of the wrong degree") {
  auto g = complete_digraph(5);
  std::vector<OneFactorSpec> fs(3, factor_of(5, {5}));
  CHECK_THROWS_AS(solve(g, fs), std::invalid_argument);
}

TEST_CASE("the pipeline on a desk-size host reports its stage and replays") {
  const int n = 100, r = 30;
  auto g = random_regular_digraph(n, r, 4);
  std::vector<OneFactorSpec> fs;
  for (int w = 0; w < r; ++w) {
    std::vector<int> t(n / 3, 3);
    t.back() = 4;
    fs.push_back(factor_of(n, t));
  }
  SolveConfig cfg;
  cfg.L = 2;
  auto a = solve(g, fs, cfg, 11);
  CHECK(a.method == "pipeline");
  if (a.status == SolveStatus::Solved) {
    CHECK(detail::check_decomposition(g, fs, a.certificate.factors, false).empty());
  } else {
    CHECK(a.status == SolveStatus::Failed);
    CHECK(a.failure.stage.rfind("CaseEll(3):", 0) == 0);
    CHECK(a.failure.seed == 11);
    CHECK(a.failure.counters.count("approx_wheels"));
    auto b = solve(g, fs, cfg, 11);
    CHECK(b.failure.text() == a.failure.text());
  }
}

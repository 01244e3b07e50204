#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "obk/approx.hpp"
#include "obk/residual.hpp"
#include "obk/skeleton.hpp"

using namespace obk;

static OneFactorSpec factor_of(int n, std::vector<int> cycles) {
  OneFactorSpec f;
  f.n = n;
  f.cycles = std::move(cycles);
  return f;
}

static WeightScheme flat_scheme(int n, int W, double p0, double p3, double pk) {
  WeightScheme s;
  s.n = n;
  s.alpha = 0.5;
  s.K = 8;
  s.d = 0;
  s.p_star = p0 + p3;
  s.p_K = pk;
  s.p_w0.assign(W, p0);
  s.p_wK.assign(W, pk);
  s.p_wc.assign(W, std::vector<double>(8, 0.0));
  for (auto& row : s.p_wc) row[3] = p3;
  return s;
}

TEST_CASE("skeleton marks the first part of a long-cycle split") {
  auto f = factor_of(64, {64});
  auto sp = split_factor(f, CaseTag::case_k(), {8, 4, 64});
  REQUIRE(sp.cut_cycle == 0);
  REQUIRE(sp.cut_kept == 40);
  FactorSkeleton sk(f, sp);
  int f1 = 0;
  for (int a = 0; a < 64; ++a) f1 += sk.in_f1(a);
  CHECK(f1 == 39);
  auto free2 = sk.runs([&](int a) { return !sk.in_f1(a); });
  REQUIRE(free2.size() == 1);
  CHECK(free2[0].verts.front() == 39);
  CHECK(free2[0].verts.back() == 0);
  CHECK(free2[0].num_arcs() == 25);

  sk.map(3, 10);
  CHECK_FALSE(sk.can_map(4, 10));
  CHECK_THROWS_AS(sk.map(4, 10), std::logic_error);
  sk.unmap(3);
  CHECK(sk.can_map(4, 10));
}

TEST_CASE("placement keeps buffers or sits flush") {
  TemplateRun open{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, false};  // 10 arcs
  CHECK(place_in_run(open, 6, Placement::Interior) == std::vector<int>{2, 3, 4, 5, 6, 7, 8});
  CHECK_FALSE(place_in_run(open, 7, Placement::Interior));
  CHECK(place_in_run(open, 10, Placement::AtStart));
  CHECK_FALSE(place_in_run(open, 9, Placement::AtStart));
  CHECK(place_in_run(open, 8, Placement::AtEnd) == std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10});
  TemplateRun closed{{0, 1, 2, 3, 4, 5}, true};
  CHECK_FALSE(place_in_run(closed, 3, Placement::AtStart));
  CHECK(place_in_run(closed, 2, Placement::Interior) == std::vector<int>{2, 3, 4});
}

TEST_CASE("approximate step with no hubs returns its inputs") {
  AuxiliaryDigraph j(10, 0);
  j.add(0, 1, kColour0);
  Digraph g(10);
  g.add_arc(0, 1);
  WeightScheme s;
  s.n = 10;
  auto r = approx_decompose(j, g, s, nullptr, 1);
  CHECK(r.wheels.empty());
  CHECK(r.G2_minus.num_arcs() == 1);
  CHECK(r.J2_minus.num_arcs() == 1);
  CHECK(r.ok());
}

TEST_CASE("approximate step matches a disjoint union of 3-wheels") {
  const int n = 30, W = 10;
  std::vector<WheelCopy> ws;
  Digraph g(n);
  for (int i = 0; i < W; ++i) {
    ws.push_back({WheelTemplate::plain(3), {3 * i, 3 * i + 1, 3 * i + 2}, n + i});
    for (int k = 0; k < 3; ++k) g.add_arc(3 * i + k, 3 * i + (k + 1) % 3);
  }
  auto j = union_of_wheels(n, W, ws);
  auto f = factor_of(n, std::vector<int>(10, 3));
  auto sp = split_factor(f, CaseTag::case_ell(3), {8, 4, n});
  REQUIRE(sp.f1.cycles.empty());
  std::vector<FactorSkeleton> sk(W, FactorSkeleton(f, sp));
  ApproxOptions opt;
  opt.bad_c = 0.1;
  auto r = approx_decompose(j, g, flat_scheme(n, W, 0.5, 0.5, 0.0), &sk, 3, opt);
  CHECK(r.ok());
  CHECK(r.bad_arcs == 0);
  CHECK(r.wheels.size() == W);
  CHECK(r.G2_minus.num_arcs() == 0);
  CHECK(r.J2_minus.num_arcs() == 0);
  CHECK(r.max_deg_G2_minus == 0);
  for (int w = 0; w < W; ++w) {
    REQUIRE(r.G2w[w].size() == 1);
    CHECK(r.valid[w]);
    // The template triangle that was used maps onto the host triangle of hub w.
    std::set<int> img;
    for (int a = 0; a < n; ++a)
      if (sk[w].phase(a) == Phase::Approx) img.insert(sk[w].phi(a));
    CHECK(img == std::set<int>{3 * w, 3 * w + 1, 3 * w + 2});
  }
}

TEST_CASE("bad spokes are filtered before matching") {
  const int n = 6;
  auto j = union_of_wheels(n, 1, {{WheelTemplate::plain(3), {0, 1, 2}, n}});
  Digraph g(n);
  for (int k = 0; k < 3; ++k) g.add_arc(k, (k + 1) % 3);
  ApproxOptions opt;
  opt.bad_c = 0.9;
  auto r = approx_decompose(j, g, flat_scheme(n, 1, 0.5, 0.5, 0.0), nullptr, 1, opt);
  CHECK(r.bad_arcs == 1);
  CHECK(r.wheels.empty());
  CHECK(r.G2_minus.num_arcs() == 3);
}

TEST_CASE("special wheels decode into paths at the ends of the second part") {
  const int n = 64;
  auto f = factor_of(n, {n});
  auto sp = split_factor(f, CaseTag::case_k(), {8, 4, n});
  std::vector<FactorSkeleton> sk{FactorSkeleton(f, sp)};
  std::vector<WheelCopy> ws;
  std::vector<std::vector<int>> paths;
  for (int a : {0, 2}) {
    std::vector<int> rim, path{a};
    for (int k = 1; k <= 7; ++k) {
      rim.push_back(a + 8 * k);
      path.push_back(a + 8 * k);
    }
    rim.push_back(a);
    path.push_back(a + 1);
    ws.push_back({WheelTemplate::special(8), rim, n});
    paths.push_back(path);
  }
  auto j = union_of_wheels(n, 1, ws);
  Digraph g(n);
  for (const auto& p : paths)
    for (std::size_t i = 0; i + 1 < p.size(); ++i) g.add_arc(p[i], p[i + 1]);
  ApproxOptions opt;
  opt.bad_k = 0.01;
  auto r = approx_decompose(j, g, flat_scheme(n, 1, 0.5, 0.0, 0.1), &sk, 5, opt);
  REQUIRE(r.ok());
  CHECK(r.wheels.size() == 2);
  CHECK(r.G2_minus.num_arcs() == 0);
  CHECK(r.valid[0]);
  // Both end arcs of the F^2 path are covered by host paths.
  CHECK(sk[0].phase(39) == Phase::Approx);
  CHECK(sk[0].phase(63) == Phase::Approx);
  for (int a = 0; a < n; ++a) {
    if (sk[0].phase(a) != Phase::Approx) continue;
    CHECK(g.has_arc(sk[0].phi(a), sk[0].phi(sk[0].next(a))));
  }
}

TEST_CASE("residual embedding with nothing to embed") {
  const int n = 12;
  auto f = factor_of(n, {3, 3, 3, 3});
  auto sp = split_factor(f, CaseTag::case_ell(3), {8, 4, n});
  std::vector<FactorSkeleton> sk{FactorSkeleton(f, sp)};
  Digraph G = complete_digraph(n), used(n);
  used.add_arc(0, 1);
  used.add_arc(5, 7);
  AuxiliaryDigraph j1(n, 1);
  auto r = embed_residuals(G, G, j1, used, sk, 1);
  CHECK(r.ok);
  CHECK(r.pieces == 0);
  CHECK(r.G1_prime.num_arcs() == G.num_arcs() - 2);
  CHECK_FALSE(r.G1_prime.has_arc(0, 1));
  CHECK(r.Z[0].empty());
}

TEST_CASE("a residual triangle lands inside the hub's in-neighbourhood") {
  const int n = 40;
  auto f = factor_of(n, {3, 37});
  auto sp = split_factor(f, CaseTag::case_ell(3), {8, 4, n});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::vector<FactorSkeleton> sk{FactorSkeleton(f, sp)};
    const auto& tri = sk[0].cycles()[0];
    sk[0].claim(tri, true, Phase::Residual);
    Rng rng(seed);
    Digraph G = random_regular_digraph(n, 30, seed);
    AuxiliaryDigraph j1(n, 1);
    std::vector<char> in(n, 0);
    for (int x = 0; x < n; ++x)
      if (rng.bernoulli(0.5)) {
        j1.add(x, n, kColour0);
        in[x] = 1;
      }
    auto r = embed_residuals(G, G, j1, Digraph(n), sk, seed);
    REQUIRE(r.ok);
    std::vector<int> img;
    for (int a : tri) {
      REQUIRE(sk[0].phi(a) >= 0);
      CHECK(in[sk[0].phi(a)]);
      img.push_back(sk[0].phi(a));
    }
    for (int i = 0; i < 3; ++i) {
      CHECK(G.has_arc(img[i], img[(i + 1) % 3]));
      CHECK_FALSE(r.G1_prime.has_arc(img[i], img[(i + 1) % 3]));
    }
    CHECK(r.G1_prime.num_arcs() == G.num_arcs() - 3);
    std::vector<int> z = img;
    std::sort(z.begin(), z.end());
    CHECK(r.Z[0] == z);
  }
}

TEST_CASE("prescribed path ends are honoured") {
  const int n = 50;
  auto f = factor_of(n, {n});
  auto sp = split_factor(f, CaseTag::case_k(), {8, 4, n});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::vector<FactorSkeleton> sk{FactorSkeleton(f, sp)};
    std::vector<int> run;
    for (int a = 10; a <= 16; ++a) run.push_back(a);
    sk[0].map(10, 3);
    sk[0].map(16, 40);
    sk[0].claim(run, false, Phase::Residual);
    Digraph G = random_regular_digraph(n, 36, seed);
    AuxiliaryDigraph j1(n, 1);
    for (int x = 0; x < n; ++x) j1.add(x, n, kColour0);
    auto r = embed_residuals(G, G, j1, Digraph(n), sk, seed);
    REQUIRE(r.ok);
    CHECK(sk[0].phi(10) == 3);
    CHECK(sk[0].phi(16) == 40);
    std::set<int> seen;
    for (int a : run) seen.insert(sk[0].phi(a));
    CHECK(seen.size() == run.size());
    for (std::size_t i = 0; i + 1 < run.size(); ++i) CHECK(G.has_arc(sk[0].phi(run[i]), sk[0].phi(run[i + 1])));
    // Only the interior vertices have both template arcs in the outer phases.
    CHECK(r.Z[0].size() == 5);
  }
}

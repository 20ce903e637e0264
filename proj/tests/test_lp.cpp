#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "congestion.hpp"
#include "doctest.h"
#include "lp.hpp"
#include "pipeline.hpp"
#include "rng.hpp"

using namespace sparsegap;

TEST_CASE("single unit edge with demand 2 routes at congestion 2") {
  std::vector<LpEdge> edges = {{0, 1, Rational(1)}};
  std::vector<LpCommodity> com = {{0, 1, Rational(2)}};
  auto exact = lp_min_congestion(2, edges, com, true);
  REQUIRE(exact.feasible);
  REQUIRE(exact.exact);
  CHECK(exact.value == Rational(2));
  auto approx = lp_min_congestion(2, edges, com, false);
  REQUIRE(approx.feasible);
  CHECK(approx.value_d == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("two parallel unit edges split demand 2 at congestion 1") {
  std::vector<LpEdge> edges = {{0, 1, Rational(1)}, {0, 1, Rational(1)}};
  std::vector<LpCommodity> com = {{0, 1, Rational(2)}};
  auto exact = lp_min_congestion(2, edges, com, true);
  REQUIRE(exact.feasible);
  CHECK(exact.value == Rational(1));
}

TEST_CASE("bottleneck on a path sets the congestion") {
  // 0 -3- 1 -1/2- 2; demand 1 from 0 to 2 -> congestion 2.
  std::vector<LpEdge> edges = {{0, 1, Rational(3)}, {1, 2, Rational(1, 2)}};
  std::vector<LpCommodity> com = {{0, 2, Rational(1)}};
  auto res = lp_min_congestion(3, edges, com, true);
  REQUIRE(res.feasible);
  CHECK(res.value == Rational(2));
}

TEST_CASE("two commodities sharing an edge stack up") {
  // Both commodities must cross the middle edge.
  std::vector<LpEdge> edges = {{0, 1, Rational(1)},
                               {1, 2, Rational(1)},
                               {2, 3, Rational(1)}};
  std::vector<LpCommodity> com = {{0, 2, Rational(1)}, {1, 3, Rational(1)}};
  auto res = lp_min_congestion(4, edges, com, true);
  REQUIRE(res.feasible);
  CHECK(res.value == Rational(2));  // edge 1-2 carries both units
}

TEST_CASE("disconnected commodity is infeasible") {
  std::vector<LpEdge> edges = {{0, 1, Rational(1)}};
  std::vector<LpCommodity> com = {{0, 2, Rational(1)}};
  auto res = lp_min_congestion(3, edges, com, true);
  CHECK(!res.feasible);
}

TEST_CASE("zero demand routes at congestion 0") {
  std::vector<LpEdge> edges = {{0, 1, Rational(1)}};
  auto res = lp_min_congestion(2, edges, {}, true);
  REQUIRE(res.feasible);
  CHECK(res.value == Rational(0));
}

TEST_CASE("exact and floating modes agree on random instances") {
  SplitMix64 rng(424242);
  int solved = 0;
  while (solved < 12) {
    int n = 4 + static_cast<int>(rng.below(5));
    std::vector<LpEdge> edges;
    for (int v = 1; v < n; ++v)  // spanning tree keeps it connected
      edges.push_back({static_cast<int>(rng.below(v)), v,
                       Rational(1 + static_cast<int>(rng.below(4)))});
    for (int extra = 0; extra < n / 2; ++extra) {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n));
      if (u != v)
        edges.push_back({std::min(u, v), std::max(u, v),
                         Rational(1 + static_cast<int>(rng.below(4)))});
    }
    std::vector<LpCommodity> com;
    int c = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < c; ++i) {
      int s = static_cast<int>(rng.below(n));
      int t = static_cast<int>(rng.below(n));
      if (s != t)
        com.push_back({s, t, Rational(1 + static_cast<int>(rng.below(3)))});
    }
    if (com.empty()) continue;
    auto exact = lp_min_congestion(n, edges, com, true);
    auto approx = lp_min_congestion(n, edges, com, false);
    REQUIRE(exact.feasible);
    REQUIRE(approx.feasible);
    CHECK(rational_double(exact.value) ==
          doctest::Approx(approx.value_d).epsilon(1e-7));
    ++solved;
  }
}

TEST_CASE("graph wrapper maps terminal demand onto supernodes") {
  // Two clusters joined by a capacity-3 superedge; demand 2 between the
  // terminals -> congestion 2/3 in H, 2 in G (two unit G-edges merged? no:
  // three parallel crossings of capacity 1 each merge to 3).
  CapacitatedGraph g;
  g.n = 6;
  g.edges = {{0, 0, 3, 1}, {1, 1, 4, 1}, {2, 2, 5, 1},
             {3, 0, 1, 1}, {4, 1, 2, 1}, {5, 3, 4, 1}, {6, 4, 5, 1}};
  g.terminals = {0, 3};
  Partition p;
  p.cluster_of = {0, 0, 0, 1, 1, 1};
  p.cluster_count = 2;
  auto h = contract(g, p);
  Demand d;
  d.add(0, 3, Rational(2));
  auto resh = lp_min_congestion(h, g, d, true);
  REQUIRE(resh.feasible);
  CHECK(resh.value == Rational(2, 3));
  auto resg = lp_min_congestion(g, d, true);
  REQUIRE(resg.feasible);
  // In G the detour paths both ride edge 0-1, so the best split is 1 unit
  // direct and 1 unit through the detours: congestion 1.
  CHECK(resg.value == Rational(1));
}

TEST_CASE("lp sandwich on pipeline instances") {
  SplitMix64 rng(9090);
  int checked = 0;
  int attempts = 0;
  while (checked < 30 && attempts < 400) {
    ++attempts;
    InstanceParams ip;
    ip.n = 20 + 2 * static_cast<int>(rng.below(21));  // n <= 60
    ip.seed = rng.next();
    ip.k_override = 3 + static_cast<int>(rng.below(6));  // <= 8 terminals
    ip.m_override = 2 + static_cast<int>(rng.below(3));
    auto built = build_instance(ip);
    auto p = make_partition(built.graph, "pipeline-random", ip.seed);
    ClusterParams cp;
    cp.s = 2;
    cp.growth = 1.5;
    cp.levels = 1;
    cp.useless_budget = ip.n;
    cp.bad_budget = ip.n + 1;
    int m = 2;
    auto book = harvest_pairs(built.graph, p, cp, m);
    if (book.pairs.empty()) continue;
    auto h = contract(built.graph, p);
    auto asmbl = assemble_demand(built.graph, p, h, book, m);
    if (!asmbl.routed || asmbl.demand.empty_or_zero()) continue;

    auto lower = congestion_lower_bound(built.graph, asmbl.demand);
    REQUIRE(!lower.infinite);
    auto lp_g = lp_min_congestion(built.graph, asmbl.demand, false);
    auto lp_h = lp_min_congestion(h, built.graph, asmbl.demand, false);
    REQUIRE(lp_g.feasible);
    REQUIRE(lp_h.feasible);
    Rational routed =
        routing_congestion(h, built.graph, asmbl.h_routing, asmbl.demand);
    // lower_g <= LP(G) and LP(H) <= explicit routing congestion.
    CHECK(rational_double(lower.value) <= lp_g.value_d + 1e-6);
    CHECK(lp_h.value_d <= rational_double(routed) + 1e-6);
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("exact-mode sandwich on a handful of instances") {
  SplitMix64 rng(777);
  int checked = 0;
  int attempts = 0;
  while (checked < 4 && attempts < 60) {
    ++attempts;
    InstanceParams ip;
    ip.n = 16 + 2 * static_cast<int>(rng.below(8));
    ip.seed = rng.next();
    ip.k_override = 3;
    ip.m_override = 2;
    auto built = build_instance(ip);
    auto p = make_partition(built.graph, "pipeline-random", ip.seed);
    ClusterParams cp;
    cp.s = 2;
    cp.growth = 1.5;
    cp.levels = 1;
    cp.useless_budget = ip.n;
    cp.bad_budget = ip.n + 1;
    auto book = harvest_pairs(built.graph, p, cp, 2);
    if (book.pairs.empty()) continue;
    auto h = contract(built.graph, p);
    auto asmbl = assemble_demand(built.graph, p, h, book, 2);
    if (!asmbl.routed || asmbl.demand.empty_or_zero()) continue;
    auto lower = congestion_lower_bound(built.graph, asmbl.demand);
    auto lp_h = lp_min_congestion(h, built.graph, asmbl.demand, true);
    REQUIRE(lp_h.feasible);
    REQUIRE(lp_h.exact);
    Rational routed =
        routing_congestion(h, built.graph, asmbl.h_routing, asmbl.demand);
    CHECK(lp_h.value <= routed);  // exact rational comparison
    auto lp_g = lp_min_congestion(built.graph, asmbl.demand, true);
    REQUIRE(lp_g.feasible);
    CHECK(lower.value <= lp_g.value);
    ++checked;
  }
  CHECK(checked >= 4);
}

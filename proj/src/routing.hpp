#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "graph.hpp"

namespace sparsegap {

// Auxiliary graph for routing a vertex set U to the terminals: the finalized
// instance plus a super source joined to every terminal (capacity m+1, a
// sufficient stand-in for unbounded) and a super sink joined to every u in U
// with capacity 1.
struct AuxGraph {
  int n = 0;   // includes source and sink
  int source = 0;
  int sink = 0;
  std::vector<GraphEdge> edges;  // undirected, ids dense
};

AuxGraph build_aux_graph(const CapacitatedGraph& g, const std::vector<int>& U,
                         int m);

struct RoutingResult {
  bool feasible = false;
  std::uint64_t flow_value = 0;
  // One path per u in U (input order), vertex sequences from u to a terminal;
  // zero-length [u] when u is itself a terminal.
  std::vector<std::vector<int>> paths;
  std::vector<std::vector<int>> path_edges;  // per path, one edge id per hop
  std::map<int, std::uint64_t> edge_usage;   // original edge id -> paths using
  std::vector<int> cut_witness;  // source-side vertices when infeasible
};

// Integral max-flow (Dinic) on the auxiliary graph, decomposed into one unit
// path per routed u. Decomposition traces positive-flow arcs lowest edge-id
// first, canceling any flow cycles encountered, so it is deterministic.
RoutingResult route_to_terminals(const CapacitatedGraph& g,
                                 const std::vector<int>& U, int m);

// Exact min source-sink cut by subset enumeration. Guarded to n <= 14.
std::uint64_t mincut_brute_oracle(const AuxGraph& aux);

// Exact integral max flow value on an auxiliary graph (for cross-checks).
std::uint64_t maxflow_value(const AuxGraph& aux);

}  // namespace sparsegap

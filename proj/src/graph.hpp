#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace sparsegap {

// Unreachable marker for hop distances.
inline constexpr int kUnreachable = -1;

struct GraphEdge {
  int id = 0;
  int u = 0;
  int v = 0;
  std::uint64_t cap = 1;
};

// Undirected capacitated multigraph with a terminal set. Vertices are dense
// ids 0..n-1; parallel edges are distinguished by edge id; self-loops are
// forbidden. Immutable by convention after construction.
struct CapacitatedGraph {
  int n = 0;
  std::vector<GraphEdge> edges;
  std::vector<int> terminals;  // distinct, each < n, in stored order

  int m() const { return static_cast<int>(edges.size()); }
  int k() const { return static_cast<int>(terminals.size()); }

  // adjacency[v] = list of (neighbor, edge id), in edge-id order.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;

  std::uint64_t total_capacity() const;

  // Throws std::invalid_argument on a violated invariant.
  void check_invariants() const;
};

struct Partition {
  std::vector<int> cluster_of;  // vertex id -> cluster id
  int cluster_count = 0;

  int f() const { return cluster_count; }

  // Cluster ids must be 0..f-1 with no gaps.
  void check_invariants() const;
};

Partition singleton_partition(int n);

// First terminal pair (by terminal order) sharing a cluster, or nullopt if
// the partition is valid.
std::optional<std::pair<int, int>> validate_partition(const CapacitatedGraph& g,
                                                      const Partition& p);

struct SuperEdge {
  int id = 0;
  int a = 0;  // cluster ids, a < b
  int b = 0;
  std::uint64_t cap = 0;
  std::vector<int> orig_edges;  // backmap, ascending edge ids
};

struct ContractedGraph {
  int f = 0;
  std::vector<SuperEdge> edges;
  std::vector<int> terminal_cluster;  // per terminal, in terminal order

  int find_superedge(int a, int b) const;  // -1 if absent

  std::vector<std::vector<std::pair<int, int>>> adjacency() const;

 private:
  mutable std::map<std::pair<int, int>, int> index_;
  void build_index() const;
};

// Contraction per the partition: superedge capacity is the exact integer sum
// of crossing original capacities, parallel superedges merged, self-loops
// dropped. Superedges are ordered by (a, b).
ContractedGraph contract(const CapacitatedGraph& g, const Partition& p);

// Multi-source unit-hop BFS. Returns kUnreachable for unreachable vertices.
std::vector<int> bfs_distances(const CapacitatedGraph& g,
                               const std::vector<int>& sources);

struct InducedPath {
  std::vector<int> supernodes;   // after collapsing consecutive repeats
  std::vector<int> superedges;   // one id per hop
};

// Maps a G-walk through F(.) and collapses consecutive repeats; each hop is
// resolved to the (unique, merged) superedge between the two clusters.
InducedPath induce_path(const std::vector<int>& gpath, const Partition& p,
                        const ContractedGraph& h);

// Nonnegative rational weights on unordered terminal pairs, keys normalized
// to (min, max).
struct Demand {
  std::map<std::pair<int, int>, Rational> entries;

  void add(int t, int t2, const Rational& value);
  Rational total() const;
  bool empty_or_zero() const;
};

struct FlowPath {
  std::vector<int> vertices;
  std::vector<int> edge_ids;  // one per hop
  Rational value;
  std::pair<int, int> commodity;  // endpoints as recorded
};

using PathFlow = std::vector<FlowPath>;

}  // namespace sparsegap

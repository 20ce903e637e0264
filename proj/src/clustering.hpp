#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "surgery.hpp"

namespace sparsegap {

// Hierarchy parameters. The asymptotic formulas are defaults; everything is
// overridable because they degenerate at desk scale.
struct ClusterParams {
  double s = 2.0;
  double growth = 2.0;        // the squaring exponent (2 - lambda)
  int levels = 1;             // l, >= 1
  double useless_budget = 0;  // absolute vertex count (n/200 by default)
  double bad_budget = 0;      // 0.96 n
  double bad0_budget = 0;     // 0.24 n (reported only)
  double purity = 7.0 / 8.0;  // reported only
  double small_cluster = 0;   // s/200, statistics only

  // s_i = s^{growth^i}; threshold(0) = s.
  double threshold(int i) const;

  static ClusterParams defaults(const InstanceParams& params);
  void check() const;
};

// A cluster at some level: a set of base clusters plus its expanded size.
struct ClusterGroup {
  std::vector<int> members;      // base cluster ids, ascending
  long long vertex_count = 0;    // |V(H)|, useless vertices included
};

struct ClusteringState {
  int level = 0;                              // current level i
  std::vector<ClusterGroup> groups;           // H^i
  std::vector<std::vector<int>> discarded;    // C^0..C^{i-1}, base cluster ids
  std::vector<long long> bad_counts;          // b_j = |V(C_j)|
};

// Friendship adjacency over the given groups: A ~ B iff some G-edge joins
// non-useless vertices of their expansions. Reflexive entries are implicit
// (every list also stands for the group itself); returned lists are ascending
// and exclude self.
std::vector<std::vector<int>> build_friendship_graph(
    const CapacitatedGraph& g, const Partition& p,
    const std::vector<char>& useless, const std::vector<ClusterGroup>& groups);

// good-i flags: friend-union expanded size strictly above the threshold.
std::vector<char> classify_level(const std::vector<ClusterGroup>& groups,
                                 const std::vector<std::vector<int>>& friends,
                                 double threshold);

// One greedy merging round: centers (ascending scan, all friends unmarked),
// adoption by lowest-id phase-one-marked friend, rest discarded.
ClusteringState cluster_level(const CapacitatedGraph& g, const Partition& p,
                              const std::vector<char>& useless,
                              const ClusteringState& state,
                              const ClusterParams& params);

struct HierarchyResult {
  bool aborted = false;
  int abort_level = -1;
  ClusteringState state;  // final (level l) on success, partial on abort
  // Snapshot of the groups after each completed level 1..level.
  std::vector<std::vector<ClusterGroup>> level_groups;
};

// Runs l merging rounds; aborts once the accumulated bad-vertex count
// exceeds the bad budget.
HierarchyResult run_hierarchy(const CapacitatedGraph& g, const Partition& p,
                              const std::vector<char>& useless,
                              const ClusterParams& params);

struct DiameterReport {
  std::vector<int> max_by_level;  // index 0 unused; levels 1..l
  bool ok = true;
  int witness_level = -1;
  std::pair<int, int> witness_pair{-1, -1};  // base cluster ids
};

// Checks dist_0(F, F') <= 5^i - 1 inside every level-i cluster, distances
// taken in the level-0 friendship graph. A violation is a hard failure of
// the merging rule, not a probabilistic event.
DiameterReport cluster_diameter_check(const CapacitatedGraph& g,
                                      const Partition& p,
                                      const std::vector<char>& useless,
                                      const HierarchyResult& hierarchy);

}  // namespace sparsegap

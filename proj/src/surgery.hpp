#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace sparsegap {

// Instance parameters. alpha and beta are always recomputed from epsilon.
struct InstanceParams {
  int n = 0;
  int d = 10;
  double epsilon = 0.2;
  std::uint64_t seed = 0;
  std::optional<int> k_override;
  std::optional<int> m_override;
  bool sample_terminals = false;  // default: lowest-id terminals

  double alpha() const;
  double beta() const;
  int k() const;  // |T|, clamped to [2, n]
  int m() const;  // pair budget, clamped to >= 1
  bool k_clamped() const;
  bool m_clamped() const;
};

struct LayerDecomposition {
  std::vector<std::vector<int>> layers;  // N_0, N_1, ... (ascending vertex id)
  std::vector<int> layer_of;             // kUnreachable if not reached
  int r = 0;
  bool degenerate = false;  // r forced by clamping / missing threshold
};

struct TreeEdge {
  int edge_id;
  int child;   // vertex in N_level
  int parent;  // vertex in N_{level-1}
  std::uint64_t weight;  // c'
  int level;   // 1..r (edge set E_level)
};

struct CapacityTree {
  int r = 0;
  std::vector<TreeEdge> edges;          // E_T
  std::vector<int> boundary_edges;      // E_{r+1}, ascending edge ids
  std::uint64_t level_weight(int level) const;  // c'(E_level)
};

// Terminal selection: default T = {0..k-1}; seeded uniform sample without
// replacement when params.sample_terminals is set. Terminals stored ascending.
CapacitatedGraph pick_terminals(const CapacitatedGraph& g,
                                const InstanceParams& params);

// Exact BFS layers from T. r = min{i : |B_i| >= 2m} - 1 clamped to >= 0; when
// no ball reaches 2m, r falls back to the last nonempty layer minus one
// (degenerate, flagged).
LayerDecomposition layer_decomposition(const CapacitatedGraph& g, int m);

// Terminal-rooted capacity tree: each u in N_i (1 <= i <= r) owns one parent
// edge into N_{i-1} (lowest edge id); weights propagate boundary edge counts
// inward. r = 0 yields an empty tree.
CapacityTree build_capacity_tree(const CapacitatedGraph& g,
                                 const LayerDecomposition& layers);

// Finalized instance: capacity max{c'(e), 1} on tree edges, 1 elsewhere.
CapacitatedGraph assign_capacities(const CapacitatedGraph& g,
                                   const CapacityTree& tree);

std::uint64_t total_capacity(const CapacitatedGraph& g);

}  // namespace sparsegap

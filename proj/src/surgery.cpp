#include "surgery.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rng.hpp"

namespace sparsegap {

namespace {
const double kLog2_5 = std::log2(5.0);
}

double InstanceParams::alpha() const {
  return kLog2_5 / (kLog2_5 + 1.0 - epsilon);
}

double InstanceParams::beta() const {
  return (kLog2_5 - 0.5 * epsilon) / (kLog2_5 + 1.0 - epsilon);
}

int InstanceParams::k() const {
  if (k_override) return std::clamp(*k_override, 2, n);
  double formula = n / std::exp2(std::pow(std::log2(double(n)), alpha()));
  int k = static_cast<int>(std::floor(formula));
  return std::clamp(k, 2, n);
}

int InstanceParams::m() const {
  if (m_override) return std::max(1, *m_override);
  double formula = 10.0 * n / std::pow(std::log2(double(n)), alpha());
  return std::max(1, static_cast<int>(std::floor(formula)));
}

bool InstanceParams::k_clamped() const {
  if (k_override) return false;
  double formula = n / std::exp2(std::pow(std::log2(double(n)), alpha()));
  return std::floor(formula) < 2 || std::floor(formula) > n;
}

bool InstanceParams::m_clamped() const {
  if (m_override) return false;
  double formula = 10.0 * n / std::pow(std::log2(double(n)), alpha());
  return std::floor(formula) < 1;
}

CapacitatedGraph pick_terminals(const CapacitatedGraph& g,
                                const InstanceParams& params) {
  int k = params.k();
  if (k > g.n) throw std::invalid_argument("k > n");
  CapacitatedGraph out = g;
  out.terminals.clear();
  if (!params.sample_terminals) {
    for (int i = 0; i < k; ++i) out.terminals.push_back(i);
    return out;
  }
  // Partial Fisher-Yates: first k entries are a uniform sample.
  SplitMix64 rng(params.seed ^ 0x7465726d696e616cULL);
  std::vector<int> ids(g.n);
  for (int i = 0; i < g.n; ++i) ids[i] = i;
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng.below(g.n - i));
    std::swap(ids[i], ids[j]);
  }
  out.terminals.assign(ids.begin(), ids.begin() + k);
  std::sort(out.terminals.begin(), out.terminals.end());
  return out;
}

LayerDecomposition layer_decomposition(const CapacitatedGraph& g, int m) {
  if (g.terminals.empty()) throw std::invalid_argument("no terminals");
  LayerDecomposition out;
  out.layer_of = bfs_distances(g, g.terminals);
  int max_layer = 0;
  for (int v = 0; v < g.n; ++v) max_layer = std::max(max_layer, out.layer_of[v]);
  out.layers.assign(max_layer + 1, {});
  for (int v = 0; v < g.n; ++v)
    if (out.layer_of[v] != kUnreachable) out.layers[out.layer_of[v]].push_back(v);

  long long ball = 0;
  int first_big = -1;
  for (int i = 0; i <= max_layer; ++i) {
    ball += static_cast<long long>(out.layers[i].size());
    if (ball >= 2LL * m) {
      first_big = i;
      break;
    }
  }
  if (first_big >= 0) {
    out.r = std::max(0, first_big - 1);
    out.degenerate = (first_big == 0);
  } else {
    out.r = std::max(0, max_layer - 1);
    out.degenerate = true;
  }
  return out;
}

std::uint64_t CapacityTree::level_weight(int level) const {
  std::uint64_t sum = 0;
  for (const auto& e : edges)
    if (e.level == level) sum += e.weight;
  return sum;
}

CapacityTree build_capacity_tree(const CapacitatedGraph& g,
                                 const LayerDecomposition& layers) {
  CapacityTree tree;
  tree.r = layers.r;
  if (layers.r < 1) return tree;
  auto adj = g.adjacency();
  const auto& layer_of = layers.layer_of;
  int r = layers.r;

  // Boundary E_{r+1} and the per-vertex counts |E_u| for u in N_r.
  std::vector<std::uint64_t> weight_at(g.n, 0);
  for (const auto& e : g.edges) {
    int lu = layer_of[e.u], lv = layer_of[e.v];
    bool boundary = (lu == r && lv == r + 1) || (lu == r + 1 && lv == r);
    if (boundary) {
      tree.boundary_edges.push_back(e.id);
      weight_at[lu == r ? e.u : e.v] += 1;
    }
  }

  // Top-down: level r first, then r-1 .. 1. weight_at[u] accumulates c'(E_u)
  // (boundary counts at level r, child tree weights below).
  for (int level = r; level >= 1; --level) {
    for (int u : layers.layers[level]) {
      int parent_edge = -1, parent = -1;
      for (auto [w, eid] : adj[u]) {
        if (layer_of[w] == level - 1) {
          if (parent_edge == -1 || eid < parent_edge) {
            parent_edge = eid;
            parent = w;
          }
        }
      }
      if (parent_edge == -1)
        throw std::logic_error("BFS layer vertex without a parent edge");
      TreeEdge te{parent_edge, u, parent, weight_at[u], level};
      tree.edges.push_back(te);
      weight_at[parent] += te.weight;
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end(),
            [](const TreeEdge& a, const TreeEdge& b) {
              return a.edge_id < b.edge_id;
            });
  return tree;
}

CapacitatedGraph assign_capacities(const CapacitatedGraph& g,
                                   const CapacityTree& tree) {
  CapacitatedGraph out = g;
  for (auto& e : out.edges) e.cap = 1;
  for (const auto& te : tree.edges)
    out.edges[te.edge_id].cap = std::max<std::uint64_t>(te.weight, 1);
  return out;
}

std::uint64_t total_capacity(const CapacitatedGraph& g) {
  return g.total_capacity();
}

}  // namespace sparsegap

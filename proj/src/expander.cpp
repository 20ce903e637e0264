#include "expander.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sparsegap {

CapacitatedGraph gen_matching_union(const ExpanderSpec& spec) {
  if (spec.n < 2 || spec.n % 2 != 0)
    throw std::invalid_argument("matching union needs even n >= 2");
  if (spec.d < 1) throw std::invalid_argument("d must be >= 1");
  CapacitatedGraph g;
  g.n = spec.n;
  SplitMix64 rng(spec.seed);
  std::vector<int> perm(spec.n);
  int next_id = 0;
  for (int round = 0; round < spec.d; ++round) {
    std::iota(perm.begin(), perm.end(), 0);
    fisher_yates(perm, rng);
    for (int i = 0; i < spec.n; i += 2) {
      GraphEdge e;
      e.id = next_id++;
      e.u = std::min(perm[i], perm[i + 1]);
      e.v = std::max(perm[i], perm[i + 1]);
      e.cap = 1;
      g.edges.push_back(e);
    }
  }
  return g;
}

Rational conductance_brute(const CapacitatedGraph& g) {
  if (g.n < 2 || g.n > 20)
    throw std::invalid_argument("conductance enumeration needs 2 <= n <= 20");
  std::vector<long long> deg(g.n, 0);
  for (const auto& e : g.edges) {
    deg[e.u]++;
    deg[e.v]++;
  }
  long long total_vol = 0;
  for (long long d : deg) total_vol += d;
  bool found = false;
  Rational best = 0;
  // Fix vertex 0 inside S; the complement covers the other half of subsets.
  std::uint32_t full = (1u << g.n) - 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {
    if (mask == full) continue;  // proper subset only
    long long cut = 0;
    for (const auto& e : g.edges) {
      bool in_u = (mask >> e.u) & 1, in_v = (mask >> e.v) & 1;
      if (in_u != in_v) cut++;
    }
    long long vol = 0;
    for (int v = 0; v < g.n; ++v)
      if ((mask >> v) & 1) vol += deg[v];
    long long denom = std::min(vol, total_vol - vol);
    if (denom == 0) continue;  // isolated side carries no volume
    Rational ratio(cut, denom);
    if (!found || ratio < best) {
      best = ratio;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("graph has no edges");
  return best;
}

double spectral_lower_bound(const CapacitatedGraph& g) {
  if (g.n < 2) throw std::invalid_argument("need at least 2 vertices");
  auto dist = bfs_distances(g, {0});
  for (int v = 0; v < g.n; ++v)
    if (dist[v] == kUnreachable)
      throw std::invalid_argument("spectral bound needs a connected graph");
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(g.n, g.n);
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(g.n);
  for (const auto& e : g.edges) {
    adj(e.u, e.v) += 1.0;
    adj(e.v, e.u) += 1.0;
    deg(e.u) += 1.0;
    deg(e.v) += 1.0;
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (adj(i, j) != 0.0)
        lap(i, j) -= adj(i, j) / std::sqrt(deg(i) * deg(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  return solver.eigenvalues()(1) / 2.0;
}

namespace {

Rational neighbor_ratio(const CapacitatedGraph& g,
                        const std::vector<std::vector<std::pair<int, int>>>& adj,
                        const std::vector<int>& subset) {
  std::vector<char> in(g.n, 0), nb(g.n, 0);
  for (int v : subset) in[v] = 1;
  long long nsize = 0;
  for (int v : subset)
    for (auto [w, eid] : adj[v]) {
      (void)eid;
      if (!in[w] && !nb[w]) {
        nb[w] = 1;
        nsize++;
      }
    }
  return Rational(nsize, static_cast<long long>(subset.size()));
}

}  // namespace

ExpansionReport expansion_check(const CapacitatedGraph& g, int trials,
                                std::uint64_t seed) {
  auto adj = g.adjacency();
  ExpansionReport report;
  bool found = false;
  auto consider = [&](const std::vector<int>& subset) {
    if (subset.empty()) return;
    Rational r = neighbor_ratio(g, adj, subset);
    if (!found || r < report.min_ratio) {
      report.min_ratio = r;
      report.witness = subset;
      found = true;
    }
  };
  if (g.n <= 16) {
    report.exhaustive = true;
    std::uint32_t full = 1u << g.n;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      int size = __builtin_popcount(mask);
      if (size * 2 > g.n) continue;
      std::vector<int> subset;
      for (int v = 0; v < g.n; ++v)
        if ((mask >> v) & 1) subset.push_back(v);
      consider(subset);
    }
    return report;
  }
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    int size = 1 + static_cast<int>(rng.below(g.n / 2));
    std::set<int> pick;
    while (static_cast<int>(pick.size()) < size)
      pick.insert(static_cast<int>(rng.below(g.n)));
    consider(std::vector<int>(pick.begin(), pick.end()));
  }
  // All BFS balls with at most n/2 vertices.
  for (int start = 0; start < g.n; ++start) {
    auto dist = bfs_distances(g, {start});
    int max_d = 0;
    for (int v = 0; v < g.n; ++v) max_d = std::max(max_d, dist[v]);
    for (int radius = 0; radius <= max_d; ++radius) {
      std::vector<int> ball;
      for (int v = 0; v < g.n; ++v)
        if (dist[v] != kUnreachable && dist[v] <= radius) ball.push_back(v);
      if (static_cast<int>(ball.size()) * 2 > g.n) break;
      consider(ball);
    }
  }
  return report;
}

}  // namespace sparsegap
